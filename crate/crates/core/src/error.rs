use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input lies outside the domain where the model is defined.
    #[error("domain error in `{param}`: {reason}")]
    Domain { param: &'static str, reason: String },

    /// Explicit stepping would be unstable at the requested step.
    #[error("step {dt:e} s exceeds the stability bound; maximum admissible dt is {max_dt:e} s")]
    Stability { dt: f64, max_dt: f64 },

    /// The truncated ladder loses too much probability at its top rung.
    #[error("ladder truncated at n_max = {n_max} carries tail mass {tail:e} (> {tolerance:e}); increase n_max")]
    Truncation { n_max: usize, tail: f64, tolerance: f64 },

    /// Malformed or inconsistent configuration.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(param: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            param,
            reason: reason.into(),
        }
    }

    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Fails with a domain error unless `value` is finite and strictly positive.
pub(crate) fn require_positive(param: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(param, format!("must be finite and > 0, got {value}")))
    }
}

pub(crate) fn require_finite(param: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(param, format!("must be finite, got {value}")))
    }
}
