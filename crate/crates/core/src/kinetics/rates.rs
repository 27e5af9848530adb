use crate::constants::FREE_SPACE_GEOMETRY;
use crate::error::{require_positive, Result};
use crate::params::DerivedRatios;

/// Raman transition rates on the vibrational ladder.
///
/// `decay(n)` is the anti-Stokes rate `n -> n-1`, `excite(n)` the Stokes
/// rate `n-1 -> n`. Both are linear in `n` and vanish at `n = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderRates {
    pub ratios: DerivedRatios,
    /// Free-space scattering rate, 1/s.
    pub gamma_tilde: f64,
}

impl LadderRates {
    pub fn new(ratios: DerivedRatios, gamma_tilde: f64) -> Result<Self> {
        require_positive("gamma_tilde", gamma_tilde)?;
        Ok(Self { ratios, gamma_tilde })
    }

    /// `n η_LD (η_c + 2/5) Γ̃`.
    pub fn decay(&self, n: usize) -> f64 {
        let r = &self.ratios;
        n as f64 * r.eta_ld * (r.eta_c + FREE_SPACE_GEOMETRY) * self.gamma_tilde
    }

    /// `n η_LD (ξ η_c + 2/5) Γ̃`.
    pub fn excite(&self, n: usize) -> f64 {
        let r = &self.ratios;
        n as f64 * r.eta_ld * (r.xi * r.eta_c + FREE_SPACE_GEOMETRY) * self.gamma_tilde
    }

    /// Ratio of successive stationary populations, `excite(n) / decay(n)`.
    pub fn successive_ratio(&self) -> f64 {
        successive_ratio(self.ratios.eta_c, self.ratios.xi)
    }

    /// Relaxation rate of the mean occupation, `decay(1) − excite(1)`.
    pub fn net_cooling(&self) -> f64 {
        self.decay(1) - self.excite(1)
    }
}

/// `(Γ_n, γ_n)` for level `n`.
pub fn ladder_rates(n: usize, ratios: DerivedRatios, gamma_tilde: f64) -> Result<(f64, f64)> {
    let r = LadderRates::new(ratios, gamma_tilde)?;
    Ok((r.decay(n), r.excite(n)))
}

pub fn successive_ratio(eta_c: f64, xi: f64) -> f64 {
    (xi * eta_c + FREE_SPACE_GEOMETRY) / (eta_c + FREE_SPACE_GEOMETRY)
}
