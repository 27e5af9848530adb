//! Extraction of carrier and sideband components from a field time series.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use super::integrate::FieldTimeSeries;
use crate::error::{require_positive, Error, Result};

/// Minimum number of full modulation periods in the analysis window.
pub const MIN_PERIODS: usize = 20;

/// Default transient cut in units of the field decay time `1/gamma_c`.
pub const DEFAULT_TRANSIENT_DECAY_TIMES: f64 = 5.0;

/// Carrier and sideband amplitudes of `alpha_+(t) ≈ c + β e^{−iΩt} + γ e^{+iΩt}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Demodulated {
    pub carrier: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    /// Number of whole periods used.
    pub periods: usize,
}

pub fn default_transient(gamma_c: f64) -> f64 {
    DEFAULT_TRANSIENT_DECAY_TIMES / gamma_c
}

/// Projects `alpha_+` onto `{1, e^{−iΩt}, e^{+iΩt}}` over the largest whole
/// number of periods that ends at the last sample and starts after
/// `transient`.
///
/// The projection is an orthogonal (least-squares) projection onto the
/// sampled basis, so a series lying in the span is recovered exactly even
/// when the period is not a multiple of the sample spacing.
pub fn demodulate_sidebands(series: &FieldTimeSeries, omega: f64, transient: f64) -> Result<Demodulated> {
    require_positive("omega", omega)?;
    if !(transient >= 0.0) {
        return Err(Error::domain("transient", format!("must be >= 0, got {transient}")));
    }
    let (Some(&t_end), Some(&t_start)) = (series.times.last(), series.times.first()) else {
        return Err(Error::domain("series", "empty time series"));
    };
    let period = 2.0 * PI / omega;
    let usable = t_end - (t_start + transient);
    let periods = if usable > 0.0 {
        (usable / period + 1e-9).floor() as usize
    } else {
        0
    };
    if periods < MIN_PERIODS {
        return Err(Error::domain(
            "series",
            format!(
                "{periods} whole periods after the transient; need at least {MIN_PERIODS} (span {:e} s, period {period:e} s)",
                t_end - t_start
            ),
        ));
    }
    let t_first = t_end - periods as f64 * period;
    let tol = 1e-9 * series.dt;

    let mut gram = Matrix3::<Complex64>::zeros();
    let mut rhs = Vector3::<Complex64>::zeros();
    for (&t, &y) in series.times.iter().zip(&series.alpha_plus) {
        if t + tol < t_first {
            continue;
        }
        let phi = Vector3::new(
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(1.0, -omega * t),
            Complex64::from_polar(1.0, omega * t),
        );
        for i in 0..3 {
            let ci = phi[i].conj();
            rhs[i] += ci * y;
            for j in 0..3 {
                gram[(i, j)] += ci * phi[j];
            }
        }
    }
    let coeff = gram
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Internal("singular demodulation basis".into()))?;
    Ok(Demodulated {
        carrier: coeff[0],
        beta: coeff[1],
        gamma: coeff[2],
        periods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(c: Complex64, b: Complex64, g: Complex64, omega: f64, dt: f64, n: usize) -> FieldTimeSeries {
        let times: Vec<f64> = (0..n).map(|k| k as f64 * dt).collect();
        let ap = times
            .iter()
            .map(|&t| c + b * Complex64::from_polar(1.0, -omega * t) + g * Complex64::from_polar(1.0, omega * t))
            .collect::<Vec<_>>();
        FieldTimeSeries {
            alpha_minus: ap.iter().map(|a| -a).collect(),
            alpha_plus: ap,
            times,
            dt,
            description: "synthetic".into(),
        }
    }

    #[test]
    fn constant_series_has_no_sidebands() {
        let c = Complex64::new(3.0, -1.0);
        let s = synthetic(c, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 2.0, 0.013, 10_000);
        let d = demodulate_sidebands(&s, 2.0, 1.0).unwrap();
        assert!((d.carrier - c).norm() < 1e-12);
        assert!(d.beta.norm() < 1e-12 && d.gamma.norm() < 1e-12);
    }

    #[test]
    fn recovers_known_triple() {
        let (c, b, g) = (
            Complex64::new(100.0, 2.0),
            Complex64::new(0.3, -0.7),
            Complex64::new(-0.01, 0.004),
        );
        // Period not commensurate with the sampling step.
        let s = synthetic(c, b, g, 7.3, 0.0071, 20_000);
        let d = demodulate_sidebands(&s, 7.3, 5.0).unwrap();
        assert!((d.carrier - c).norm() < 1e-10);
        assert!((d.beta - b).norm() < 1e-10);
        assert!((d.gamma - g).norm() < 1e-10);
        assert!(d.periods >= MIN_PERIODS);
    }

    #[test]
    fn short_series_rejected() {
        let s = synthetic(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 1.0, 0.1, 100);
        assert!(matches!(demodulate_sidebands(&s, 1.0, 0.0), Err(Error::Domain { .. })));
    }
}
