//! The localization order parameter `g = <exp(-2ikz)>` of the trapped ensemble.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{require_finite, require_positive, Error, Result};

/// Atomic localization, either as explicit displacements from the
/// nearest well minimum or as a Gaussian summary.
#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleState {
    Positions(Vec<f64>),
    Gaussian { dz_rms: f64, z_cm: f64 },
}

impl EnsembleState {
    pub fn localization(&self, k: f64) -> Result<Complex64> {
        match self {
            EnsembleState::Positions(z) => localization_exact(z, k),
            EnsembleState::Gaussian { dz_rms, z_cm } => localization_gaussian(*dz_rms, *z_cm, k),
        }
    }
}

/// Exact ensemble average of `exp(-2ikz)`.
pub fn localization_exact(positions: &[f64], k: f64) -> Result<Complex64> {
    if positions.is_empty() {
        return Err(Error::domain("positions", "at least one atom is required"));
    }
    require_finite("k", k)?;
    let sum: Complex64 = positions
        .iter()
        .map(|&z| Complex64::from_polar(1.0, -2.0 * k * z))
        .sum();
    Ok(sum / positions.len() as f64)
}

/// Closed form for Gaussian displacements:
/// `exp(-2 k^2 dz^2) * exp(-2ik z_cm)`.
pub fn localization_gaussian(dz_rms: f64, z_cm: f64, k: f64) -> Result<Complex64> {
    require_finite("dz_rms", dz_rms)?;
    require_finite("z_cm", z_cm)?;
    require_finite("k", k)?;
    if dz_rms < 0.0 {
        return Err(Error::domain("dz_rms", format!("must be >= 0, got {dz_rms}")));
    }
    let modulus = (-2.0 * k * k * dz_rms * dz_rms).exp();
    Ok(Complex64::from_polar(modulus, -2.0 * k * z_cm))
}

/// RMS spread that yields a given `|g|` under the Gaussian closed form.
pub fn rms_spread_for_modulus(g_mod: f64, k: f64) -> Result<f64> {
    if !(g_mod > 0.0 && g_mod <= 1.0) {
        return Err(Error::domain("g_mod", format!("must lie in (0, 1], got {g_mod}")));
    }
    require_positive("k", k)?;
    Ok((-g_mod.ln() / (2.0 * k * k)).sqrt())
}

/// Phase modulation depth `2 k z_cm0` for center-of-mass amplitude `z_cm0`.
pub fn modulation_depth(k: f64, z_cm_amplitude: f64) -> f64 {
    2.0 * k * z_cm_amplitude
}

/// Draws `n` i.i.d. Gaussian displacements with the given spread and mean.
pub fn sample_gaussian_positions(n: usize, dz_rms: f64, z_cm: f64, seed: u64) -> Result<Vec<f64>> {
    require_finite("z_cm", z_cm)?;
    let normal = Normal::new(z_cm, dz_rms)
        .map_err(|e| Error::domain("dz_rms", e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| normal.sample(&mut rng)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const LAMBDA: f64 = 780.24e-9;

    fn k() -> f64 {
        2.0 * PI / LAMBDA
    }

    #[test]
    fn perfect_localization() {
        let g = localization_exact(&[0.0; 7], k()).unwrap();
        assert!((g - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let g = localization_gaussian(0.0, 0.0, k()).unwrap();
        assert_eq!(g, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn equally_spaced_phases_cancel() {
        let z = [0.0, LAMBDA / 8.0, LAMBDA / 4.0, 3.0 * LAMBDA / 8.0];
        let g = localization_exact(&z, k()).unwrap();
        assert!(g.norm() < 1e-15, "{g}");
    }

    #[test]
    fn empty_ensemble_rejected() {
        assert!(matches!(localization_exact(&[], k()), Err(Error::Domain { param: "positions", .. })));
        assert!(localization_gaussian(-1e-9, 0.0, k()).is_err());
    }

    #[test]
    fn modulus_inversion() {
        let dz = rms_spread_for_modulus(0.9, k()).unwrap();
        let oracle = (-(0.9f64).ln() / (2.0 * k() * k())).sqrt();
        assert!((dz - oracle).abs() < 1e-20);
        assert!((dz - 28.5e-9).abs() < 0.05e-9, "dz = {dz}");
        let g = localization_gaussian(dz, 0.0, k()).unwrap();
        assert!((g.norm() - 0.9).abs() < 1e-14);
    }

    #[test]
    fn small_displacement_limit() {
        let z_cm = 1e-4 / k();
        let g = localization_gaussian(0.0, z_cm, k()).unwrap();
        let first_order = Complex64::new(1.0, -2e-4);
        assert!((g - first_order).norm() < 1e-7);
    }

    #[test]
    fn monte_carlo_matches_closed_form() {
        let n = 100_000;
        let (dz, zc) = (25e-9, 8e-9);
        for seed in [1, 2, 3] {
            let z = sample_gaussian_positions(n, dz, zc, seed).unwrap();
            let exact = localization_exact(&z, k()).unwrap();
            let closed = localization_gaussian(dz, zc, k()).unwrap();
            assert!((exact - closed).norm() < 3.0 / (n as f64).sqrt());
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_gaussian_positions(10, 1e-8, 0.0, 42).unwrap();
        let b = sample_gaussian_positions(10, 1e-8, 0.0, 42).unwrap();
        let c = sample_gaussian_positions(10, 1e-8, 0.0, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn exact_modulus_bounded(z in prop::collection::vec(-1e-6f64..1e-6, 1..200)) {
                prop_assert!(localization_exact(&z, k()).unwrap().norm() <= 1.0 + 1e-12);
            }

            #[test]
            fn gaussian_modulus_formula(dz in 0.0f64..2e-7, zc in -1e-7f64..1e-7) {
                let g = localization_gaussian(dz, zc, k()).unwrap();
                let expect = (-2.0 * k() * k() * dz * dz).exp();
                prop_assert!((g.norm() - expect).abs() <= 1e-14);
            }
        }
    }
}
