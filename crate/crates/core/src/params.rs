//! Physical inputs and the dimensionless ratios derived from them.
//!
//! Unit conventions:
//!
//! * every frequency, detuning, linewidth and decay rate is an angular
//!   frequency in rad/s;
//! * the free spectral range `gamma_0 = c / L` is the exception and is kept
//!   in plain 1/s, since it only enters as a drive prefactor and through the
//!   round-trip loss `2 gamma_c / gamma_0`;
//! * the recoil temperature is `T_R = hbar * omega_R / k_B`.

use std::f64::consts::PI;

use crate::constants::{C, FREE_SPACE_GEOMETRY, HBAR, K_B};
use crate::error::{require_finite, require_positive, Error, Result};
use crate::regime::RegimeWarning;

/// Geometry and loss of the ring cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    pub finesse: f64,
    /// e⁻² intensity radius of the mode, m.
    pub waist: f64,
    /// Round-trip length, m.
    pub roundtrip_length: f64,
    /// Intracavity field decay rate, rad/s.
    pub gamma_c: f64,
    /// Free spectral range c/L, 1/s.
    pub gamma_0: f64,
    /// Pump detuning from the empty-cavity resonance, rad/s.
    pub delta_c: f64,
}

impl CavityParams {
    pub fn new(finesse: f64, waist: f64, roundtrip_length: f64, gamma_c: f64) -> Result<Self> {
        require_positive("finesse", finesse)?;
        require_positive("waist", waist)?;
        require_positive("roundtrip_length", roundtrip_length)?;
        require_positive("gamma_c", gamma_c)?;
        Ok(Self {
            finesse,
            waist,
            roundtrip_length,
            gamma_c,
            gamma_0: C / roundtrip_length,
            delta_c: 0.0,
        })
    }

    pub fn with_detuning(mut self, delta_c: f64) -> Result<Self> {
        require_finite("delta_c", delta_c)?;
        self.delta_c = delta_c;
        Ok(self)
    }

    /// Round-trip power loss `2 gamma_c / gamma_0`.
    pub fn round_trip_loss(&self) -> f64 {
        2.0 * self.gamma_c / self.gamma_0
    }
}

/// Primary inputs from which [`SpeciesDrive`] is assembled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveInputs {
    /// Particle mass, kg.
    pub mass: f64,
    /// Transition wavelength, m.
    pub transition_wavelength: f64,
    /// Natural linewidth, rad/s.
    pub linewidth: f64,
    /// Lattice (pump) wavelength, m.
    pub lattice_wavelength: f64,
    /// Circulating power per direction, W.
    pub power: f64,
    /// Lattice trap depth, J.
    pub trap_depth: f64,
    /// Light shift per intracavity photon, rad/s.
    pub light_shift: f64,
    pub atom_number: f64,
}

/// Atomic species and lattice drive, with all derived rates filled in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeciesDrive {
    pub mass: f64,
    pub transition_wavelength: f64,
    pub linewidth: f64,
    pub lattice_wavelength: f64,
    /// Lattice angular frequency, rad/s.
    pub omega_l: f64,
    /// Lattice wavenumber, rad/m.
    pub k: f64,
    /// Lattice minus transition frequency, rad/s (negative = red).
    pub delta_at: f64,
    pub power: f64,
    pub light_shift: f64,
    pub atom_number: f64,
    /// Free-space scattering rate, 1/s.
    pub gamma_tilde: f64,
    pub trap_depth: f64,
    pub omega_v: f64,
    pub omega_r: f64,
    /// Recoil temperature, K.
    pub recoil_temperature: f64,
}

impl SpeciesDrive {
    /// Derives the drive. A light shift of the wrong sign for the
    /// dispersion regime implied by `delta_at` is rejected: red detuning
    /// means normal dispersion and requires `light_shift < 0`.
    pub fn from_inputs(inputs: DriveInputs) -> Result<Self> {
        let DriveInputs {
            mass,
            transition_wavelength,
            linewidth,
            lattice_wavelength,
            power,
            trap_depth,
            light_shift,
            atom_number,
        } = inputs;
        require_positive("mass", mass)?;
        require_positive("transition_wavelength", transition_wavelength)?;
        require_positive("lattice_wavelength", lattice_wavelength)?;
        require_positive("linewidth", linewidth)?;
        require_finite("power", power)?;
        if power < 0.0 {
            return Err(Error::domain("power", format!("must be >= 0, got {power}")));
        }
        require_finite("light_shift", light_shift)?;
        require_finite("atom_number", atom_number)?;
        if atom_number < 0.0 {
            return Err(Error::domain("atom_number", format!("must be >= 0, got {atom_number}")));
        }

        let omega_l = 2.0 * PI * C / lattice_wavelength;
        let delta_at = omega_l - 2.0 * PI * C / transition_wavelength;
        if delta_at < 0.0 && light_shift >= 0.0 {
            return Err(Error::domain(
                "light_shift",
                format!("red detuning implies normal dispersion (light_shift < 0), got {light_shift}"),
            ));
        }

        let k = wavenumber(lattice_wavelength);
        let omega_r = recoil_frequency(mass, lattice_wavelength)?;
        let omega_v = trap_frequency_from_depth(trap_depth, omega_r)?;
        let gamma_tilde = free_space_scattering_rate(trap_depth, linewidth, delta_at)?;

        Ok(Self {
            mass,
            transition_wavelength,
            linewidth,
            lattice_wavelength,
            omega_l,
            k,
            delta_at,
            power,
            light_shift,
            atom_number,
            gamma_tilde,
            trap_depth,
            omega_v,
            omega_r,
            recoil_temperature: recoil_temperature(omega_r),
        })
    }

    /// Replaces the vibrational frequency and back-computes the trap depth
    /// and scattering rate that go with it.
    pub fn with_trap_frequency(mut self, omega_v: f64) -> Result<Self> {
        self.trap_depth = depth_from_trap_frequency(omega_v, self.omega_r)?;
        self.omega_v = omega_v;
        self.gamma_tilde = free_space_scattering_rate(self.trap_depth, self.linewidth, self.delta_at)?;
        Ok(self)
    }

    /// Collective light shift N·Δ₀, rad/s.
    pub fn collective_shift(&self) -> f64 {
        self.atom_number * self.light_shift
    }

    pub fn regime_warnings(&self) -> Vec<RegimeWarning> {
        [
            RegimeWarning::check_lamb_dicke(self.omega_r, self.omega_v),
            RegimeWarning::check_detuning(self.delta_at, self.linewidth),
        ]
        .into_iter()
        .flatten()
        .collect()
    }
}

/// The three dimensionless ratios governing the ladder rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedRatios {
    /// Cavity-to-free-space scattering ratio.
    pub eta_c: f64,
    /// Lamb-Dicke suppression ω_R/ω_V.
    pub eta_ld: f64,
    /// Cavity suppression of the off-resonant (Stokes) sideband.
    pub xi: f64,
}

impl DerivedRatios {
    /// Free-space angular factor; fixed.
    pub const GEOMETRY_FACTOR: f64 = FREE_SPACE_GEOMETRY;

    pub fn new(eta_c: f64, eta_ld: f64, xi: f64) -> Result<Self> {
        require_positive("eta_c", eta_c)?;
        require_positive("eta_ld", eta_ld)?;
        if !(xi > 0.0 && xi <= 1.0) {
            return Err(Error::domain("xi", format!("must lie in (0, 1], got {xi}")));
        }
        Ok(Self { eta_c, eta_ld, xi })
    }

    pub fn from_params(cavity: &CavityParams, species: &SpeciesDrive) -> Result<Self> {
        Self::new(
            eta_c(cavity.finesse, cavity.waist, species.lattice_wavelength)?,
            lamb_dicke(species.omega_r, species.omega_v)?,
            xi_suppression(species.omega_v, cavity.gamma_c)?,
        )
    }
}

pub fn wavenumber(wavelength: f64) -> f64 {
    2.0 * PI / wavelength
}

/// Ratio of the scattering rate into one cavity mode to the free-space
/// rate: `12 F / (pi (k w0)^2)`.
pub fn eta_c(finesse: f64, waist: f64, wavelength: f64) -> Result<f64> {
    require_positive("finesse", finesse)?;
    require_positive("waist", waist)?;
    require_positive("wavelength", wavelength)?;
    let kw = wavenumber(wavelength) * waist;
    Ok(12.0 * finesse / (PI * kw * kw))
}

/// Single-photon recoil frequency `hbar k^2 / 2m`, rad/s.
pub fn recoil_frequency(mass: f64, wavelength: f64) -> Result<f64> {
    require_positive("mass", mass)?;
    require_positive("wavelength", wavelength)?;
    let k = wavenumber(wavelength);
    Ok(HBAR * k * k / (2.0 * mass))
}

pub fn recoil_temperature(omega_r: f64) -> f64 {
    HBAR * omega_r / K_B
}

/// Lamb-Dicke factor `omega_R / omega_V`. Logs a warning when the trap
/// is not deep enough for the Lamb-Dicke regime.
pub fn lamb_dicke(omega_r: f64, omega_v: f64) -> Result<f64> {
    require_positive("omega_r", omega_r)?;
    require_positive("omega_v", omega_v)?;
    RegimeWarning::emit(RegimeWarning::check_lamb_dicke(omega_r, omega_v));
    Ok(omega_r / omega_v)
}

/// Lorentzian suppression of the Stokes sideband, `1 / (1 + (2 omega_V / gamma_c)^2)`.
pub fn xi_suppression(omega_v: f64, gamma_c: f64) -> Result<f64> {
    require_positive("gamma_c", gamma_c)?;
    require_finite("omega_v", omega_v)?;
    if omega_v < 0.0 {
        return Err(Error::domain("omega_v", format!("must be >= 0, got {omega_v}")));
    }
    let x = 2.0 * omega_v / gamma_c;
    Ok(1.0 / (1.0 + x * x))
}

/// Harmonic frequency at the bottom of a standing-wave well of depth `U`:
/// `2 sqrt(U E_R) / hbar` with `E_R = hbar omega_R`.
pub fn trap_frequency_from_depth(depth: f64, omega_r: f64) -> Result<f64> {
    require_positive("trap_depth", depth)?;
    require_positive("omega_r", omega_r)?;
    Ok(2.0 * (depth * HBAR * omega_r).sqrt() / HBAR)
}

/// Inverse of [`trap_frequency_from_depth`].
pub fn depth_from_trap_frequency(omega_v: f64, omega_r: f64) -> Result<f64> {
    require_positive("omega_v", omega_v)?;
    require_positive("omega_r", omega_r)?;
    let e = HBAR * omega_v;
    Ok(e * e / (4.0 * HBAR * omega_r))
}

/// Far-detuned two-level scattering rate `(Gamma / |delta|) U / hbar`, 1/s.
pub fn free_space_scattering_rate(depth: f64, linewidth: f64, delta_at: f64) -> Result<f64> {
    require_positive("trap_depth", depth)?;
    require_positive("linewidth", linewidth)?;
    require_finite("delta_at", delta_at)?;
    if delta_at == 0.0 {
        return Err(Error::domain("delta_at", "resonant drive is outside the dispersive model"));
    }
    RegimeWarning::emit(RegimeWarning::check_detuning(delta_at, linewidth));
    Ok(linewidth / delta_at.abs() * depth / HBAR)
}

/// Dispersive light shift per photon for a two-level atom with vacuum
/// coupling `g0` (rad/s): `g0^2 / delta_at`. Sign follows the detuning.
pub fn light_shift_from_coupling(g0: f64, delta_at: f64) -> Result<f64> {
    require_finite("g0", g0)?;
    require_finite("delta_at", delta_at)?;
    if delta_at == 0.0 {
        return Err(Error::domain("delta_at", "resonant drive is outside the dispersive model"));
    }
    Ok(g0 * g0 / delta_at)
}

/// Rough lattice depth from the circulating power, using the two-level
/// far-detuned shift `hbar Gamma^2 I / (8 |delta| I_sat)` at the standing-wave
/// antinode (peak intensity `4 * 2P / (pi w0^2)`).
///
/// Only an estimate: the effective saturation intensity depends on the
/// line strength and polarization, which this model does not resolve.
pub fn trap_depth_from_power(
    power: f64,
    waist: f64,
    linewidth: f64,
    delta_at: f64,
    saturation_intensity: f64,
) -> Result<f64> {
    require_positive("power", power)?;
    require_positive("waist", waist)?;
    require_positive("linewidth", linewidth)?;
    require_positive("saturation_intensity", saturation_intensity)?;
    if delta_at == 0.0 || !delta_at.is_finite() {
        return Err(Error::domain("delta_at", "must be finite and nonzero"));
    }
    let peak = 4.0 * 2.0 * power / (PI * waist * waist);
    Ok(HBAR * linewidth * linewidth * peak / (8.0 * delta_at.abs() * saturation_intensity))
}

/// Intracavity photon number per traveling wave carrying `power`:
/// `P / (hbar omega_L gamma_0)`.
pub fn photons_from_power(power: f64, omega_l: f64, gamma_0: f64) -> f64 {
    power / (HBAR * omega_l * gamma_0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{RB87_D2_LINEWIDTH, RB87_D2_WAVELENGTH, RB87_MASS};
    use approx::assert_relative_eq;

    const LAMBDA: f64 = 780.24e-9;

    #[test]
    fn eta_c_matches_direct_arithmetic() {
        let k = 2.0 * PI / LAMBDA;
        let oracle = 12.0 * 1.8e5 / (PI * (k * 130e-6).powi(2));
        let got = eta_c(1.8e5, 130e-6, LAMBDA).unwrap();
        assert_relative_eq!(got, oracle, max_relative = 1e-14);
        assert!((got - 0.627).abs() < 1e-3);
        assert!((got - 0.6).abs() / 0.6 < 0.10);
    }

    #[test]
    fn eta_c_linear_in_finesse() {
        let a = eta_c(1.0e5, 100e-6, LAMBDA).unwrap();
        let b = eta_c(2.0e5, 100e-6, LAMBDA).unwrap();
        assert_relative_eq!(b, 2.0 * a, max_relative = 1e-15);
    }

    #[test]
    fn non_positive_inputs_are_domain_errors() {
        assert!(matches!(eta_c(0.0, 1e-4, LAMBDA), Err(Error::Domain { param: "finesse", .. })));
        assert!(recoil_frequency(-1.0, LAMBDA).is_err());
        assert!(lamb_dicke(0.0, 1.0).is_err());
        assert!(xi_suppression(1.0, 0.0).is_err());
        assert!(trap_frequency_from_depth(0.0, 1.0).is_err());
        assert!(matches!(
            free_space_scattering_rate(1e-27, 1e7, 0.0),
            Err(Error::Domain { param: "delta_at", .. })
        ));
    }

    #[test]
    fn recoil_frequency_rb87() {
        let k = 2.0 * PI / LAMBDA;
        let oracle = HBAR * k * k / (2.0 * RB87_MASS);
        let got = recoil_frequency(RB87_MASS, LAMBDA).unwrap();
        assert_relative_eq!(got, oracle, max_relative = 1e-14);
        assert!((got / (2.0 * PI) - 3.77e3).abs() < 0.01e3);
    }

    #[test]
    fn recoil_frequency_scaling() {
        let base = recoil_frequency(RB87_MASS, LAMBDA).unwrap();
        assert_relative_eq!(recoil_frequency(4.0 * RB87_MASS, LAMBDA).unwrap(), base / 4.0, max_relative = 1e-14);
        assert_relative_eq!(recoil_frequency(RB87_MASS, LAMBDA / 2.0).unwrap(), 4.0 * base, max_relative = 1e-14);
        let eta_ld = lamb_dicke(base, 2.0 * PI * 380e3).unwrap();
        assert!((eta_ld - 1e-2).abs() < 1e-3);
    }

    #[test]
    fn lamb_dicke_examples() {
        assert_eq!(lamb_dicke(3.0, 3.0).unwrap(), 1.0);
        assert!(RegimeWarning::check_lamb_dicke(3.0, 3.0).is_some());
        assert!((lamb_dicke(2.37e4, 2.388e6).unwrap() - 0.0099).abs() < 5e-5);
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi_suppression(0.0, 5.0).unwrap(), 1.0);
        assert_relative_eq!(xi_suppression(2.5, 5.0).unwrap(), 0.5, max_relative = 1e-15);
        let xi = xi_suppression(2.0 * PI * 380e3, PI * 1.7e4).unwrap();
        assert!((xi - 1.25e-4).abs() < 1e-6, "xi = {xi}");
    }

    #[test]
    fn trap_frequency_examples() {
        let omega_r = recoil_frequency(RB87_MASS, LAMBDA).unwrap();
        let u = K_B * 460e-6;
        let omega_v = trap_frequency_from_depth(u, omega_r).unwrap();
        assert!((omega_v / (2.0 * PI * 380e3) - 1.0).abs() < 0.02);

        let e_r = HBAR * omega_r;
        assert_relative_eq!(trap_frequency_from_depth(e_r, omega_r).unwrap(), 2.0 * omega_r, max_relative = 1e-14);

        let back = depth_from_trap_frequency(omega_v, omega_r).unwrap();
        assert_relative_eq!(back, u, max_relative = 1e-12);
    }

    #[test]
    fn scattering_rate_examples() {
        let delta = -2.0 * PI * C * 0.1e-9 / (LAMBDA * LAMBDA);
        let u = K_B * 460e-6;
        let rate = free_space_scattering_rate(u, RB87_D2_LINEWIDTH, delta).unwrap();
        assert!((rate - 7.4e3).abs() < 0.05e3, "rate = {rate}");
        assert!((rate - 8e3).abs() / 8e3 < 0.10);

        let halved = free_space_scattering_rate(u, RB87_D2_LINEWIDTH, 2.0 * delta).unwrap();
        assert_relative_eq!(halved, rate / 2.0, max_relative = 1e-14);
        assert_relative_eq!(rate * HBAR * delta.abs() / (RB87_D2_LINEWIDTH * u), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn species_drive_requires_normal_dispersion_for_red_detuning() {
        let inputs = DriveInputs {
            mass: RB87_MASS,
            transition_wavelength: RB87_D2_WAVELENGTH,
            linewidth: RB87_D2_LINEWIDTH,
            lattice_wavelength: RB87_D2_WAVELENGTH + 0.1e-9,
            power: 0.05,
            trap_depth: K_B * 460e-6,
            light_shift: 1.0,
            atom_number: 1e6,
        };
        assert!(matches!(
            SpeciesDrive::from_inputs(inputs),
            Err(Error::Domain { param: "light_shift", .. })
        ));
        let drive = SpeciesDrive::from_inputs(DriveInputs {
            light_shift: -1.0,
            ..inputs
        })
        .unwrap();
        assert!(drive.delta_at < 0.0);
        assert_relative_eq!(drive.k, 2.0 * PI / drive.lattice_wavelength, max_relative = 1e-15);
        assert_relative_eq!(drive.recoil_temperature, HBAR * drive.omega_r / K_B, max_relative = 1e-15);
        assert!(drive.regime_warnings().is_empty());
    }

    #[test]
    fn with_trap_frequency_round_trips() {
        let drive = SpeciesDrive::from_inputs(DriveInputs {
            mass: RB87_MASS,
            transition_wavelength: RB87_D2_WAVELENGTH,
            linewidth: RB87_D2_LINEWIDTH,
            lattice_wavelength: RB87_D2_WAVELENGTH + 0.1e-9,
            power: 0.05,
            trap_depth: K_B * 460e-6,
            light_shift: -1.0,
            atom_number: 1e6,
        })
        .unwrap();
        let same = drive.with_trap_frequency(drive.omega_v).unwrap();
        assert_relative_eq!(same.trap_depth, drive.trap_depth, max_relative = 1e-12);
        assert_relative_eq!(same.gamma_tilde, drive.gamma_tilde, max_relative = 1e-12);
    }

    #[test]
    fn cavity_free_spectral_range() {
        let cav = CavityParams::new(1e5, 1e-4, 0.1, 1e4).unwrap();
        assert_relative_eq!(cav.gamma_0, C / 0.1);
        assert_relative_eq!(cav.round_trip_loss(), 2e4 / (C / 0.1));
        assert!(CavityParams::new(1e5, 1e-4, 0.0, 1e4).is_err());
    }

    #[test]
    fn derived_ratios_validate() {
        assert!(DerivedRatios::new(0.6, 0.01, 0.0).is_err());
        assert!(DerivedRatios::new(0.6, 0.01, 1.0).is_ok());
        assert!(DerivedRatios::new(-0.6, 0.01, 0.5).is_err());
        assert_eq!(DerivedRatios::GEOMETRY_FACTOR, 0.4);
    }

    #[test]
    fn power_estimator_is_order_of_magnitude() {
        let delta = -2.0 * PI * C * 0.1e-9 / (LAMBDA * LAMBDA);
        let u = trap_depth_from_power(0.05, 130e-6, RB87_D2_LINEWIDTH, delta, 16.7).unwrap();
        let u_uk = u / K_B * 1e6;
        assert!(u_uk > 100.0 && u_uk < 5000.0, "{u_uk} uK");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn eta_c_increasing_in_finesse(f in 1.0f64..1e6, df in 1.0f64..1e5, w in 1e-5f64..1e-3) {
                prop_assert!(eta_c(f + df, w, LAMBDA).unwrap() > eta_c(f, w, LAMBDA).unwrap());
            }

            #[test]
            fn lamb_dicke_decreasing_in_omega_v(wr in 1e2f64..1e5, wv in 1e3f64..1e7, dv in 1.0f64..1e6) {
                prop_assert!(lamb_dicke(wr, wv + dv).unwrap() < lamb_dicke(wr, wv).unwrap());
            }

            #[test]
            fn xi_decreasing_in_omega_v(wv in 0.0f64..1e7, dv in 1.0f64..1e6, gc in 1e3f64..1e6) {
                let a = xi_suppression(wv, gc).unwrap();
                let b = xi_suppression(wv + dv, gc).unwrap();
                prop_assert!(b < a);
                prop_assert!(b > 0.0 && a <= 1.0);
            }

            #[test]
            fn depth_frequency_inverse(u_uk in 1.0f64..1e4) {
                let omega_r = recoil_frequency(RB87_MASS, LAMBDA).unwrap();
                let u = u_uk * 1e-6 * K_B;
                let back = depth_from_trap_frequency(trap_frequency_from_depth(u, omega_r).unwrap(), omega_r).unwrap();
                prop_assert!(((back - u) / u).abs() < 1e-12);
            }
        }
    }
}
