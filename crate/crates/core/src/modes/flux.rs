//! Energy carried off by the motional sidebands, and the chain that turns
//! it into a temperature decay rate.

use num_complex::Complex64;

use super::response::{sideband_amplitudes, Sidebands};
use crate::constants::{HBAR, K_B};
use crate::error::{require_positive, Error, Result};

/// Power in a traveling wave of photon-number amplitude `a`:
/// `hbar omega_L |a|^2 gamma_0`.
pub fn traveling_wave_power(amplitude: Complex64, omega_l: f64, gamma_0: f64) -> f64 {
    HBAR * omega_l * amplitude.norm_sqr() * gamma_0
}

/// Kinetic-energy change per particle from sideband emission,
/// `−(2/N)(Ω/ω_L) T_loss (P_β − P_γ)` with `T_loss = 2γc/γ0`, in W.
/// Negative values mean cooling.
pub fn sideband_power_flux(
    beta: Complex64,
    gamma: Complex64,
    omega: f64,
    omega_l: f64,
    gamma_c: f64,
    gamma_0: f64,
    atom_number: f64,
) -> Result<f64> {
    if !(atom_number >= 1.0) {
        return Err(Error::domain("atom_number", format!("must be >= 1, got {atom_number}")));
    }
    require_positive("omega", omega)?;
    require_positive("omega_l", omega_l)?;
    require_positive("gamma_0", gamma_0)?;
    let t_loss = 2.0 * gamma_c / gamma_0;
    let p_beta = traveling_wave_power(beta, omega_l, gamma_0);
    let p_gamma = traveling_wave_power(gamma, omega_l, gamma_0);
    Ok(-(2.0 / atom_number) * (omega / omega_l) * t_loss * (p_beta - p_gamma))
}

/// Carrier photon number per traveling wave at which the coherent
/// back-scattering rate of one atom into the counter-propagating mode,
/// `8 |g|^2 Δ0^2 |α|^2 / γc`, equals the cavity scattering rate `η_c Γ̃`.
pub fn carrier_photons_for_scattering(cavity_rate: f64, light_shift: f64, g_mod: f64, gamma_c: f64) -> Result<f64> {
    require_positive("cavity_rate", cavity_rate)?;
    require_positive("gamma_c", gamma_c)?;
    if light_shift == 0.0 || !light_shift.is_finite() {
        return Err(Error::domain("light_shift", "must be finite and nonzero"));
    }
    if !(g_mod > 0.0 && g_mod <= 1.0) {
        return Err(Error::domain("g_mod", format!("must lie in (0, 1], got {g_mod}")));
    }
    Ok(cavity_rate * gamma_c / (8.0 * g_mod * g_mod * light_shift * light_shift))
}

/// Inputs to [`sideband_cooling_pipeline`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineInputs {
    pub eta_c: f64,
    pub gamma_tilde: f64,
    pub light_shift: f64,
    pub atom_number: f64,
    pub g_mod: f64,
    pub gamma_c: f64,
    pub gamma_0: f64,
    pub omega_l: f64,
    pub omega_v: f64,
    /// Lattice wavenumber, rad/m.
    pub k: f64,
    pub mass: f64,
    /// Temperature at which the chain is evaluated, K. The resulting rate
    /// does not depend on it.
    pub temperature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineResult {
    pub carrier_photons: f64,
    /// Center-of-mass phase modulation depth, `ε^2 = 4 k^2 Δz^2 / N`.
    pub epsilon: f64,
    pub sidebands: Sidebands,
    /// Energy change per particle, W.
    pub power_flux: f64,
    /// dT/dt, K/s.
    pub temperature_derivative: f64,
    /// `−(dT/dt)/T`, 1/s.
    pub rate: f64,
}

/// Field-side cooling rate: resonant carrier → sideband amplitudes at
/// `Ω = ω_V` → sideband power flux → temperature derivative, using
/// `k_B T = m Δz^2 ω_V^2 = 2W`.
pub fn sideband_cooling_pipeline(p: &PipelineInputs) -> Result<PipelineResult> {
    require_positive("temperature", p.temperature)?;
    require_positive("mass", p.mass)?;
    require_positive("omega_v", p.omega_v)?;
    let photons = carrier_photons_for_scattering(p.eta_c * p.gamma_tilde, p.light_shift, p.g_mod, p.gamma_c)?;
    let alpha = Complex64::new(photons.sqrt(), 0.0);
    let n_delta0 = p.atom_number * p.light_shift;
    let delta_c = n_delta0 * (1.0 + p.g_mod);

    let dz2 = K_B * p.temperature / (p.mass * p.omega_v * p.omega_v);
    let epsilon = (4.0 * p.k * p.k * dz2 / p.atom_number).sqrt();
    let sidebands = sideband_amplitudes(alpha, n_delta0, epsilon, delta_c, p.omega_v, p.g_mod, p.gamma_c)?;
    let power_flux = sideband_power_flux(
        sidebands.beta,
        sidebands.gamma,
        p.omega_v,
        p.omega_l,
        p.gamma_c,
        p.gamma_0,
        p.atom_number,
    )?;
    let temperature_derivative = 2.0 * power_flux / K_B;
    Ok(PipelineResult {
        carrier_photons: photons,
        epsilon,
        sidebands,
        power_flux,
        temperature_derivative,
        rate: -temperature_derivative / p.temperature,
    })
}
