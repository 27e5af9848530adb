//! Validity checks that flag, but do not reject, inputs outside the
//! approximations the model relies on.

use std::fmt;

/// Ratio at which a "much greater than" condition is considered violated.
pub const STRONG_INEQUALITY: f64 = 10.0;

/// Largest center-of-mass phase amplitude for which the linearized
/// sideband response is trusted.
pub const SMALL_SIGNAL_EPSILON: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub enum RegimeWarning {
    /// ω_V ≤ 10 ω_R.
    LambDicke { omega_v: f64, omega_r: f64 },
    /// |δ_at| ≤ 10 Γ.
    NearResonantDrive { delta_at: f64, linewidth: f64 },
    /// ε > 0.1.
    LargeModulation { epsilon: f64 },
    /// k_B T ≤ 10 ħ ω_V.
    QuantumTemperature { temperature: f64, omega_v: f64 },
}

impl fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegimeWarning::LambDicke { omega_v, omega_r } => write!(
                f,
                "Lamb-Dicke condition violated: omega_V = {omega_v:e} rad/s is not >> omega_R = {omega_r:e} rad/s"
            ),
            RegimeWarning::NearResonantDrive {
                delta_at,
                linewidth,
            } => write!(
                f,
                "lattice detuning {delta_at:e} rad/s is not large compared with the linewidth {linewidth:e} rad/s"
            ),
            RegimeWarning::LargeModulation { epsilon } => write!(
                f,
                "modulation depth epsilon = {epsilon} exceeds the small-signal range ({SMALL_SIGNAL_EPSILON})"
            ),
            RegimeWarning::QuantumTemperature {
                temperature,
                omega_v,
            } => write!(
                f,
                "temperature {temperature:e} K is not in the classical limit for omega_V = {omega_v:e} rad/s"
            ),
        }
    }
}

impl RegimeWarning {
    pub fn check_lamb_dicke(omega_r: f64, omega_v: f64) -> Option<Self> {
        (omega_v <= STRONG_INEQUALITY * omega_r).then_some(RegimeWarning::LambDicke { omega_v, omega_r })
    }

    pub fn check_detuning(delta_at: f64, linewidth: f64) -> Option<Self> {
        (delta_at.abs() <= STRONG_INEQUALITY * linewidth).then_some(RegimeWarning::NearResonantDrive {
            delta_at,
            linewidth,
        })
    }

    pub fn check_modulation(epsilon: f64) -> Option<Self> {
        (epsilon > SMALL_SIGNAL_EPSILON).then_some(RegimeWarning::LargeModulation { epsilon })
    }

    pub fn check_classical(temperature: f64, omega_v: f64) -> Option<Self> {
        use crate::constants::{HBAR, K_B};
        (K_B * temperature < STRONG_INEQUALITY * HBAR * omega_v).then_some(RegimeWarning::QuantumTemperature {
            temperature,
            omega_v,
        })
    }

    /// Logs the warning, if any, and passes it through.
    pub(crate) fn emit(warning: Option<Self>) -> Option<Self> {
        if let Some(w) = &warning {
            log::warn!("{w}");
        }
        warning
    }
}
