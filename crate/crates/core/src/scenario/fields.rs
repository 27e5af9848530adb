//! Time-domain field simulation of a resolved scenario and comparison of
//! the demodulated amplitudes with the analytic response.

use num_complex::Complex64;

use super::config::{to_si, Dimension};
use super::run::{ResolvedScenario, Scenario};
use crate::error::{Error, Result};
use crate::modes::{
    default_transient, demodulate_sidebands, integrate_modes, sideband_amplitudes, steady_state_carrier, Demodulated,
    FieldState, FieldTimeSeries, GTrajectory,
};

#[derive(Debug, Clone)]
pub struct FieldsRun {
    pub series: FieldTimeSeries,
    pub trajectory: GTrajectory,
    /// Modulation frequency used for demodulation, rad/s.
    pub omega: f64,
    pub transient: f64,
    pub demodulated: Demodulated,
    pub analytic_carrier: Complex64,
    pub analytic_beta: Complex64,
    pub analytic_gamma: Complex64,
}

impl FieldsRun {
    pub fn carrier_residual(&self) -> f64 {
        relative(self.demodulated.carrier, self.analytic_carrier, self.analytic_carrier)
    }

    /// Sideband error relative to the analytic `|β|`; relative to the carrier
    /// when the analytic sideband vanishes.
    pub fn sideband_residual(&self) -> f64 {
        let scale = if self.analytic_beta.norm() > 0.0 {
            self.analytic_beta
        } else {
            self.analytic_carrier
        };
        relative(self.demodulated.beta, self.analytic_beta, scale)
            .max(relative(self.demodulated.gamma, self.analytic_gamma, scale))
    }
}

fn relative(x: Complex64, reference: Complex64, scale: Complex64) -> f64 {
    let d = (x - reference).norm();
    if d == 0.0 {
        0.0
    } else {
        d / scale.norm()
    }
}

/// Integrates the field equations for the scenario's `fields` block,
/// starting from the analytic carrier in both modes.
pub fn run_fields(scenario: &Scenario) -> Result<FieldsRun> {
    use Dimension::*;
    let block = scenario
        .config
        .fields
        .as_ref()
        .ok_or_else(|| Error::Config("the config has no `fields` block".into()))?;
    let r = ResolvedScenario::new(scenario)?;
    let epsilon = to_si("fields.epsilon", &block.epsilon, Dimensionless)?;
    if epsilon < 0.0 {
        return Err(Error::Config(format!("`fields.epsilon` must be >= 0, got {epsilon}")));
    }
    let omega = match &block.omega {
        Some(q) => to_si("fields.omega", q, AngularFrequency)?,
        None => r.omega_res,
    };
    let span = to_si("fields.span", &block.span, Time)?;
    let dt = to_si("fields.dt", &block.dt, Time)?;
    let transient = match &block.transient {
        Some(q) => to_si("fields.transient", q, Time)?,
        None => default_transient(r.cavity.gamma_c),
    };

    let trajectory = if epsilon == 0.0 {
        GTrajectory::Constant(Complex64::new(r.g_mod, 0.0))
    } else {
        GTrajectory::PhaseModulated {
            g_mod: r.g_mod,
            epsilon,
            omega,
        }
    };
    let (_, eta) = r.pump_amplitude();
    let carrier = steady_state_carrier(&r.cavity, r.n_delta0, r.g_mod, eta);
    let series = integrate_modes(
        &FieldState::new(carrier, carrier),
        (eta, eta),
        &trajectory,
        &r.cavity,
        r.n_delta0,
        span,
        dt,
    )?;
    let demodulated = demodulate_sidebands(&series, omega, transient)?;
    let sb = sideband_amplitudes(carrier, r.n_delta0, epsilon, r.cavity.delta_c, omega, r.g_mod, r.cavity.gamma_c)?;
    Ok(FieldsRun {
        series,
        trajectory,
        omega,
        transient,
        demodulated,
        analytic_carrier: carrier,
        analytic_beta: sb.beta,
        analytic_gamma: sb.gamma,
    })
}
