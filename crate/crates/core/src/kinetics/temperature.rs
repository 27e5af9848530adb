//! Classical temperature dynamics and the Lorentzian cooling law.

use std::fmt;
use std::io::Write;

use super::ladder::{temperature_equivalent, LadderTrajectory, TemperatureConvention};
use crate::constants::{FREE_SPACE_GEOMETRY, HBAR, K_B};
use crate::error::{require_positive, Error, Result};
use crate::params::DerivedRatios;
use crate::regime::RegimeWarning;

/// Which law produced a [`TemperatureTrace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceModel {
    /// Linear cooling-plus-recoil-heating law.
    Classical,
    /// Field-derived Lorentzian cooling, no free-space heating.
    Lorentzian,
    /// Temperature equivalent of a master-equation trajectory.
    Ladder,
}

impl fmt::Display for TraceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceModel::Classical => "classical",
            TraceModel::Lorentzian => "lorentzian",
            TraceModel::Ladder => "ladder",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemperatureTrace {
    pub times: Vec<f64>,
    /// Kelvin.
    pub temperatures: Vec<f64>,
    pub model: TraceModel,
}

impl TemperatureTrace {
    /// Writes `t,T_kelvin,model`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        Self::write_all(std::slice::from_ref(self), out)
    }

    /// Writes several traces under one `t,T_kelvin,model` header.
    pub fn write_all<W: Write>(traces: &[TemperatureTrace], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "T_kelvin", "model"])?;
        for trace in traces {
            let tag = trace.model.to_string();
            for (t, temp) in trace.times.iter().zip(&trace.temperatures) {
                w.write_record([t.to_string(), temp.to_string(), tag.clone()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reported temperature (`k_B T = ħω_V <n>`) along a ladder trajectory.
    pub fn from_ladder(trajectory: &LadderTrajectory, omega_v: f64) -> Self {
        Self {
            times: trajectory.times.clone(),
            temperatures: trajectory
                .states
                .iter()
                .map(|s| temperature_equivalent(s.mean_n(), omega_v, TemperatureConvention::Quanta))
                .collect(),
            model: TraceModel::Ladder,
        }
    }
}

/// Parameters of `dT/dt = −κ T + h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalCooling {
    /// `κ = 2 (1 − ξ) η_LD η_c Γ̃`, 1/s.
    pub rate: f64,
    /// `h = (η_c ξ + 2/5) Γ̃ T_R`, K/s.
    pub heating: f64,
}

impl ClassicalCooling {
    pub fn new(ratios: &DerivedRatios, gamma_tilde: f64, recoil_temperature: f64) -> Result<Self> {
        require_positive("gamma_tilde", gamma_tilde)?;
        require_positive("recoil_temperature", recoil_temperature)?;
        let DerivedRatios { eta_c, eta_ld, xi } = *ratios;
        Ok(Self {
            rate: 2.0 * (1.0 - xi) * eta_ld * eta_c * gamma_tilde,
            heating: (eta_c * xi + FREE_SPACE_GEOMETRY) * gamma_tilde * recoil_temperature,
        })
    }

    /// Fixed point `h / κ`, K.
    pub fn limit(&self) -> f64 {
        self.heating / self.rate
    }

    /// 1/e time of the approach to the limit, s.
    pub fn e_folding_time(&self) -> f64 {
        1.0 / self.rate
    }

    pub fn at(&self, t0_kelvin: f64, t: f64) -> f64 {
        let limit = self.limit();
        limit + (t0_kelvin - limit) * (-self.rate * t).exp()
    }
}

/// Closed-form solution of the classical temperature law from `t0_kelvin`,
/// sampled at `samples` uniformly spaced times over `[0, span]`.
pub fn temperature_evolution(
    t0_kelvin: f64,
    ratios: &DerivedRatios,
    gamma_tilde: f64,
    recoil_temperature: f64,
    span: f64,
    samples: usize,
) -> Result<TemperatureTrace> {
    require_positive("t0", t0_kelvin)?;
    require_positive("span", span)?;
    if samples < 2 {
        return Err(Error::domain("samples", "need at least two samples"));
    }
    let law = ClassicalCooling::new(ratios, gamma_tilde, recoil_temperature)?;
    let omega_v = K_B * recoil_temperature / HBAR / ratios.eta_ld;
    RegimeWarning::emit(RegimeWarning::check_classical(t0_kelvin, omega_v));
    let times = uniform_times(span, samples);
    Ok(TemperatureTrace {
        temperatures: times.iter().map(|&t| law.at(t0_kelvin, t)).collect(),
        times,
        model: TraceModel::Classical,
    })
}

/// Pure exponential decay at `rate`, as predicted by the Lorentzian law.
pub fn lorentzian_trace(t0_kelvin: f64, rate: f64, span: f64, samples: usize) -> Result<TemperatureTrace> {
    require_positive("t0", t0_kelvin)?;
    require_positive("span", span)?;
    if samples < 2 {
        return Err(Error::domain("samples", "need at least two samples"));
    }
    let times = uniform_times(span, samples);
    Ok(TemperatureTrace {
        temperatures: times.iter().map(|&t| t0_kelvin * (-rate * t).exp()).collect(),
        times,
        model: TraceModel::Lorentzian,
    })
}

fn uniform_times(span: f64, samples: usize) -> Vec<f64> {
    let step = span / (samples - 1) as f64;
    (0..samples).map(|i| i as f64 * step).collect()
}

/// Unpumped-mode line shape seen by a sideband at `omega`:
/// `γc^2 / (γc^2 + (2NΔ0|g| + ω)^2)`.
pub fn lorentzian_profile(omega: f64, n_delta0_g: f64, gamma_c: f64) -> f64 {
    let d = 2.0 * n_delta0_g + omega;
    gamma_c * gamma_c / (gamma_c * gamma_c + d * d)
}

/// `£(ω_V) − £(−ω_V)`: anti-Stokes minus Stokes weight.
pub fn sideband_asymmetry(omega_v: f64, n_delta0_g: f64, gamma_c: f64) -> f64 {
    lorentzian_profile(omega_v, n_delta0_g, gamma_c) - lorentzian_profile(-omega_v, n_delta0_g, gamma_c)
}

/// Temperature decay rate `2 η_c η_LD Γ̃ (£(ω_V) − £(−ω_V))`, 1/s.
pub fn lorentzian_cooling_rate(
    omega_v: f64,
    n_delta0_g: f64,
    gamma_c: f64,
    ratios: &DerivedRatios,
    gamma_tilde: f64,
) -> Result<f64> {
    require_positive("gamma_c", gamma_c)?;
    Ok(2.0 * ratios.eta_c * ratios.eta_ld * gamma_tilde * sideband_asymmetry(omega_v, n_delta0_g, gamma_c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::ladder::steady_state_mean;
    use crate::params::xi_suppression;
    use std::f64::consts::PI;

    const OMEGA_V: f64 = 2.0 * PI * 380e3;
    const GAMMA_C: f64 = PI * 1.7e4;

    fn rb() -> DerivedRatios {
        DerivedRatios::new(0.627, 0.0099, xi_suppression(OMEGA_V, GAMMA_C).unwrap()).unwrap()
    }

    #[test]
    fn rubidium_rate_and_time() {
        let law = ClassicalCooling::new(&rb(), 7.4e3, 1e-7).unwrap();
        assert!((law.rate - 91.9).abs() < 0.5, "rate {}", law.rate);
        assert!((law.e_folding_time() - 0.0109).abs() < 0.0005);
    }

    #[test]
    fn fixed_point_is_constant() {
        let law = ClassicalCooling::new(&rb(), 7.4e3, 1.8e-7).unwrap();
        let tr = temperature_evolution(law.limit(), &rb(), 7.4e3, 1.8e-7, 0.1, 11).unwrap();
        for t in &tr.temperatures {
            assert!((t - law.limit()).abs() < 1e-15 * law.limit().max(1.0));
        }
        assert_eq!(tr.model, TraceModel::Classical);
    }

    #[test]
    fn limit_matches_ladder_mean() {
        let ratios = rb();
        let omega_r = ratios.eta_ld * OMEGA_V;
        let t_r = HBAR * omega_r / K_B;
        let law = ClassicalCooling::new(&ratios, 7.4e3, t_r).unwrap();
        let expect = HBAR * OMEGA_V / (2.0 * K_B) * steady_state_mean(ratios.eta_c, ratios.xi);
        assert!(((law.limit() - expect) / expect).abs() < 1e-12);
    }

    #[test]
    fn resonant_bracket_and_rate() {
        let n_delta0_g = -OMEGA_V / 2.0;
        let xi = xi_suppression(OMEGA_V, GAMMA_C).unwrap();
        let bracket = sideband_asymmetry(OMEGA_V, n_delta0_g, GAMMA_C);
        assert!((bracket - (1.0 - xi)).abs() < 1e-12);
        let r = lorentzian_cooling_rate(OMEGA_V, n_delta0_g, GAMMA_C, &rb(), 7.4e3).unwrap();
        let classical = ClassicalCooling::new(&rb(), 7.4e3, 1e-7).unwrap().rate;
        assert!(((r - classical) / classical).abs() < 1e-12);
    }

    #[test]
    fn zero_frequency_has_no_asymmetry() {
        assert_eq!(sideband_asymmetry(0.0, -1e6, GAMMA_C), 0.0);
    }

    #[test]
    fn half_maximum_point() {
        let n_delta0_g = -OMEGA_V / 2.0;
        let omega = -2.0 * n_delta0_g + GAMMA_C;
        let wing = GAMMA_C * GAMMA_C / (GAMMA_C * GAMMA_C + (2.0 * n_delta0_g - omega).powi(2));
        let bracket = sideband_asymmetry(omega, n_delta0_g, GAMMA_C);
        assert!((bracket - (0.5 - wing)).abs() < 1e-15);
    }

    #[test]
    fn csv_tags_model() {
        let tr = lorentzian_trace(1e-4, 100.0, 0.01, 2).unwrap();
        let mut buf = Vec::new();
        tr.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,T_kelvin,model\n0,0.0001,lorentzian\n"));
    }
}
