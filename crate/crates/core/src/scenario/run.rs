//! Resolution of a configured scenario into a single run record.

use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;

use super::config::{si_snapshot, to_si, Dimension, ResonanceUnknown, ScenarioConfig};
use super::record::{RunRecord, TIMESTAMP_KEY};
use crate::error::{require_finite, require_positive, Error, Result};
use crate::kinetics::{
    lorentzian_cooling_rate, steady_state_ground, steady_state_mean, temperature_equivalent, ClassicalCooling,
    LadderRates, TemperatureConvention,
};
use crate::modes::{
    find_splitting_resonance, sideband_amplitudes, sideband_cooling_pipeline, traveling_wave_power, PipelineInputs,
    Sidebands,
};
use crate::params::{
    depth_from_trap_frequency, photons_from_power, recoil_frequency, trap_frequency_from_depth, CavityParams,
    DerivedRatios, DriveInputs, SpeciesDrive,
};
use crate::regime::RegimeWarning;

/// A validated scenario in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: String,
    pub seed: u64,
    pub solve_for: ResonanceUnknown,
    pub cavity: CavityParams,
    pub drive: DriveInputs,
    pub g_mod: f64,
    /// Ensemble temperature, K.
    pub temperature: f64,
    /// Probe frequency for the Lorentzian rate, rad/s.
    pub probe_omega: Option<f64>,
    pub config: ScenarioConfig,
}

impl Scenario {
    pub fn from_config(config: &ScenarioConfig) -> Result<Self> {
        use Dimension::*;
        let c = config;
        let q = |key: &str, quantity, dim| to_si(key, quantity, dim);
        let cavity = CavityParams::new(
            q("cavity.finesse", &c.cavity.finesse, Dimensionless)?,
            q("cavity.waist", &c.cavity.waist, Length)?,
            q("cavity.roundtrip_length", &c.cavity.roundtrip_length, Length)?,
            q("cavity.gamma_c", &c.cavity.gamma_c, AngularFrequency)?,
        )?;
        let drive = DriveInputs {
            mass: q("species.mass", &c.species.mass, Mass)?,
            transition_wavelength: q("species.transition_wavelength", &c.species.transition_wavelength, Length)?,
            linewidth: q("species.linewidth", &c.species.linewidth, AngularFrequency)?,
            lattice_wavelength: q("drive.lattice_wavelength", &c.drive.lattice_wavelength, Length)?,
            power: q("drive.power", &c.drive.power, Power)?,
            trap_depth: q("drive.trap_depth", &c.drive.trap_depth, Energy)?,
            light_shift: q("drive.light_shift", &c.drive.light_shift, AngularFrequency)?,
            atom_number: q("ensemble.atom_number", &c.ensemble.atom_number, Dimensionless)?,
        };
        let probe_omega = c
            .sideband
            .omega
            .as_ref()
            .map(|o| q("sideband.omega", o, AngularFrequency))
            .transpose()?;
        Ok(Self {
            label: c.label.clone(),
            seed: c.seed,
            solve_for: c.solve_for,
            cavity,
            drive,
            g_mod: q("ensemble.g_mod", &c.ensemble.g_mod, Dimensionless)?,
            temperature: q("ensemble.temperature", &c.ensemble.temperature, Temperature)?,
            probe_omega,
            config: c.clone(),
        })
    }
}

/// `N = ω_V / (2 |Δ0| |g|)`, rounded to the nearest integer.
pub fn solve_resonant_atom_number(omega_v: f64, light_shift: f64, g_mod: f64) -> Result<f64> {
    check_trap_frequency(omega_v)?;
    check_light_shift(light_shift)?;
    check_g_mod(g_mod)?;
    let n = (omega_v / (2.0 * light_shift.abs() * g_mod)).round();
    if n < 1.0 {
        return Err(Error::domain(
            "atom_number",
            format!("resonance needs fewer than one atom (omega_v {omega_v:e}, light_shift {light_shift:e}, g_mod {g_mod})"),
        ));
    }
    Ok(n)
}

/// The four quantities tied together by `ω_V = −2 N Δ0 |g|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceVariables {
    pub omega_v: f64,
    pub light_shift: f64,
    pub g_mod: f64,
    pub atom_number: f64,
}

/// Solves `ω_V = −2 N Δ0 |g|` for `unknown`; the other three fields of
/// `known` are used as given and the unknown one is ignored.
pub fn solve_resonance(unknown: ResonanceUnknown, known: ResonanceVariables) -> Result<ResonanceVariables> {
    let ResonanceVariables {
        omega_v,
        light_shift,
        g_mod,
        atom_number,
    } = known;
    let mut out = known;
    match unknown {
        ResonanceUnknown::AtomNumber => {
            out.atom_number = solve_resonant_atom_number(omega_v, light_shift, g_mod)?;
        }
        ResonanceUnknown::GMod => {
            check_trap_frequency(omega_v)?;
            check_light_shift(light_shift)?;
            check_atom_number(atom_number)?;
            out.g_mod = omega_v / (2.0 * atom_number * light_shift.abs());
            if out.g_mod > 1.0 {
                return Err(Error::domain(
                    "g_mod",
                    format!("resonance needs |g| = {} > 1; add atoms or raise |light_shift|", out.g_mod),
                ));
            }
        }
        ResonanceUnknown::LightShift => {
            check_trap_frequency(omega_v)?;
            check_g_mod(g_mod)?;
            check_atom_number(atom_number)?;
            out.light_shift = -omega_v / (2.0 * atom_number * g_mod);
        }
        ResonanceUnknown::TrapFrequency => {
            check_light_shift(light_shift)?;
            check_g_mod(g_mod)?;
            check_atom_number(atom_number)?;
            out.omega_v = -2.0 * atom_number * light_shift * g_mod;
        }
    }
    Ok(out)
}

fn check_trap_frequency(omega_v: f64) -> Result<()> {
    require_positive("omega_v", omega_v)
}

fn check_light_shift(light_shift: f64) -> Result<()> {
    require_finite("light_shift", light_shift)?;
    if light_shift >= 0.0 {
        return Err(Error::domain(
            "light_shift",
            format!("must be negative (normal dispersion), got {light_shift}"),
        ));
    }
    Ok(())
}

fn check_g_mod(g_mod: f64) -> Result<()> {
    if !(g_mod > 0.0 && g_mod <= 1.0) {
        return Err(Error::domain(
            "g_mod",
            format!("must lie in (0, 1], got {g_mod}; without localization the resonance does not split"),
        ));
    }
    Ok(())
}

fn check_atom_number(n: f64) -> Result<()> {
    if !(n >= 1.0 && n.is_finite()) {
        return Err(Error::domain("atom_number", format!("must be >= 1, got {n}")));
    }
    Ok(())
}

/// A scenario with its resonance solved and every derived quantity fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedScenario {
    pub scenario: Scenario,
    pub species: SpeciesDrive,
    pub g_mod: f64,
    pub ratios: DerivedRatios,
    /// Collective light shift `N Δ0`, rad/s.
    pub n_delta0: f64,
    /// Cavity with the pump on the pumped-mode resonance.
    pub cavity: CavityParams,
    /// Modulation frequency resonant with the unpumped mode, rad/s.
    pub omega_res: f64,
}

impl ResolvedScenario {
    pub fn new(scenario: &Scenario) -> Result<Self> {
        let d = scenario.drive;
        let omega_r = recoil_frequency(d.mass, d.lattice_wavelength)?;
        let known = ResonanceVariables {
            omega_v: match scenario.solve_for {
                ResonanceUnknown::TrapFrequency => f64::NAN,
                _ => trap_frequency_from_depth(d.trap_depth, omega_r)?,
            },
            light_shift: d.light_shift,
            g_mod: scenario.g_mod,
            atom_number: d.atom_number,
        };
        let solved = solve_resonance(scenario.solve_for, known)?;
        let inputs = DriveInputs {
            light_shift: solved.light_shift,
            atom_number: solved.atom_number,
            trap_depth: match scenario.solve_for {
                ResonanceUnknown::TrapFrequency => depth_from_trap_frequency(solved.omega_v, omega_r)?,
                _ => d.trap_depth,
            },
            ..d
        };
        let species = SpeciesDrive::from_inputs(inputs)?;
        let ratios = DerivedRatios::from_params(&scenario.cavity, &species)?;
        let n_delta0 = species.collective_shift();
        let resonance = find_splitting_resonance(&scenario.cavity, n_delta0, solved.g_mod)?;
        Ok(Self {
            scenario: scenario.clone(),
            species,
            g_mod: solved.g_mod,
            ratios,
            n_delta0,
            cavity: scenario.cavity.with_detuning(resonance.delta_c)?,
            omega_res: resonance.omega,
        })
    }

    /// Carrier amplitude per traveling wave fed by the configured power, and
    /// the matching symmetric pump `η` with `α = γ0 η / γc` on resonance.
    pub fn pump_amplitude(&self) -> (Complex64, Complex64) {
        let alpha = photons_from_power(self.species.power, self.species.omega_l, self.cavity.gamma_0).sqrt();
        let eta = alpha * self.cavity.gamma_c / self.cavity.gamma_0;
        (Complex64::new(alpha, 0.0), Complex64::new(eta, 0.0))
    }

    /// Center-of-mass phase modulation depth at the ensemble temperature,
    /// `ε^2 = 4 k^2 Δz^2 / N` with `Δz^2 = k_B T / (m ω_V^2)`.
    pub fn thermal_epsilon(&self) -> f64 {
        let s = &self.species;
        let dz2 = crate::constants::K_B * self.scenario.temperature / (s.mass * s.omega_v * s.omega_v);
        (4.0 * s.k * s.k * dz2 / s.atom_number).sqrt()
    }
}

/// Numeric record keys that sweeps may report.
pub const METRICS: &[&str] = &[
    "omega_v",
    "omega_r",
    "trap_depth",
    "gamma_tilde",
    "eta_c",
    "eta_ld",
    "xi",
    "atom_number",
    "light_shift",
    "g_mod",
    "n_delta0",
    "delta_c",
    "omega_res",
    "decay_1",
    "excite_1",
    "mean_n",
    "ground_population",
    "temperature_report",
    "temperature_limit",
    "cooling_rate",
    "e_folding_time",
    "probe_omega",
    "lorentzian_rate",
    "pipeline_rate",
    "pipeline_residual",
    "epsilon",
    "carrier_photons",
    "sideband_power_beta",
    "sideband_power_gamma",
];

pub fn run_scenario(scenario: &Scenario) -> Result<RunRecord> {
    let r = ResolvedScenario::new(scenario)?;
    let s = &r.species;
    let ratios = r.ratios;
    let gamma_c = r.cavity.gamma_c;
    let mut rec = RunRecord::default();

    rec.push_text("label", scenario.label.clone());
    rec.push_number("seed", scenario.seed as f64, "1");
    rec.push_text("solve_for", scenario.solve_for.to_string());
    for (key, (value, unit)) in si_snapshot(&scenario.config)? {
        rec.push_number(&format!("input.{key}"), value, unit);
    }

    rec.push_number("omega_l", s.omega_l, "rad/s");
    rec.push_number("delta_at", s.delta_at, "rad/s");
    rec.push_number("k", s.k, "rad/m");
    rec.push_number("gamma_0", r.cavity.gamma_0, "1/s");
    rec.push_number("omega_r", s.omega_r, "rad/s");
    rec.push_number("recoil_temperature", s.recoil_temperature, "K");
    rec.push_number("omega_v", s.omega_v, "rad/s");
    rec.push_number("trap_depth", s.trap_depth, "J");
    rec.push_number("gamma_tilde", s.gamma_tilde, "1/s");
    rec.push_number("eta_c", ratios.eta_c, "1");
    rec.push_number("eta_ld", ratios.eta_ld, "1");
    rec.push_number("xi", ratios.xi, "1");

    rec.push_number("atom_number", s.atom_number, "1");
    rec.push_number("light_shift", s.light_shift, "rad/s");
    rec.push_number("g_mod", r.g_mod, "1");
    rec.push_number("n_delta0", r.n_delta0, "rad/s");
    rec.push_number("delta_c", r.cavity.delta_c, "rad/s");
    rec.push_number("omega_res", r.omega_res, "rad/s");

    let rates = LadderRates::new(ratios, s.gamma_tilde)?;
    let mean_n = steady_state_mean(ratios.eta_c, ratios.xi);
    let law = ClassicalCooling::new(&ratios, s.gamma_tilde, s.recoil_temperature)?;
    rec.push_number("decay_1", rates.decay(1), "1/s");
    rec.push_number("excite_1", rates.excite(1), "1/s");
    rec.push_number("mean_n", mean_n, "1");
    rec.push_number("ground_population", steady_state_ground(ratios.eta_c, ratios.xi), "1");
    rec.push_number(
        "temperature_report",
        temperature_equivalent(mean_n, s.omega_v, TemperatureConvention::Quanta),
        "K",
    );
    rec.push_number("temperature_limit", law.limit(), "K");
    rec.push_number("cooling_rate", law.rate, "1/s");
    rec.push_number("e_folding_time", law.e_folding_time(), "s");

    let n_delta0_g = r.n_delta0 * r.g_mod;
    let probe = scenario.probe_omega.unwrap_or(s.omega_v);
    let at_trap = lorentzian_cooling_rate(s.omega_v, n_delta0_g, gamma_c, &ratios, s.gamma_tilde)?;
    rec.push_number("probe_omega", probe, "rad/s");
    rec.push_number(
        "lorentzian_rate",
        lorentzian_cooling_rate(probe, n_delta0_g, gamma_c, &ratios, s.gamma_tilde)?,
        "1/s",
    );

    let pipeline = sideband_cooling_pipeline(&PipelineInputs {
        eta_c: ratios.eta_c,
        gamma_tilde: s.gamma_tilde,
        light_shift: s.light_shift,
        atom_number: s.atom_number,
        g_mod: r.g_mod,
        gamma_c,
        gamma_0: r.cavity.gamma_0,
        omega_l: s.omega_l,
        omega_v: s.omega_v,
        k: s.k,
        mass: s.mass,
        temperature: scenario.temperature,
    })?;
    rec.push_number("pipeline_rate", pipeline.rate, "1/s");
    rec.push_number("pipeline_residual", ((pipeline.rate - at_trap) / at_trap).abs(), "1");
    rec.push_number("pipeline_carrier_photons", pipeline.carrier_photons, "1");
    rec.push_number("epsilon", pipeline.epsilon, "1");

    let (alpha, eta) = r.pump_amplitude();
    let sidebands = if alpha.norm() == 0.0 {
        Sidebands {
            beta: Complex64::new(0.0, 0.0),
            gamma: Complex64::new(0.0, 0.0),
        }
    } else {
        sideband_amplitudes(alpha, r.n_delta0, pipeline.epsilon, r.cavity.delta_c, s.omega_v, r.g_mod, gamma_c)?
    };
    let power = |a: Complex64| traveling_wave_power(a, s.omega_l, r.cavity.gamma_0);
    rec.push_number("carrier_photons", alpha.norm_sqr(), "1");
    rec.push_number("pump_eta", eta.re, "1");
    rec.push_number("sideband_abs_beta", sidebands.beta.norm(), "1");
    rec.push_number("sideband_abs_gamma", sidebands.gamma.norm(), "1");
    rec.push_number("sideband_power_beta", power(sidebands.beta), "W");
    rec.push_number("sideband_power_gamma", power(sidebands.gamma), "W");
    rec.push_text(
        "roundtrip_length_dependent",
        "gamma_0,carrier_photons,pump_eta,sideband_abs_beta,sideband_abs_gamma,sideband_power_beta,sideband_power_gamma",
    );

    let warnings: Vec<String> = s
        .regime_warnings()
        .into_iter()
        .chain(RegimeWarning::check_classical(scenario.temperature, s.omega_v))
        .chain(RegimeWarning::check_modulation(pipeline.epsilon))
        .map(|w| w.to_string())
        .collect();
    rec.push_text("warnings", warnings.join("; "));

    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
    rec.push_number(TIMESTAMP_KEY, now, "s");
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::config::preset;
    use std::f64::consts::PI;

    #[test]
    fn atom_number_examples() {
        let omega_v = 2.0 * PI * 380e3;
        let n = solve_resonant_atom_number(omega_v, -1.0, 0.9).unwrap();
        assert!((n / 1.33e6 - 1.0).abs() < 0.01, "{n}");
        assert_eq!(solve_resonant_atom_number(2.0, -1.0, 1.0).unwrap(), 1.0);
        assert!(solve_resonant_atom_number(omega_v, 1.0, 0.9).is_err());
        assert!(solve_resonant_atom_number(omega_v, -1.0, 0.0).is_err());
        assert!(solve_resonant_atom_number(-omega_v, -1.0, 0.5).is_err());
    }

    #[test]
    fn inversion_recovers_trap_frequency() {
        let omega_v = 2.0 * PI * 380e3;
        let base = ResonanceVariables {
            omega_v,
            light_shift: -1.0,
            g_mod: 0.9,
            atom_number: f64::NAN,
        };
        let solved = solve_resonance(ResonanceUnknown::AtomNumber, base).unwrap();
        let back = solve_resonance(ResonanceUnknown::TrapFrequency, ResonanceVariables { omega_v: f64::NAN, ..solved })
            .unwrap();
        assert!(((back.omega_v - omega_v) / omega_v).abs() <= 1.0 / solved.atom_number);
        let g = solve_resonance(ResonanceUnknown::GMod, ResonanceVariables { g_mod: f64::NAN, ..back }).unwrap();
        assert!((g.g_mod - 0.9).abs() < 1e-12);
        let d = solve_resonance(ResonanceUnknown::LightShift, ResonanceVariables { light_shift: f64::NAN, ..back })
            .unwrap();
        assert!((d.light_shift + 1.0).abs() < 1e-12);
    }

    #[test]
    fn g_above_one_rejected() {
        let v = ResonanceVariables {
            omega_v: 1e6,
            light_shift: -1.0,
            g_mod: f64::NAN,
            atom_number: 10.0,
        };
        assert!(solve_resonance(ResonanceUnknown::GMod, v).is_err());
    }

    #[test]
    fn preset_record() {
        let s = Scenario::from_config(&preset("rb87-paper").unwrap()).unwrap();
        let rec = run_scenario(&s).unwrap();
        assert!(rec.get("pipeline_residual").unwrap() < 1e-6);
        for key in METRICS {
            assert!(rec.get(key).is_some(), "{key} missing");
        }
        let back = RunRecord::parse_line(&rec.to_line()).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn zero_power_leaves_kinetics_alone() {
        let mut cfg = preset("rb87-paper").unwrap();
        let a = run_scenario(&Scenario::from_config(&cfg).unwrap()).unwrap();
        cfg.apply_override("drive.power", "0").unwrap();
        let b = run_scenario(&Scenario::from_config(&cfg).unwrap()).unwrap();
        assert_eq!(b.get("carrier_photons"), Some(0.0));
        assert_eq!(b.get("sideband_power_beta"), Some(0.0));
        for key in ["mean_n", "cooling_rate", "pipeline_rate", "temperature_report"] {
            assert_eq!(a.get(key), b.get(key), "{key}");
        }
    }
}
