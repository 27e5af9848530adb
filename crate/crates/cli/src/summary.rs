//! Human-readable run summaries.

use std::fmt;
use std::path::Path;

use ringcool::kinetics::{JumpStatistics, LadderRates, LadderState, LadderTrajectory};
use ringcool::scenario::{preset_targets, FieldsRun, RunRecord, ScenarioConfig};

/// Record keys shown in the scenario summary, in order.
const SHOWN: &[&str] = &[
    "eta_c",
    "eta_ld",
    "xi",
    "gamma_tilde",
    "omega_r",
    "omega_v",
    "recoil_temperature",
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
    "pipeline_carrier_photons",
    "carrier_photons",
    "sideband_power_beta",
    "sideband_power_gamma",
];

/// Four significant digits; scientific notation outside `[1e-3, 1e5)`.
pub fn fmt(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..5).contains(&mag) {
        format!("{:.*}", (3 - mag).max(0) as usize, x)
    } else {
        format!("{x:.3e}")
    }
}

fn fmt_complex(z: num_complex::Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", fmt(z.re), fmt(z.im.abs()))
}

#[derive(Debug, Default)]
pub struct Summary {
    lines: Vec<String>,
}

impl Summary {
    pub fn new(config: &ScenarioConfig, applied: &[(String, String)]) -> Self {
        let mut s = Self::default();
        s.line(format!(
            "scenario: {} (solve_for {}, seed {})",
            config.label, config.solve_for, config.seed
        ));
        for (k, v) in applied {
            s.line(format!("override: {k}={v}"));
        }
        s
    }

    pub fn line(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn record(&mut self, record: &RunRecord, preset: Option<&str>) {
        let targets = preset.map(preset_targets).unwrap_or_default();
        for key in SHOWN {
            let (Some(v), Some(unit)) = (record.get(key), record.unit(key)) else {
                continue;
            };
            let unit = if unit == "1" { String::new() } else { format!(" {unit}") };
            let mut line = format!("{key}: {}{unit}", fmt(v));
            if let Some(t) = targets.iter().find(|t| t.key == *key) {
                line.push_str(&format!("    [stated: {}]", t.text));
            }
            self.line(line);
        }
        if let Some(keys) = record.text("roundtrip_length_dependent") {
            self.line(format!("depends on round-trip length: {keys}"));
        }
        match record.text("warnings") {
            Some(w) if !w.is_empty() => self.line(format!("warnings: {w}")),
            _ => self.line("warnings: none".into()),
        }
    }

    pub fn fields(&mut self, run: &FieldsRun) {
        let d = &run.demodulated;
        self.line(format!("trajectory: {}", run.trajectory));
        self.line(format!("omega: {} rad/s", fmt(run.omega)));
        self.line(format!("samples: {} (dt {} s)", run.series.len(), fmt(run.series.dt)));
        self.line(format!("transient: {} s, periods analysed: {}", fmt(run.transient), d.periods));
        self.line(format!("carrier: {}", fmt_complex(d.carrier)));
        self.line(format!("carrier_analytic: {}", fmt_complex(run.analytic_carrier)));
        self.line(format!("beta: {}", fmt_complex(d.beta)));
        self.line(format!("beta_analytic: {}", fmt_complex(run.analytic_beta)));
        self.line(format!("gamma: {}", fmt_complex(d.gamma)));
        self.line(format!("gamma_analytic: {}", fmt_complex(run.analytic_gamma)));
        self.line(format!("carrier_residual: {}", fmt(run.carrier_residual())));
        self.line(format!("sideband_residual: {}", fmt(run.sideband_residual())));
    }

    pub fn kinetics(&mut self, initial: &LadderState, trajectory: &LadderTrajectory, rates: &LadderRates, span: f64) {
        let last = trajectory.last();
        let r = rates.successive_ratio();
        self.line(format!("span: {} s, samples: {}", fmt(span), trajectory.times.len()));
        self.line(format!("n_max: {}", initial.n_max()));
        self.line(format!("mean_n_initial: {}", fmt(initial.mean_n())));
        self.line(format!("mean_n_final: {}", fmt(last.mean_n())));
        self.line(format!("ground_population_final: {}", fmt(last.ground_population())));
        self.line(format!("mean_n_stationary: {}", fmt(r / (1.0 - r))));
        self.line(format!("normalization_drift: {:e}", (last.total() - initial.total()).abs()));
    }

    pub fn monte_carlo(&mut self, stats: &JumpStatistics, master_mean: f64) {
        let se = stats.standard_error();
        self.line(format!("trials: {}", stats.terminal.len()));
        self.line(format!("mean_n_monte_carlo: {} +- {}", fmt(stats.mean), fmt(se)));
        if se > 0.0 {
            self.line(format!(
                "monte_carlo_deviation: {} standard errors",
                fmt((stats.mean - master_mean).abs() / se)
            ));
        }
    }

    pub fn files(&mut self, dir: &Path, names: &[&str]) {
        for n in names {
            self.line(format!("wrote: {}", dir.join(n).display()));
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}
