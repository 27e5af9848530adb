use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use ringcool::kinetics::{
    evolve_populations, monte_carlo_ladder, steady_state_distribution, temperature_evolution, ClassicalCooling,
    LadderRates, LadderState, LadderStepper, TemperatureTrace, Truncation, TAIL_TOLERANCE,
};
use ringcool::scenario::{
    linspace, preset, run_fields, run_scenario, sweep as run_sweep, ResolvedScenario, Scenario, ScenarioConfig,
};
use ringcool::{Error, Result};

use crate::summary::{self, Summary};
use crate::Common;

pub const RECORD_FILE: &str = "run_records.txt";
pub const SUMMARY_FILE: &str = "summary.txt";
pub const LADDER_FILE: &str = "ladder.csv";
pub const TEMPERATURE_FILE: &str = "temperature.csv";
pub const SWEEP_FILE: &str = "sweep.csv";
pub const FIELDS_FILE: &str = "fields.csv";

/// Samples in the written temperature traces.
const TRACE_SAMPLES: usize = 201;

struct Loaded {
    config: ScenarioConfig,
    preset: Option<String>,
    applied: Vec<(String, String)>,
}

fn load(common: &Common) -> Result<Loaded> {
    let mut config = match (&common.preset, &common.config) {
        (Some(name), None) => preset(name)?,
        (None, Some(path)) => ScenarioConfig::load(path)?,
        (None, None) => return Err(Error::Config("give either --preset NAME or --config PATH".into())),
        (Some(_), Some(_)) => return Err(Error::Config("--preset and --config are exclusive".into())),
    };
    let mut applied = Vec::new();
    for raw in &common.overrides {
        let (key, value) = raw
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("override `{raw}` is not KEY=VALUE")))?;
        let (key, value) = (key.trim(), value.trim());
        config.apply_override(key, value)?;
        applied.push((key.to_string(), value.to_string()));
    }
    if let Some(seed) = common.seed {
        config.seed = seed;
        applied.push(("seed".into(), seed.to_string()));
    }
    Ok(Loaded {
        config,
        preset: common.preset.clone(),
        applied,
    })
}

fn out_dir(common: &Common) -> Result<&Path> {
    fs::create_dir_all(&common.out)
        .map_err(|e| Error::Io(format!("cannot create output directory {}: {e}", common.out.display())))?;
    Ok(&common.out)
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    File::create(&path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(summary: &Summary, dir: &Path, quiet: bool) -> Result<()> {
    let text = summary.to_string();
    let mut file = create(dir, SUMMARY_FILE)?;
    file.write_all(text.as_bytes())?;
    file.flush()?;
    if !quiet {
        print!("{text}");
    }
    Ok(())
}

pub fn scenario(common: &Common, quiet: bool) -> Result<()> {
    let loaded = load(common)?;
    let scenario = Scenario::from_config(&loaded.config)?;
    let record = run_scenario(&scenario)?;
    let resolved = ResolvedScenario::new(&scenario)?;

    let dir = out_dir(common)?;
    record.append_to(&dir.join(RECORD_FILE))?;

    let ratios = resolved.ratios;
    let ladder = steady_state_distribution(ratios.eta_c, ratios.xi, &Truncation::default())?;
    ladder.write_csv(create(dir, LADDER_FILE)?)?;

    let s = &resolved.species;
    let law = ClassicalCooling::new(&ratios, s.gamma_tilde, s.recoil_temperature)?;
    let span = 5.0 * law.e_folding_time();
    let classical = temperature_evolution(
        scenario.temperature,
        &ratios,
        s.gamma_tilde,
        s.recoil_temperature,
        span,
        TRACE_SAMPLES,
    )?;
    TemperatureTrace::write_all(&[classical], create(dir, TEMPERATURE_FILE)?)?;

    let mut summary = Summary::new(&loaded.config, &loaded.applied);
    summary.record(&record, loaded.preset.as_deref());
    summary.files(dir, &[RECORD_FILE, LADDER_FILE, TEMPERATURE_FILE]);
    emit(&summary, dir, quiet)
}

fn parse_range(range: &str) -> Result<Vec<f64>> {
    let bad = || Error::Config(format!("range `{range}` is not START:STOP:COUNT"));
    let parts: Vec<&str> = range.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(bad());
    };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    Ok(linspace(start, stop, count))
}

pub fn sweep(
    common: &Common,
    axis: &str,
    range: Option<&str>,
    values: Option<Vec<f64>>,
    metrics: &[String],
    jobs: Option<usize>,
    quiet: bool,
) -> Result<()> {
    let loaded = load(common)?;
    let values = match (range, values) {
        (Some(r), _) => parse_range(r)?,
        (None, Some(v)) => v,
        (None, None) => return Err(Error::Config("give --range or --values".into())),
    };
    if jobs == Some(0) {
        return Err(Error::Config("--jobs must be at least 1".into()));
    }
    let table = run_sweep(&loaded.config, axis, &values, metrics, jobs)?;
    let dir = out_dir(common)?;
    table.write_csv(create(dir, SWEEP_FILE)?)?;

    let mut summary = Summary::new(&loaded.config, &loaded.applied);
    summary.line(format!("sweep: {axis} over {} values", values.len()));
    for m in metrics {
        let col = table.column(m).expect("metric in table");
        let (i, best) = col
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        summary.line(format!(
            "max {m}: {} at {axis} = {}",
            summary::fmt(best),
            summary::fmt(table.values[i])
        ));
    }
    summary.files(dir, &[SWEEP_FILE]);
    emit(&summary, dir, quiet)
}

pub fn fields(common: &Common, quiet: bool) -> Result<()> {
    let loaded = load(common)?;
    let scenario = Scenario::from_config(&loaded.config)?;
    let run = run_fields(&scenario)?;
    let dir = out_dir(common)?;
    run.series.write_csv(create(dir, FIELDS_FILE)?)?;

    let mut summary = Summary::new(&loaded.config, &loaded.applied);
    summary.fields(&run);
    summary.files(dir, &[FIELDS_FILE]);
    emit(&summary, dir, quiet)
}

pub fn kinetics(
    common: &Common,
    span: Option<f64>,
    dt: Option<f64>,
    n0: Option<usize>,
    trials: usize,
    quiet: bool,
) -> Result<()> {
    let loaded = load(common)?;
    let scenario = Scenario::from_config(&loaded.config)?;
    let resolved = ResolvedScenario::new(&scenario)?;
    let s = &resolved.species;
    let ratios = resolved.ratios;
    let rates = LadderRates::new(ratios, s.gamma_tilde)?;
    let law = ClassicalCooling::new(&ratios, s.gamma_tilde, s.recoil_temperature)?;
    let span = span.unwrap_or(5.0 * law.e_folding_time());
    let dt = dt.unwrap_or(span / (TRACE_SAMPLES - 1) as f64);
    if trials > 0 && n0.is_none() {
        return Err(Error::Config("--trials needs a definite start level; give --n0".into()));
    }

    let thermal_n = ringcool::constants::K_B * scenario.temperature / (ringcool::constants::HBAR * s.omega_v);
    let initial = match n0 {
        Some(n) => LadderState::pure(n, (8 * n + 50).max(Truncation::default().n_max))?,
        None => LadderState::thermal_auto(thermal_n, &Truncation::default())?,
    };
    let trajectory = evolve_populations(&initial, &rates, span, dt, LadderStepper::Exact, TAIL_TOLERANCE)?;
    let dir = out_dir(common)?;
    trajectory.last().write_csv(create(dir, LADDER_FILE)?)?;

    let ladder_trace = TemperatureTrace::from_ladder(&trajectory, s.omega_v);
    let start_t = ladder_trace.temperatures[0];
    let mut traces = vec![ladder_trace];
    if start_t > 0.0 {
        traces.push(temperature_evolution(
            start_t,
            &ratios,
            s.gamma_tilde,
            s.recoil_temperature,
            span,
            TRACE_SAMPLES,
        )?);
    }
    TemperatureTrace::write_all(&traces, create(dir, TEMPERATURE_FILE)?)?;

    let mut summary = Summary::new(&loaded.config, &loaded.applied);
    summary.kinetics(&initial, &trajectory, &rates, span);
    if trials > 0 {
        let stats = monte_carlo_ladder(n0.expect("checked above"), &rates, span, loaded.config.seed, trials)?;
        summary.monte_carlo(&stats, trajectory.last().mean_n());
    }
    summary.files(dir, &[LADDER_FILE, TEMPERATURE_FILE]);
    emit(&summary, dir, quiet)
}
