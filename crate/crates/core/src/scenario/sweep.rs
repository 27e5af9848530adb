use std::io::Write;

use rayon::prelude::*;

use super::config::ScenarioConfig;
use super::run::{run_scenario, Scenario, METRICS};
use crate::error::{Error, Result};

/// One row per axis value, one column per metric.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub axis: String,
    pub metrics: Vec<String>,
    pub values: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn column(&self, metric: &str) -> Option<Vec<f64>> {
        let j = self.metrics.iter().position(|m| m == metric)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// Header is the axis name followed by the metric names.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(std::iter::once(&self.axis).chain(&self.metrics))?;
        for (v, row) in self.values.iter().zip(&self.rows) {
            w.write_record(std::iter::once(v).chain(row).map(|x| x.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Quantity keys a sweep may vary.
pub fn sweep_axes(config: &ScenarioConfig) -> Vec<String> {
    config
        .valid_keys()
        .into_iter()
        .filter(|k| config.quantity(k).is_some() || k == "sideband.omega")
        .collect()
}

/// Runs the scenario once per axis value, in the axis key's configured
/// unit. Rows are independent, so `jobs` only affects wall time.
pub fn sweep(
    config: &ScenarioConfig,
    axis: &str,
    values: &[f64],
    metrics: &[String],
    jobs: Option<usize>,
) -> Result<SweepTable> {
    let axes = sweep_axes(config);
    if !axes.iter().any(|a| a == axis) {
        return Err(Error::Config(format!(
            "unknown sweep axis `{axis}`; valid axes: {}",
            axes.join(", ")
        )));
    }
    if metrics.is_empty() {
        return Err(Error::Config(format!("no metrics requested; valid metrics: {}", METRICS.join(", "))));
    }
    if let Some(bad) = metrics.iter().find(|m| !METRICS.contains(&m.as_str())) {
        return Err(Error::Config(format!(
            "unknown metric `{bad}`; valid metrics: {}",
            METRICS.join(", ")
        )));
    }
    if values.is_empty() {
        return Err(Error::Config("sweep range is empty".into()));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Config(format!("sweep value {v} is not finite")));
    }

    let row = |v: &f64| -> Result<Vec<f64>> {
        let mut cfg = config.clone();
        cfg.apply_override(axis, &v.to_string())?;
        let rec = run_scenario(&Scenario::from_config(&cfg)?)?;
        Ok(metrics
            .iter()
            .map(|m| rec.get(m).expect("metric list matches record keys"))
            .collect())
    };
    let rows = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(|| values.par_iter().map(row).collect::<Result<Vec<_>>>())?,
        None => values.par_iter().map(row).collect::<Result<Vec<_>>>()?,
    };
    Ok(SweepTable {
        axis: axis.to_string(),
        metrics: metrics.to_vec(),
        values: values.to_vec(),
        rows,
    })
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count).map(|i| start + step * i as f64).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::config::preset;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn unknown_names_are_config_errors() {
        let cfg = preset("rb87-paper").unwrap();
        let e = sweep(&cfg, "cavity.nope", &[1.0], &names(&["mean_n"]), None).unwrap_err();
        assert!(e.is_config() && e.to_string().contains("cavity.finesse"));
        let e = sweep(&cfg, "cavity.finesse", &[1.0], &names(&["nope"]), None).unwrap_err();
        assert!(e.is_config() && e.to_string().contains("mean_n"));
        assert!(sweep(&cfg, "cavity.finesse", &[], &names(&["mean_n"]), None).unwrap_err().is_config());
        assert!(sweep(&cfg, "seed", &[1.0], &names(&["mean_n"]), None).unwrap_err().is_config());
    }

    #[test]
    fn linspace_endpoints() {
        assert_eq!(linspace(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
        assert!(linspace(1.0, 2.0, 0).is_empty());
    }
}
