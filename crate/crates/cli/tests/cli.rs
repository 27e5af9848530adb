use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ringcool::scenario::RunRecord;

fn ringcool(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringcool"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Value of `key: number ...` in a summary.
fn summary_value(text: &str, key: &str) -> f64 {
    let prefix = format!("{key}: ");
    let line = text
        .lines()
        .find(|l| l.starts_with(&prefix))
        .unwrap_or_else(|| panic!("no `{key}` in summary:\n{text}"));
    line[prefix.len()..].split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn preset_scenario_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(&["scenario", "--preset", "rb87-paper"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("mean_n: 0.6"), "{text}");
    assert!(text.contains("[stated:"), "{text}");
    assert_eq!(fs::read_to_string(dir.path().join("summary.txt")).unwrap(), text);
    for f in ["run_records.txt", "ladder.csv", "temperature.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let records = RunRecord::read_all(&dir.path().join("run_records.txt")).unwrap();
    assert_eq!(records.len(), 1);
    assert!(records[0].get("pipeline_residual").unwrap() < 1e-6);
}

#[test]
fn quiet_prints_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(&["-q", "scenario", "--preset", "rb87-paper"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(dir.path().join("summary.txt").exists());
}

#[test]
fn repeated_runs_differ_only_in_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    for _ in 0..2 {
        let o = ringcool(&["-q", "scenario", "--preset", "rb87-paper"], dir.path());
        assert_eq!(o.status.code(), Some(0));
    }
    let records = RunRecord::read_all(&dir.path().join("run_records.txt")).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0].without_timestamp().to_line(), records[1].without_timestamp().to_line());
}

#[test]
fn config_file_matches_preset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scenario.json");
    fs::write(&path, ringcool::scenario::preset("rb87-paper").unwrap().to_json()).unwrap();
    let a = ringcool(&["-q", "scenario", "--preset", "rb87-paper"], &dir.path().join("a"));
    let b = ringcool(&["-q", "scenario", "--config", path.to_str().unwrap()], &dir.path().join("b"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0), "{}", stderr(&b));
    let ra = RunRecord::read_all(&dir.path().join("a/run_records.txt")).unwrap();
    let rb = RunRecord::read_all(&dir.path().join("b/run_records.txt")).unwrap();
    assert_eq!(ra[0].without_timestamp(), rb[0].without_timestamp());
}

#[test]
fn vanishing_order_parameter_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(&["scenario", "--preset", "rb87-paper", "--set", "ensemble.g_mod=0"], dir.path());
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn unknown_key_exits_two_and_lists_keys() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(&["scenario", "--preset", "rb87-paper", "--set", "ensemble.bogus=1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("ensemble.g_mod") && err.contains("cavity.finesse"), "{err}");
}

#[test]
fn last_override_wins() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(
        &[
            "scenario",
            "--preset",
            "rb87-paper",
            "--set",
            "ensemble.g_mod=0.3",
            "--set",
            "ensemble.g_mod=0.6",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(summary_value(&stdout(&o), "g_mod"), 0.6);
}

#[test]
fn empty_sweep_range_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(
        &["sweep", "--preset", "rb87-paper", "--axis", "ensemble.g_mod", "--range", "0.3:0.9:0", "--metrics", "mean_n"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn sweep_output_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |jobs: &str, sub: &str| {
        let out = dir.path().join(sub);
        let o = ringcool(
            &[
                "-q",
                "sweep",
                "--preset",
                "rb87-paper",
                "--axis",
                "ensemble.g_mod",
                "--range",
                "0.3:0.9:13",
                "--metrics",
                "atom_number,mean_n,lorentzian_rate",
                "--jobs",
                jobs,
            ],
            &out,
        );
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        fs::read(out.join("sweep.csv")).unwrap()
    };
    let one = run("1", "one");
    assert_eq!(one, run("8", "eight"));
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with("ensemble.g_mod,atom_number,mean_n,lorentzian_rate"), "{text}");
    assert_eq!(text.lines().count(), 14);
}

#[test]
fn sideband_sweep_peaks_at_resonance() {
    let dir = tempfile::tempdir().unwrap();
    let base = ringcool(&["-q", "scenario", "--preset", "rb87-paper"], &dir.path().join("base"));
    assert_eq!(base.status.code(), Some(0));
    let rec = &RunRecord::read_all(&dir.path().join("base/run_records.txt")).unwrap()[0];
    let omega_res = rec.get("omega_res").unwrap();
    let (lo, hi, count) = (0.5 * omega_res, 1.5 * omega_res, 101);
    let range = format!("{lo}:{hi}:{count}");
    let o = ringcool(
        &["-q", "sweep", "--preset", "rb87-paper", "--axis", "sideband.omega", "--range", &range, "--metrics", "lorentzian_rate"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let rows: Vec<(f64, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    let best = rows.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
    let step = (hi - lo) / (count - 1) as f64;
    assert!((best - omega_res).abs() <= step, "{best} vs {omega_res}");
}

#[test]
fn fields_without_modulation_hold_the_carrier() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(&["fields", "--preset", "rb87-paper", "--set", "fields.epsilon=0"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(summary_value(&text, "carrier_residual") < 1e-9, "{text}");
    assert!(dir.path().join("fields.csv").exists());
}

#[test]
fn modulated_fields_match_analytic_sidebands() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(&["fields", "--preset", "rb87-paper"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(summary_value(&stdout(&o), "sideband_residual") < 0.01);
}

#[test]
fn oversized_field_step_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(&["fields", "--preset", "rb87-paper", "--set", "fields.dt=1 us"], dir.path());
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn kinetics_monte_carlo_agrees_with_master_equation() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(
        &["kinetics", "--preset", "rb87-paper", "--n0", "10", "--span", "0.004", "--trials", "4000"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(summary_value(&text, "monte_carlo_deviation") < 3.0, "{text}");
    assert!(summary_value(&text, "normalization_drift") < 1e-12, "{text}");
    for f in ["ladder.csv", "temperature.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn trials_without_start_level_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = ringcool(&["kinetics", "--preset", "rb87-paper", "--trials", "10"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
