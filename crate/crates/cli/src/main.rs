use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod summary;

#[derive(Debug, Parser)]
#[command(name = "ringcool", version, about = "Collective sideband cooling in a ring cavity")]
struct Cli {
    /// Only print errors.
    #[arg(long, short, global = true, conflicts_with = "verbose")]
    quiet: bool,
    /// Print progress and diagnostics.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Built-in scenario (`rb87-paper`).
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// Scenario file (JSON).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Override a config key, e.g. `--set ensemble.g_mod=0.5` or
    /// `--set drive.trap_depth="0.5 mK"`. Repeatable; last write wins.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    /// Random seed; replaces the config's seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the resonance and write a run record, ladder and temperature CSVs.
    Scenario {
        #[command(flatten)]
        common: Common,
    },
    /// Run the scenario over a range of one config key and tabulate metrics.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Config key to vary, e.g. `sideband.omega`.
        #[arg(long)]
        axis: String,
        /// `START:STOP:COUNT`, in the axis key's unit.
        #[arg(long, conflicts_with = "values", required_unless_present = "values")]
        range: Option<String>,
        /// Comma-separated list of axis values.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        /// Comma-separated record keys to tabulate.
        #[arg(long, value_delimiter = ',', required = true)]
        metrics: Vec<String>,
        /// Worker threads for sweep rows.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Integrate the two-mode field equations and demodulate the sidebands.
    Fields {
        #[command(flatten)]
        common: Common,
    },
    /// Evolve the vibrational ladder, optionally with Monte Carlo trials.
    Kinetics {
        #[command(flatten)]
        common: Common,
        /// Evolution time in seconds; defaults to five 1/e times.
        #[arg(long)]
        span: Option<f64>,
        /// Sampling interval in seconds; defaults to span/200.
        #[arg(long)]
        dt: Option<f64>,
        /// Start in level n0 instead of the thermal state at the ensemble temperature.
        #[arg(long)]
        n0: Option<usize>,
        /// Monte Carlo trials from n0 (requires --n0).
        #[arg(long, default_value_t = 0)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet {
        log::LevelFilter::Error
    } else if cli.verbose {
        log::LevelFilter::Debug
    } else {
        log::LevelFilter::Warn
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();

    let result = match cli.command {
        Command::Scenario { common } => commands::scenario(&common, cli.quiet),
        Command::Sweep {
            common,
            axis,
            range,
            values,
            metrics,
            jobs,
        } => commands::sweep(&common, &axis, range.as_deref(), values, &metrics, jobs, cli.quiet),
        Command::Fields { common } => commands::fields(&common, cli.quiet),
        Command::Kinetics {
            common,
            span,
            dt,
            n0,
            trials,
        } => commands::kinetics(&common, span, dt, n0, trials, cli.quiet),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 1 })
        }
    }
}
