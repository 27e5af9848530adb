//! Scenario configuration, resonance solving, run records and sweeps.

mod config;
mod fields;
mod record;
mod run;
mod sweep;

pub use config::{
    preset, preset_targets, si_snapshot, to_si, CavityConfig, Dimension, DriveConfig, EnsembleConfig, FieldsConfig, Quantity,
    ResonanceUnknown, ScenarioConfig, SidebandConfig, SpeciesConfig, StatedTarget, PRESETS,
};
pub use fields::{run_fields, FieldsRun};
pub use record::{RecordValue, RunRecord, TIMESTAMP_KEY};
pub use run::{
    run_scenario, solve_resonance, solve_resonant_atom_number, ResolvedScenario, ResonanceVariables, Scenario,
    METRICS,
};
pub use sweep::{linspace, sweep, sweep_axes, SweepTable};
