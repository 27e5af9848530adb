//! Coupled-mode field dynamics of the ring cavity.
//!
//! Field amplitudes are in units of the field per photon, so `|alpha|^2`
//! is the intracavity photon number of one traveling wave.

mod demod;
mod flux;
mod integrate;
mod matrix;
mod response;

pub use demod::{default_transient, demodulate_sidebands, Demodulated, DEFAULT_TRANSIENT_DECAY_TIMES, MIN_PERIODS};
pub use flux::{
    carrier_photons_for_scattering, sideband_cooling_pipeline, sideband_power_flux, traveling_wave_power,
    PipelineInputs, PipelineResult,
};
pub use integrate::{integrate_modes, FieldState, FieldTimeSeries, GTrajectory, STABILITY_BOUND};
pub use matrix::{Mat2, ModeMatrix, Vec2};
pub use response::{find_splitting_resonance, sideband_amplitudes, steady_state_carrier, Sidebands, SplittingResonance};
