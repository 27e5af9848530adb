//! Vibrational-ladder kinetics and temperature dynamics.

mod jump;
mod ladder;
mod rates;
mod temperature;

/// Explicit stepping requires `dt * max exit rate` below this bound.
pub const STABILITY_BOUND: f64 = 0.1;

pub use jump::{jump_trajectory, monte_carlo_ladder, BirthDeath, JumpStatistics};
pub use ladder::{
    energy_flux, evolve_populations, generator, max_exit_rate, steady_state_distribution, steady_state_ground,
    steady_state_mean, temperature_equivalent, LadderState, LadderStepper, LadderTrajectory, TemperatureConvention,
    Truncation, TAIL_TOLERANCE,
};
pub use rates::{ladder_rates, successive_ratio, LadderRates};
pub use temperature::{
    lorentzian_cooling_rate, lorentzian_profile, lorentzian_trace, sideband_asymmetry, temperature_evolution,
    ClassicalCooling, TemperatureTrace, TraceModel,
};
