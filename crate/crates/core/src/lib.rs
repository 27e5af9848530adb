//! Semiclassical model of collective sideband cooling in a bidirectionally
//! pumped ring cavity.
//!
//! Atoms trapped in the intracavity standing wave back-scatter light between
//! the two traveling-wave modes and split the cavity resonance. The unpumped
//! half of the doublet is tuned onto the anti-Stokes sideband of the trapped
//! motion, so inelastic scattering removes vibrational quanta.
//!
//! * [`params`] and [`localization`]: inputs, derived ratios, the order parameter `g`.
//! * [`modes`]: coupled-mode field equations and their sideband response.
//! * [`kinetics`]: vibrational-ladder rates, master equation, temperature laws.
//! * [`scenario`]: self-consistent design runs, sweeps and run records.

pub mod constants;
pub mod error;
pub mod kinetics;
pub mod localization;
pub mod modes;
pub mod params;
pub mod regime;
pub mod scenario;

pub use error::{Error, Result};
