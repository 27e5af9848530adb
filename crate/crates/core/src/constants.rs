//! Physical constants (CODATA 2018 exact or recommended values) in SI units.

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;

/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;

/// Angular-distribution factor for scattering into free-space modes
/// relative to scattering along the cavity axis.
pub const FREE_SPACE_GEOMETRY: f64 = 2.0 / 5.0;

/// Atomic mass of ⁸⁷Rb, kg.
pub const RB87_MASS: f64 = 1.443_16e-25;

/// ⁸⁷Rb D2 line vacuum wavelength, m.
pub const RB87_D2_WAVELENGTH: f64 = 780.24e-9;

/// ⁸⁷Rb D2 natural linewidth, rad/s (2π · 6.07 MHz).
pub const RB87_D2_LINEWIDTH: f64 = 2.0 * std::f64::consts::PI * 6.07e6;
