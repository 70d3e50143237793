//! Fixed physical constants (exact SI/CODATA values).

/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054571817e-34;

/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380649e-23;

/// Speed of light in vacuum (m/s).
pub const C_LIGHT: f64 = 2.99792458e8;

/// Fractional cavity-resonance mismatch |L - n·λ/2|/L above which a
/// warning is reported (non-fatal).
pub const RESONANCE_WARN_TOL: f64 = 1e-4;
