//! Physical inputs and the derived quantities every other module consumes.
//!
//! The mirror vibrates along the cavity axis at `omega_z` and twists about
//! it at `omega_phi`; both coordinates are kept dimensionless, scaled to
//! their zero-point amplitudes. The optomechanical coupling rates are
//!
//! ```text
//! g_z   = (ω_c/L)·√(ħ/(M ω_z))        (vibration)
//! g_φ   = (c·l/L)·√(ħ/(I ω_φ))        (rotation, I = M R²/2)
//! ```
//!
//! with `l` the orbital-angular-momentum charge of the driving
//! Laguerre-Gaussian mode. All frequencies in this crate are angular
//! (rad/s).

use serde::{Deserialize, Serialize};

use crate::constants::{C_LIGHT, HBAR, RESONANCE_WARN_TOL};
use crate::error::{Error, Result, Warning};

/// How the detuning input is interpreted.
///
/// `Feedback`: the value is the net detuning Δ, servo-locked independently
/// of the radiation-pressure shift (bistability suppressed).
/// `Fixed`: the value is the bare laser-cavity detuning δ = ω_c − ω_L; the
/// intracavity intensity then solves a cubic and may be bistable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetuningMode {
    Feedback,
    Fixed,
}

/// User-facing description of mirror, cavity, drive and bath, in SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Mirror mass M (kg).
    pub mass: f64,
    /// Mirror radius R (m).
    pub mirror_radius: f64,
    /// Vibrational angular frequency ω_z (rad/s).
    pub omega_z: f64,
    /// Rotational angular frequency ω_φ (rad/s).
    pub omega_phi: f64,
    /// Vibrational quality factor Q_z.
    pub q_z: f64,
    /// Rotational quality factor Q_φ.
    pub q_phi: f64,
    /// Orbital-angular-momentum charge l of the drive (positive integer).
    pub oam_charge: u64,
    /// Cavity length L (m).
    pub cavity_length: f64,
    /// Cavity finesse F.
    pub finesse: f64,
    /// Drive wavelength λ (m).
    pub wavelength: f64,
    /// Input power P_in (W).
    pub input_power: f64,
    /// Interpretation of `detuning_value`.
    pub detuning_mode: DetuningMode,
    /// Δ (feedback mode) or δ (fixed mode), rad/s.
    pub detuning_value: f64,
    /// Bath temperature T (K).
    pub temperature: f64,
}

impl Default for PhysicalParams {
    /// Default configuration: a 1 μg, 15 μm mirror on a 4 mm cavity of
    /// finesse 2.5e4 driven by 1 mW of l = 82 light at 812.7 nm, with
    /// megahertz mechanical modes of quality 1e6 and Δ = ω_φ.
    fn default() -> Self {
        let omega_mech = 2.0 * std::f64::consts::PI * 1e6;
        PhysicalParams {
            mass: 1e-9,
            mirror_radius: 15e-6,
            omega_z: omega_mech,
            omega_phi: omega_mech,
            q_z: 1e6,
            q_phi: 1e6,
            oam_charge: 82,
            cavity_length: 4e-3,
            finesse: 2.5e4,
            wavelength: 812.7e-9,
            input_power: 1e-3,
            detuning_mode: DetuningMode::Feedback,
            detuning_value: omega_mech,
            temperature: 1.0,
        }
    }
}

impl PhysicalParams {
    /// Checks every invariant; returns the first violation.
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.mass,
            self.mirror_radius,
            self.omega_z,
            self.omega_phi,
            self.q_z,
            self.q_phi,
            self.cavity_length,
            self.finesse,
            self.wavelength,
            self.input_power,
            self.detuning_value,
            self.temperature,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(
                "every physical value must be finite".into(),
            ));
        }
        let checks: [(&str, bool); 11] = [
            ("mass must be > 0", self.mass > 0.0),
            ("mirror_radius must be > 0", self.mirror_radius > 0.0),
            ("omega_z must be > 0", self.omega_z > 0.0),
            ("omega_phi must be > 0", self.omega_phi > 0.0),
            ("Q_z must be > 0", self.q_z > 0.0),
            ("Q_phi must be > 0", self.q_phi > 0.0),
            ("oam_charge must be >= 1", self.oam_charge >= 1),
            ("cavity_length must be > 0", self.cavity_length > 0.0),
            ("finesse must be > 1", self.finesse > 1.0),
            ("wavelength must be > 0", self.wavelength > 0.0),
            (
                "input_power and temperature must be >= 0",
                self.input_power >= 0.0 && self.temperature >= 0.0,
            ),
        ];
        for (msg, ok) in checks {
            if !ok {
                return Err(Error::InvalidParams(msg.to_string()));
            }
        }
        Ok(())
    }
}

/// Quantities computed once from [`PhysicalParams`] and consumed everywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams {
    /// Cavity mode frequency ω_c = 2πc/λ (rad/s).
    pub omega_c: f64,
    /// Longitudinal mode index n = round(2L/λ).
    pub mode_index: u64,
    /// Wave number k = 2π/λ (1/m).
    pub wave_number: f64,
    /// Moment of inertia I = M R²/2 (kg·m²).
    pub moment_of_inertia: f64,
    /// Opto-vibrational coupling g_z (1/s).
    pub g_z: f64,
    /// Opto-rotational coupling g_φ (1/s).
    pub g_phi: f64,
    /// Cavity energy decay rate γ = πc/(L·F) (1/s); the field amplitude
    /// damps at γ/2.
    pub gamma: f64,
    /// Vibrational damping γ_z = ω_z/Q_z (1/s).
    pub gamma_z: f64,
    /// Rotational damping γ_φ = ω_φ/Q_φ (1/s).
    pub gamma_phi: f64,
    /// Input field amplitude a_in = √(P_in/(ħω_c)) (√(photons/s)).
    pub input_amplitude: f64,
    /// Fractional resonance mismatch |L − n·λ/2|/L (reported, not fixed).
    pub resonance_error: f64,
    /// Vibrational frequency, copied through for downstream modules (rad/s).
    pub omega_z: f64,
    /// Rotational frequency, copied through (rad/s).
    pub omega_phi: f64,
}

/// Computes every derived quantity. Pure and deterministic.
///
/// Returns the derived set together with any non-fatal warnings (currently
/// only the cavity-resonance mismatch report).
pub fn derive_params(p: &PhysicalParams) -> Result<(DerivedParams, Vec<Warning>)> {
    p.validate()?;

    let omega_c = 2.0 * std::f64::consts::PI * C_LIGHT / p.wavelength;
    let mode_index = (2.0 * p.cavity_length / p.wavelength).round();
    if !(1.0..9.0e15).contains(&mode_index) {
        return Err(Error::InvalidParams(
            "cavity supports no longitudinal mode at this length/wavelength".into(),
        ));
    }
    let resonance_error =
        (p.cavity_length - mode_index * p.wavelength / 2.0).abs() / p.cavity_length;
    let moment_of_inertia = p.mass * p.mirror_radius * p.mirror_radius / 2.0;

    let d = DerivedParams {
        omega_c,
        mode_index: mode_index as u64,
        wave_number: 2.0 * std::f64::consts::PI / p.wavelength,
        moment_of_inertia,
        g_z: omega_c / p.cavity_length * (HBAR / (p.mass * p.omega_z)).sqrt(),
        g_phi: C_LIGHT * p.oam_charge as f64 / p.cavity_length
            * (HBAR / (moment_of_inertia * p.omega_phi)).sqrt(),
        gamma: std::f64::consts::PI * C_LIGHT / (p.cavity_length * p.finesse),
        gamma_z: p.omega_z / p.q_z,
        gamma_phi: p.omega_phi / p.q_phi,
        input_amplitude: (p.input_power / (HBAR * omega_c)).sqrt(),
        resonance_error,
        omega_z: p.omega_z,
        omega_phi: p.omega_phi,
    };

    let mut warnings = Vec::new();
    if resonance_error > RESONANCE_WARN_TOL {
        warnings.push(Warning::ResonanceMismatch {
            fractional_error: resonance_error,
            mode_index: d.mode_index,
        });
    }
    Ok((d, warnings))
}

/// Coupling ratio g_z/g_φ evaluated through its closed geometric form
/// (2π/(lλ))·√(I ω_φ / (M ω_z)).
///
/// Agrees with the quotient of the two couplings in [`DerivedParams`] to
/// machine precision; the redundancy is an internal consistency check.
pub fn coupling_ratio(d: &DerivedParams, p: &PhysicalParams) -> f64 {
    let _ = d; // same inputs, independent algebraic route
    2.0 * std::f64::consts::PI / (p.oam_charge as f64 * p.wavelength)
        * (p.mass * p.mirror_radius * p.mirror_radius / 2.0 * p.omega_phi / (p.mass * p.omega_z))
            .sqrt()
}
