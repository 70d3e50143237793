//! Classical working point of the driven cavity-mirror system.
//!
//! The mean intracavity amplitude obeys
//!
//! ```text
//! a_s = √γ·a_in / √((γ/2)² + (δ − a_s²·G)²),    G = g_z²/ω_z + g_φ²/ω_φ
//! ```
//!
//! In feedback mode the net detuning Δ = δ − a_s²G is servo-locked, the
//! equation closes in one line and bistability is suppressed. In fixed
//! mode the photon number n = a_s² solves a cubic that can have one or
//! three positive roots.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::DerivedParams;

/// Relative residual bound the cubic roots must satisfy.
pub const CUBIC_RESIDUAL_TOL: f64 = 1e-10;

/// Classical working point with the phase of the input chosen so that
/// `a_s` is real and non-negative.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteadyState {
    /// Intracavity amplitude a_s (√photons, real ≥ 0).
    pub amplitude: f64,
    /// Intracavity photon number a_s².
    pub photon_number: f64,
    /// Static vibrational displacement z_s = g_z·a_s²/ω_z (dimensionless).
    pub z_s: f64,
    /// Static angular deflection φ_s = −g_φ·a_s²/ω_φ (dimensionless).
    pub phi_s: f64,
    /// Static vibrational momentum (exactly zero).
    pub p_z_s: f64,
    /// Static angular momentum (exactly zero).
    pub l_z_s: f64,
    /// Effective (net) detuning Δ (rad/s).
    pub detuning: f64,
    /// Radiation-pressure shift coefficient G = g_z²/ω_z + g_φ²/ω_φ (rad/s).
    pub shift_coefficient: f64,
}

/// One root of the fixed-detuning cubic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BistabilityBranch {
    /// Intracavity photon number on this branch.
    pub photon_number: f64,
    /// 1-based index in ascending photon-number order.
    pub branch_index: u8,
    /// Slope-criterion stability (dn/dP_in > 0). With three roots the
    /// middle one is unstable.
    pub stable: bool,
}

fn shift_coefficient(d: &DerivedParams) -> f64 {
    d.g_z * d.g_z / d.omega_z + d.g_phi * d.g_phi / d.omega_phi
}

fn populate(d: &DerivedParams, photon_number: f64, detuning: f64) -> SteadyState {
    SteadyState {
        amplitude: photon_number.sqrt(),
        photon_number,
        z_s: d.g_z * photon_number / d.omega_z,
        phi_s: -d.g_phi * photon_number / d.omega_phi,
        p_z_s: 0.0,
        l_z_s: 0.0,
        detuning,
        shift_coefficient: shift_coefficient(d),
    }
}

/// Working point at servo-locked net detuning Δ (closed form).
pub fn steady_state_feedback(d: &DerivedParams, delta: f64) -> SteadyState {
    let n =
        d.gamma * d.input_amplitude * d.input_amplitude / (d.gamma * d.gamma / 4.0 + delta * delta);
    populate(d, n, delta)
}

/// All real positive photon-number roots of the fixed-detuning cubic
///
/// ```text
/// n·[(γ/2)² + (δ − n·G)²] = γ·a_in²
/// ```
///
/// sorted ascending; with three roots the middle one carries
/// `stable = false`. Each root is Newton-polished until its residual
/// relative to γ·a_in² is below 1e-10.
pub fn steady_state_fixed_detuning(
    d: &DerivedParams,
    delta: f64,
) -> Result<Vec<BistabilityBranch>> {
    let g = shift_coefficient(d);
    let gamma_sq4 = d.gamma * d.gamma / 4.0;
    let rhs = d.gamma * d.input_amplitude * d.input_amplitude;

    if rhs == 0.0 {
        return Ok(vec![BistabilityBranch {
            photon_number: 0.0,
            branch_index: 1,
            stable: true,
        }]);
    }

    // cubic in n: G²·n³ − 2δG·n² + ((γ/2)² + δ²)·n − γa_in² = 0
    let roots = if g == 0.0 {
        vec![rhs / (gamma_sq4 + delta * delta)]
    } else {
        let c2 = -2.0 * delta / g; // coefficients of the monic cubic
        let c1 = (gamma_sq4 + delta * delta) / (g * g);
        let c0 = -rhs / (g * g);
        companion_real_roots(c2, c1, c0)
    };

    let f = |n: f64| {
        let det = delta - n * g;
        n * (gamma_sq4 + det * det) - rhs
    };
    let fp = |n: f64| {
        let det = delta - n * g;
        gamma_sq4 + det * det - 2.0 * n * g * det
    };

    let mut polished: Vec<f64> = Vec::new();
    for r in roots {
        if r <= 0.0 {
            continue;
        }
        let mut n = r;
        let mut ok = false;
        for _ in 0..100 {
            let res = f(n);
            if res.abs() <= CUBIC_RESIDUAL_TOL * rhs {
                ok = true;
                break;
            }
            let deriv = fp(n);
            if deriv == 0.0 || !deriv.is_finite() {
                break;
            }
            n -= res / deriv;
        }
        if !ok || !n.is_finite() || n <= 0.0 {
            return Err(Error::NumericalFailure(format!(
                "cubic root polish did not converge (coefficients: G={g:e}, delta={delta:e}, \
                 gamma={:e}, rhs={rhs:e}; raw root {r:e})",
                d.gamma
            )));
        }
        // drop duplicates that polished into an already-found root
        if !polished.iter().any(|&m| (m - n).abs() <= 1e-9 * n.max(m)) {
            polished.push(n);
        }
    }
    polished.sort_by(|a, b| a.partial_cmp(b).unwrap());

    if polished.is_empty() {
        return Err(Error::NumericalFailure(
            "fixed-detuning cubic produced no positive root".into(),
        ));
    }

    let three = polished.len() == 3;
    Ok(polished
        .iter()
        .enumerate()
        .map(|(i, &n)| BistabilityBranch {
            photon_number: n,
            branch_index: (i + 1) as u8,
            // slope criterion: on the middle branch dP_in/dn < 0
            stable: !(three && i == 1),
        })
        .collect())
}

/// Working point on a chosen fixed-detuning branch, with the net detuning
/// Δ = δ − n·G it implies. Feedback and fixed modes agree through this
/// when the root is unique.
pub fn steady_state_from_branch(
    d: &DerivedParams,
    delta_bare: f64,
    branch: &BistabilityBranch,
) -> SteadyState {
    let g = shift_coefficient(d);
    populate(
        d,
        branch.photon_number,
        delta_bare - branch.photon_number * g,
    )
}

/// Real roots of the monic cubic x³ + c2·x² + c1·x + c0 via companion-matrix
/// eigenvalues (callers polish them afterwards).
fn companion_real_roots(c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let companion = DMatrix::from_row_slice(3, 3, &[0.0, 0.0, -c0, 1.0, 0.0, -c1, 0.0, 1.0, -c2]);
    companion
        .complex_eigenvalues()
        .iter()
        .filter(|ev| ev.im.abs() < 1e-6 * ev.re.abs().max(1.0))
        .map(|ev| ev.re)
        .collect()
}
