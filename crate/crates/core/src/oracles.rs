//! Independent verification machinery used by the test suite and the
//! hidden `selfcheck` subcommand.
//!
//! Every check here deliberately avoids the code path it validates:
//! closed-form single-oscillator densities bypass the matrix machinery,
//! the commutator sum rule integrates the full model output against the
//! canonical value i, the cubic scanner counts sign changes instead of
//! solving, and Routh-Hurwitz re-derives stability without eigenvalues.

use num_complex::Complex;
use serde::Serialize;

use crate::constants::{HBAR, K_B};
use crate::dynamics::{transfer, LinearModel};
use crate::error::{Error, Result};
use crate::noise::{input_correlation, Flavor};
use crate::params::DerivedParams;
use crate::spectra::{IDX_LZ, IDX_PHI, IDX_PZ, IDX_Z};

pub type C64 = Complex<f64>;

/// One verification record; tolerances are stated per check, never global.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub name: String,
    pub computed: f64,
    pub reference: f64,
    pub relative_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl OracleReport {
    fn new(name: &str, computed: f64, reference: f64, tolerance: f64) -> Self {
        let scale = reference.abs().max(1e-300);
        let relative_error = (computed - reference).abs() / scale;
        OracleReport {
            name: name.to_string(),
            computed,
            reference,
            relative_error,
            tolerance,
            passed: relative_error <= tolerance,
        }
    }

    /// Absolute-error variant for zero references.
    fn new_abs(name: &str, computed: f64, reference: f64, tolerance: f64) -> Self {
        let err = (computed - reference).abs();
        OracleReport {
            name: name.to_string(),
            computed,
            reference,
            relative_error: err,
            tolerance,
            passed: err <= tolerance,
        }
    }
}

impl std::fmt::Display for OracleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {:<52} computed {:+.9e}  reference {:+.9e}  err {:.3e} (tol {:.1e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.computed,
            self.reference,
            self.relative_error,
            self.tolerance
        )
    }
}

/// Closed-form spectral density of one damped mechanical mode driven by its
/// own Brownian bath: ω_j²·S^flavor(ω) / ((ω_j²−ω²)² + γ_j²ω²).
///
/// Everything (including the thermal kernel) is evaluated inline so this
/// shares no code with the production path it cross-checks.
pub fn analytic_mechanical_spectrum(
    omega: f64,
    temperature: f64,
    gamma_j: f64,
    omega_j: f64,
    flavor: Flavor,
) -> f64 {
    let raw = |w: f64| -> f64 {
        let scale = gamma_j / omega_j;
        if temperature == 0.0 {
            return if w > 0.0 { 2.0 * scale * w } else { 0.0 };
        }
        let x = HBAR * w / (2.0 * K_B * temperature);
        if x.abs() < 1e-6 {
            scale * (w + 2.0 * K_B * temperature / HBAR + HBAR * w * w / (6.0 * K_B * temperature))
        } else if x.abs() > 30.0 {
            scale * w * (1.0 + x.signum())
        } else {
            scale * w * (1.0 + 1.0 / x.tanh())
        }
    };
    let kernel = match flavor {
        Flavor::Raw => raw(omega),
        Flavor::Symmetrized => 0.5 * (raw(omega) + raw(-omega)),
        Flavor::Commutator => raw(omega) - raw(-omega),
    };
    let denom = (omega_j * omega_j - omega * omega).powi(2) + gamma_j * gamma_j * omega * omega;
    omega_j * omega_j * kernel / denom
}

/// Canonical index pairs for the sum rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommutatorPair {
    /// (δz, δp_z) — integrates to i.
    ZPz,
    /// (δφ, δL_z) — integrates to i.
    PhiLz,
    /// (δz, δφ) — integrates to 0.
    ZPhi,
    /// (δz, δL_z) — integrates to 0.
    ZLz,
}

impl CommutatorPair {
    fn indices(self) -> (usize, usize) {
        match self {
            CommutatorPair::ZPz => (IDX_Z, IDX_PZ),
            CommutatorPair::PhiLz => (IDX_PHI, IDX_LZ),
            CommutatorPair::ZPhi => (IDX_Z, IDX_PHI),
            CommutatorPair::ZLz => (IDX_Z, IDX_LZ),
        }
    }

    /// Equal-time canonical commutator the integral must reproduce.
    pub fn expected(self) -> C64 {
        match self {
            CommutatorPair::ZPz | CommutatorPair::PhiLz => C64::new(0.0, 1.0),
            _ => C64::new(0.0, 0.0),
        }
    }
}

struct SimpsonCtx<'f> {
    f: &'f dyn Fn(f64) -> C64,
    converged: bool,
    evals: usize,
}

/// One Simpson panel: endpoints, the three samples, and its estimate.
struct Panel {
    a: f64,
    b: f64,
    fa: C64,
    fm: C64,
    fb: C64,
    estimate: C64,
}

impl Panel {
    fn new(ctx: &mut SimpsonCtx, a: f64, b: f64) -> Panel {
        let fa = (ctx.f)(a);
        let fm = (ctx.f)(0.5 * (a + b));
        let fb = (ctx.f)(b);
        ctx.evals += 3;
        let estimate = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
        Panel {
            a,
            b,
            fa,
            fm,
            fb,
            estimate,
        }
    }
}

fn adaptive_simpson(ctx: &mut SimpsonCtx, panel: Panel, tol: f64, depth: u32) -> C64 {
    let m = 0.5 * (panel.a + panel.b);
    let flm = (ctx.f)(0.5 * (panel.a + m));
    let frm = (ctx.f)(0.5 * (m + panel.b));
    ctx.evals += 2;
    let left = Panel {
        a: panel.a,
        b: m,
        fa: panel.fa,
        fm: flm,
        fb: panel.fm,
        estimate: (panel.fa + flm * 4.0 + panel.fm) * ((m - panel.a) / 6.0),
    };
    let right = Panel {
        a: m,
        b: panel.b,
        fa: panel.fm,
        fm: frm,
        fb: panel.fb,
        estimate: (panel.fm + frm * 4.0 + panel.fb) * ((panel.b - m) / 6.0),
    };
    let refined = left.estimate + right.estimate;
    let delta = refined - panel.estimate;
    if delta.norm() <= 15.0 * tol || depth == 0 {
        if depth == 0 && delta.norm() > 15.0 * tol {
            ctx.converged = false;
        }
        return refined + delta / 15.0;
    }
    adaptive_simpson(ctx, left, tol * 0.5, depth - 1)
        + adaptive_simpson(ctx, right, tol * 0.5, depth - 1)
}

/// Integrates ∫(dω/2π)·K_pair(ω) over the real line for the given model.
///
/// The commutator density is temperature-independent, so no T argument.
/// Segments are seeded at every mechanical resonance (the coupled model
/// keeps near-undamped dark-mode needles of fractional width ~1/Q) and at
/// cavity scales; |ω| is cut off at 10³·max(ω_z, ω_φ, γ) with a measured
/// O(1/ω²) tail correction from the endpoint values.
pub fn sumrule_integrate(m: &LinearModel, d: &DerivedParams, pair: CommutatorPair) -> Result<C64> {
    let (row, col) = pair.indices();
    let omega_max = 1e3 * d.omega_z.max(d.omega_phi).max(d.gamma);

    let integrand = |w: f64| -> C64 {
        let t_plus = transfer(m, w).expect("stable model checked upfront");
        let t_minus = transfer(m, -w).expect("stable model checked upfront");
        let c = input_correlation(w, 0.0, d, Flavor::Commutator);
        (t_plus.matrix * c.matrix * t_minus.matrix.transpose())[(row, col)]
    };
    if !m.stable {
        return Err(Error::UnstableSystem);
    }

    // breakpoints hugging each resonance needle plus cavity-scale anchors
    let mut pts = vec![0.0, omega_max, -omega_max];
    for wr in [d.omega_z, d.omega_phi] {
        for mult in [1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 0.5] {
            for sign in [1.0, -1.0] {
                pts.push(sign * wr * (1.0 - mult));
                pts.push(sign * wr * (1.0 + mult));
            }
        }
        pts.push(wr);
        pts.push(-wr);
    }
    for s in [0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0] {
        pts.push(s * d.gamma);
        pts.push(-s * d.gamma);
    }
    pts.retain(|&w| w.abs() <= omega_max);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();

    let mut ctx = SimpsonCtx {
        f: &integrand,
        converged: true,
        evals: 0,
    };
    let mut total = C64::new(0.0, 0.0);
    // per-segment tolerance, sized so the summed error stays ~1e-8 of the
    // canonical 2π·i target even across ~60 segments
    let seg_tol = 2.0 * std::f64::consts::PI * 1e-10;
    for win in pts.windows(2) {
        let (a, b) = (win[0], win[1]);
        let panel = Panel::new(&mut ctx, a, b);
        total += adaptive_simpson(&mut ctx, panel, seg_tol, 45);
    }
    if !ctx.converged {
        return Err(Error::QuadratureNotConverged(format!(
            "segment recursion exhausted after {} evaluations for pair {pair:?}",
            ctx.evals
        )));
    }

    // tail: K ~ k₂/ω² beyond the cutoff; read k₂ off the endpoints
    let tail =
        (integrand(omega_max) + integrand(-omega_max)) * omega_max / (2.0 * std::f64::consts::PI);
    Ok(total / (2.0 * std::f64::consts::PI) + tail)
}

/// Integrates the symmetrized displacement density ⟨δz²⟩ = ∫(dω/2π)·V_zz(ω)
/// (used by the equipartition check).
pub fn integrate_displacement_variance(
    m: &LinearModel,
    d: &DerivedParams,
    temperature: f64,
) -> Result<f64> {
    if !m.stable {
        return Err(Error::UnstableSystem);
    }
    let omega_max = 1e3 * d.omega_z.max(d.omega_phi).max(d.gamma);
    let integrand = |w: f64| -> C64 {
        let t_plus = transfer(m, w).expect("stable");
        let t_minus = transfer(m, -w).expect("stable");
        let c = input_correlation(w, temperature, d, Flavor::Symmetrized);
        (t_plus.matrix * c.matrix * t_minus.matrix.transpose())[(IDX_Z, IDX_Z)]
    };
    let mut pts = vec![0.0, omega_max, -omega_max];
    for mult in [1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 0.5] {
        for sign in [1.0, -1.0] {
            pts.push(sign * d.omega_z * (1.0 - mult));
            pts.push(sign * d.omega_z * (1.0 + mult));
        }
    }
    pts.push(d.omega_z);
    pts.push(-d.omega_z);
    for s in [2.0, 10.0] {
        pts.push(s * d.gamma);
        pts.push(-s * d.gamma);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();

    let mut ctx = SimpsonCtx {
        f: &integrand,
        converged: true,
        evals: 0,
    };
    let mut total = C64::new(0.0, 0.0);
    // variance scale ~ n̄/γ_z·…; tolerance relative to the thermal scale
    let scale = (K_B * temperature / (HBAR * d.omega_z)).max(1.0);
    let seg_tol = 2.0 * std::f64::consts::PI * 1e-6 * scale / 100.0;
    for win in pts.windows(2) {
        let (a, b) = (win[0], win[1]);
        let panel = Panel::new(&mut ctx, a, b);
        total += adaptive_simpson(&mut ctx, panel, seg_tol, 45);
    }
    if !ctx.converged {
        return Err(Error::QuadratureNotConverged(
            "displacement variance quadrature".into(),
        ));
    }
    Ok(total.re / (2.0 * std::f64::consts::PI))
}

/// Counts positive roots of the driven-cavity cubic on a dense grid of
/// photon numbers (sign changes only, no solving). Returns the count map
/// over the cartesian (δ, P_in) grid, row-major in δ.
pub fn brute_cubic_scan(d: &DerivedParams, deltas: &[f64], powers: &[f64]) -> Vec<Vec<u8>> {
    let g = d.g_z * d.g_z / d.omega_z + d.g_phi * d.g_phi / d.omega_phi;
    let gamma_sq4 = d.gamma * d.gamma / 4.0;
    deltas
        .iter()
        .map(|&delta| {
            powers
                .iter()
                .map(|&p_in| {
                    let a_in2 = p_in / (HBAR * d.omega_c);
                    let rhs = d.gamma * a_in2;
                    if rhs == 0.0 {
                        return 1; // n = 0 is the unique root
                    }
                    let f = |n: f64| {
                        let det = delta - n * g;
                        n * (gamma_sq4 + det * det) - rhs
                    };
                    // every positive root lies below both bounds
                    let n_up = 1.1
                        * (rhs / gamma_sq4)
                            .max(if g > 0.0 { 2.0 * delta.abs() / g } else { 0.0 })
                            .max(if g > 0.0 { (rhs / (g * g)).cbrt() } else { 0.0 });
                    let steps = 4000usize;
                    let mut count = 0u8;
                    let mut prev = f(0.0);
                    for k in 1..=steps {
                        let n = n_up * k as f64 / steps as f64;
                        let cur = f(n);
                        if prev.signum() != cur.signum() && prev != 0.0 {
                            count += 1;
                        }
                        prev = cur;
                    }
                    count
                })
                .collect()
        })
        .collect()
}

/// Routh-Hurwitz stability of a real characteristic polynomial
/// c₀·s⁶ + c₁·s⁵ + … + c₆ (descending powers, c₀ > 0 expected).
pub fn routh_hurwitz_stable(coeffs: &[f64]) -> bool {
    let n = coeffs.len();
    if n < 2 || coeffs[0] <= 0.0 {
        return false;
    }
    // build the Routh array; any sign change in the first column fails
    let width = n.div_ceil(2);
    let mut rows: Vec<Vec<f64>> = vec![vec![0.0; width + 1]; n];
    for (i, &c) in coeffs.iter().enumerate() {
        rows[i % 2][i / 2] = c;
    }
    for r in 2..n {
        let pivot = rows[r - 1][0];
        if pivot == 0.0 {
            return false; // marginal or degenerate
        }
        for c in 0..width {
            rows[r][c] = (pivot * rows[r - 2][c + 1] - rows[r - 2][0] * rows[r - 1][c + 1]) / pivot;
        }
    }
    rows.iter().take(n).all(|row| row[0] > 0.0)
}

/// Real characteristic polynomial of the drift matrix in the Hermitian
/// quadrature basis, by the Faddeev-LeVerrier recursion (coefficients in
/// descending powers, leading 1).
pub fn drift_char_poly(m: &LinearModel) -> [f64; 7] {
    let a = crate::dynamics::quadrature_drift(&m.drift);
    let mut coeffs = [0.0f64; 7];
    coeffs[0] = 1.0;
    let mut aux = a;
    for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let c = -aux.trace() / k as f64;
        *slot = c;
        if k < 6 {
            let mut shifted = aux;
            for i in 0..6 {
                shifted[(i, i)] += c;
            }
            aux = a * shifted;
        }
    }
    coeffs
}

/// Runs the full oracle battery against the supplied configuration and its
/// decoupled limit. Used by tests and the hidden `selfcheck` subcommand.
pub fn selfcheck(p: &crate::params::PhysicalParams) -> Result<Vec<OracleReport>> {
    use crate::dynamics::build_linear_model;
    use crate::spectra;
    use crate::steady::steady_state_feedback;

    let mut reports = Vec::new();

    let (d, _) = crate::params::derive_params(p)?;
    let ratio_direct = d.g_z / d.g_phi;
    let ratio_geom = crate::params::coupling_ratio(&d, p);
    reports.push(OracleReport::new(
        "coupling ratio: closed geometric form vs direct quotient",
        ratio_geom,
        ratio_direct,
        1e-12,
    ));

    // decoupled limit: zero drive
    let p0 = crate::params::PhysicalParams {
        input_power: 0.0,
        ..p.clone()
    };
    let (d0, _) = crate::params::derive_params(&p0)?;
    let s0 = steady_state_feedback(&d0, d0.omega_phi);
    let m0 = build_linear_model(&d0, &s0);

    // matrix machinery vs closed-form oscillator density over a 1000-point grid
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let w = (0.5 + 1.5 * i as f64 / 999.0) * d0.omega_z;
        let corr = input_correlation(w, p.temperature, &d0, Flavor::Symmetrized);
        let v = spectra::output_spectrum(&m0, &corr)?;
        let reference = analytic_mechanical_spectrum(
            w,
            p.temperature,
            d0.gamma_z,
            d0.omega_z,
            Flavor::Symmetrized,
        );
        let err = (v.matrix[(IDX_Z, IDX_Z)].re - reference).abs() / reference.abs();
        worst = worst.max(err);
    }
    reports.push(OracleReport::new_abs(
        "decoupled displacement density vs closed form (1000 pts, worst)",
        worst,
        0.0,
        1e-10,
    ));

    // commutator sum rules, decoupled
    let zp0 = sumrule_integrate(&m0, &d0, CommutatorPair::ZPz)?;
    reports.push(OracleReport::new(
        "sum rule Im∫K_zp (decoupled)",
        zp0.im,
        1.0,
        1e-8,
    ));
    reports.push(OracleReport::new_abs(
        "sum rule Re∫K_zp (decoupled)",
        zp0.re,
        0.0,
        1e-8,
    ));

    // coupled model at the configured working point
    let s = steady_state_feedback(&d, p.detuning_value);
    let m = build_linear_model(&d, &s);
    if m.stable {
        let zp = sumrule_integrate(&m, &d, CommutatorPair::ZPz)?;
        let fl = sumrule_integrate(&m, &d, CommutatorPair::PhiLz)?;
        reports.push(OracleReport::new(
            "sum rule Im∫K_zp (coupled)",
            zp.im,
            1.0,
            1e-6,
        ));
        reports.push(OracleReport::new(
            "sum rule Im∫K_φL (coupled)",
            fl.im,
            1.0,
            1e-6,
        ));
        for (pair, name) in [
            (CommutatorPair::ZPhi, "sum rule |∫K_zφ| (coupled, cross)"),
            (CommutatorPair::ZLz, "sum rule |∫K_zL| (coupled, cross)"),
        ] {
            let v = sumrule_integrate(&m, &d, pair)?;
            reports.push(OracleReport::new_abs(name, v.norm(), 0.0, 1e-6));
        }

        // Routh-Hurwitz vs eigenvalue stability verdict
        let rh = routh_hurwitz_stable(&drift_char_poly(&m));
        reports.push(OracleReport::new_abs(
            "Routh-Hurwitz agrees with eigenvalue stability",
            if rh == m.stable { 0.0 } else { 1.0 },
            0.0,
            0.5,
        ));
    }

    // equipartition in the decoupled limit at k_B·T = 100·ħ·ω_z
    let t_eq = 100.0 * HBAR * d0.omega_z / K_B;
    let var = integrate_displacement_variance(&m0, &d0, t_eq)?;
    reports.push(OracleReport::new(
        "equipartition ⟨δz²⟩ vs k_BT/(ħω_z) (decoupled)",
        var,
        100.0,
        1e-2,
    ));

    // vacuum normalization anchor
    let p_vac = spectra::entanglement_measure(&m0, &d0, d0.omega_z, 0.0)?;
    reports.push(OracleReport::new(
        "vacuum anchor E(ω_z) at T = 0 (decoupled)",
        p_vac.entanglement,
        1.0,
        1e-9,
    ));

    // brute cubic scan vs the closed solver on a compact grid
    let deltas: Vec<f64> = (0..10).map(|i| i as f64 * d.gamma).collect();
    let powers: Vec<f64> = (0..10)
        .map(|i| 10f64.powf(-6.0 + 5.0 * i as f64 / 9.0))
        .collect();
    let counts = brute_cubic_scan(&d, &deltas, &powers);
    let mut mismatches = 0usize;
    for (i, &delta) in deltas.iter().enumerate() {
        for (j, &p_in) in powers.iter().enumerate() {
            let pw = crate::params::PhysicalParams {
                input_power: p_in,
                ..p.clone()
            };
            let (dw, _) = crate::params::derive_params(&pw)?;
            let solved = crate::steady::steady_state_fixed_detuning(&dw, delta)?;
            if solved.len() != counts[i][j] as usize {
                mismatches += 1;
            }
        }
    }
    reports.push(OracleReport::new_abs(
        "cubic branch counts: solver vs brute scan (10×10 grid, mismatches)",
        mismatches as f64,
        0.0,
        0.5,
    ));

    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_linear_model;
    use crate::params::{derive_params, PhysicalParams};
    use crate::steady::steady_state_feedback;
    use approx::assert_relative_eq;

    #[test]
    fn analytic_commutator_flavor_is_odd() {
        let (gj, wj) = (2.0 * std::f64::consts::PI, 2e6 * std::f64::consts::PI);
        for mult in [0.3, 0.9, 1.0, 1.7] {
            let w = mult * wj;
            let plus = analytic_mechanical_spectrum(w, 3.0, gj, wj, Flavor::Commutator);
            let minus = analytic_mechanical_spectrum(-w, 3.0, gj, wj, Flavor::Commutator);
            // the flavor is a difference of large thermal kernels; allow
            // the cancellation noise floor
            assert_relative_eq!(plus, -minus, max_relative = 1e-9);
            let expect =
                2.0 * (gj / wj) * w * wj * wj / ((wj * wj - w * w).powi(2) + gj * gj * w * w);
            assert_relative_eq!(plus, expect, max_relative = 1e-9);
        }
    }

    #[test]
    fn analytic_peak_sits_at_damped_resonance() {
        let (gj, wj) = (1e4f64, 1e6f64); // heavily damped so the shift is visible
        let w_star = (wj * wj - gj * gj / 2.0).sqrt();
        let at_peak = analytic_mechanical_spectrum(w_star, 10.0, gj, wj, Flavor::Symmetrized);
        for off in [-0.01, 0.01] {
            let nearby = analytic_mechanical_spectrum(
                w_star * (1.0 + off),
                10.0,
                gj,
                wj,
                Flavor::Symmetrized,
            );
            assert!(nearby < at_peak);
        }
    }

    #[test]
    fn decoupled_sum_rule_hits_canonical_value() {
        let p = PhysicalParams {
            input_power: 0.0,
            ..PhysicalParams::default()
        };
        let (d, _) = derive_params(&p).unwrap();
        let m = build_linear_model(&d, &steady_state_feedback(&d, d.omega_phi));
        let zp = sumrule_integrate(&m, &d, CommutatorPair::ZPz).unwrap();
        assert!((zp - C64::new(0.0, 1.0)).norm() < 1e-8, "got {zp}");
        let cross = sumrule_integrate(&m, &d, CommutatorPair::ZLz).unwrap();
        assert!(cross.norm() < 1e-8, "got {cross}");
    }

    #[test]
    fn brute_scan_is_single_branch_without_couplings() {
        let (mut d, _) = derive_params(&PhysicalParams::default()).unwrap();
        d.g_z = 0.0;
        d.g_phi = 0.0;
        let deltas: Vec<f64> = (0..8).map(|i| i as f64 * d.gamma).collect();
        let powers: Vec<f64> = (1..8).map(|i| 1e-4 * i as f64).collect();
        for row in brute_cubic_scan(&d, &deltas, &powers) {
            assert!(row.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn routh_hurwitz_classifies_known_polynomials() {
        // (s+1)^2 → stable
        assert!(routh_hurwitz_stable(&[1.0, 2.0, 1.0]));
        // s² − s + 1 → unstable
        assert!(!routh_hurwitz_stable(&[1.0, -1.0, 1.0]));
        // (s+1)(s+2)(s+3) = s³ + 6s² + 11s + 6 → stable
        assert!(routh_hurwitz_stable(&[1.0, 6.0, 11.0, 6.0]));
        // (s-1)(s+2)(s+3) = s³ + 4s² + s − 6 → unstable
        assert!(!routh_hurwitz_stable(&[1.0, 4.0, 1.0, -6.0]));
    }

    #[test]
    fn char_poly_matches_eigenvalue_stability_on_design_point() {
        let (d, _) = derive_params(&PhysicalParams::default()).unwrap();
        for sign in [1.0, -1.0] {
            let m = build_linear_model(&d, &steady_state_feedback(&d, sign * d.omega_phi));
            let rh = routh_hurwitz_stable(&drift_char_poly(&m));
            assert_eq!(rh, m.stable, "disagreement at detuning sign {sign}");
        }
    }
}
