//! Parameter studies: E(ω, T) surfaces, coupling-imbalance destruction
//! curves, and the wavelength/length coupling tuner.
//!
//! An imbalance between the two couplings is realized by detuning the
//! rotational frequency (g_φ ∝ 1/√ω_φ), the mechanism behind a mechanical
//! frequency mismatch showing up as a coupling asymmetry. The tuner undoes
//! such an asymmetry by moving the drive wavelength, re-locking the cavity
//! length to the nearest half-wave resonance L = n·λ/2.

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::build_linear_model;
use crate::error::{Error, Result};
use crate::params::{coupling_ratio, derive_params, DetuningMode, PhysicalParams};
use crate::spectra::{entanglement_measure, SpectrumPoint};
use crate::steady::{steady_state_feedback, steady_state_fixed_detuning, steady_state_from_branch};

/// Sweepable quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxisName {
    /// Response frequency (rad/s); each grid point is a single E(ω) sample.
    Omega,
    /// Bath temperature (K).
    Temperature,
    /// Coupling imbalance 100·(g_z/g_φ − 1).
    ImbalancePercent,
    /// Detuning value in the configured mode (rad/s).
    Detuning,
    /// Input power (W).
    Power,
}

impl AxisName {
    pub fn parse(s: &str) -> Option<AxisName> {
        match s {
            "omega" => Some(AxisName::Omega),
            "temperature" => Some(AxisName::Temperature),
            "imbalance_percent" => Some(AxisName::ImbalancePercent),
            "detuning" => Some(AxisName::Detuning),
            "power" => Some(AxisName::Power),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            AxisName::Omega => "omega",
            AxisName::Temperature => "temperature",
            AxisName::ImbalancePercent => "imbalance_percent",
            AxisName::Detuning => "detuning",
            AxisName::Power => "power",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxisSpacing {
    Linear,
    Log,
}

/// One sweep axis. A single-point axis (points = 1, min = max) degenerates
/// to a direct evaluation at that value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepAxis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: AxisSpacing,
}

impl SweepAxis {
    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidParams(
                "sweep axis bounds must be finite".into(),
            ));
        }
        if self.points == 0 {
            return Err(Error::InvalidParams(
                "sweep axis needs at least 1 point".into(),
            ));
        }
        if self.points >= 2 && self.min >= self.max {
            return Err(Error::InvalidParams(format!(
                "sweep axis {}: min must be < max for multi-point axes",
                self.name.label()
            )));
        }
        if self.spacing == AxisSpacing::Log && self.min <= 0.0 {
            return Err(Error::InvalidParams(
                "log-spaced axis requires min > 0".into(),
            ));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.min];
        }
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    AxisSpacing::Linear => self.min + t * (self.max - self.min),
                    AxisSpacing::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

/// Full sweep description: 1 or 2 axes over a baseline configuration. The
/// inner ω grid (used whenever no axis is `Omega`) is fixed in absolute
/// units when the sweep is built, so every sweep point sees the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axes: Vec<SweepAxis>,
    pub baseline: PhysicalParams,
    /// Inner response-frequency grid (rad/s), strictly excluding 0.
    pub omega_grid: Vec<f64>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidParams("sweep needs 1 or 2 axes".into()));
        }
        for ax in &self.axes {
            ax.validate()?;
        }
        let needs_inner = !self.axes.iter().any(|a| a.name == AxisName::Omega);
        if needs_inner && self.omega_grid.is_empty() {
            return Err(Error::InvalidParams(
                "sweep without an omega axis requires an inner omega grid".into(),
            ));
        }
        if self.omega_grid.contains(&0.0)
            || self
                .axes
                .iter()
                .any(|a| a.name == AxisName::Omega && (a.min == 0.0 || a.values().contains(&0.0)))
        {
            return Err(Error::InvalidParams("omega grids must exclude 0".into()));
        }
        self.baseline.validate()
    }
}

/// One output row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    /// Strongest entanglement over the evaluated frequencies (min E); the
    /// column keeps the unambiguous name `E_extremum` in CSV output.
    pub e_extremum: Option<f64>,
    pub omega_peak: Option<f64>,
    pub stable: bool,
}

/// Returns params whose derived couplings satisfy g_z/g_φ = 1 + x/100,
/// realized by scaling the rotational frequency and leaving every optical
/// parameter fixed.
pub fn apply_imbalance(p: &PhysicalParams, imbalance_percent: f64) -> Result<PhysicalParams> {
    let (d, _) = derive_params(p)?;
    let r0 = coupling_ratio(&d, p);
    if (r0 - 1.0).abs() > 1e-3 {
        return Err(Error::InvalidParams(format!(
            "baseline couplings are unbalanced (ratio {r0}); balance them (e.g. via the tuner) \
             before applying a controlled imbalance"
        )));
    }
    let target = 1.0 + imbalance_percent / 100.0;
    if !target.is_finite() || target <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "imbalance {imbalance_percent}% would require a non-positive rotational frequency"
        )));
    }
    // ratio ∝ √ω_φ, so the frequency scales with the square of the ratio move
    let scale = (target / r0).powi(2);
    Ok(PhysicalParams {
        omega_phi: p.omega_phi * scale,
        ..p.clone()
    })
}

fn apply_axis(p: &mut PhysicalParams, name: AxisName, value: f64) -> Result<()> {
    match name {
        AxisName::Omega => {} // handled at evaluation time
        AxisName::Temperature => p.temperature = value,
        AxisName::Detuning => p.detuning_value = value,
        AxisName::Power => p.input_power = value,
        AxisName::ImbalancePercent => *p = apply_imbalance(p, value)?,
    }
    Ok(())
}

fn evaluate_point(
    baseline: &PhysicalParams,
    assignments: &[(AxisName, f64)],
    omega_grid: &[f64],
) -> Result<SweepRow> {
    let axis1 = assignments[0].1;
    let axis2 = assignments.get(1).map(|a| a.1);

    let mut p = baseline.clone();
    let mut omega_override = None;
    for &(name, value) in assignments {
        if name == AxisName::Omega {
            omega_override = Some(value);
        }
        apply_axis(&mut p, name, value)?;
    }

    let (d, _) = derive_params(&p)?;
    let s = match p.detuning_mode {
        DetuningMode::Feedback => steady_state_feedback(&d, p.detuning_value),
        DetuningMode::Fixed => {
            let branches = steady_state_fixed_detuning(&d, p.detuning_value)?;
            if branches.len() != 1 {
                return Err(Error::NumericalFailure(
                    "fixed-detuning working point is bistable (3 branches); use feedback mode \
                     or inspect branches via the steady interface"
                        .into(),
                ));
            }
            steady_state_from_branch(&d, p.detuning_value, &branches[0])
        }
    };
    let m = build_linear_model(&d, &s);
    if !m.stable {
        return Ok(SweepRow {
            axis1,
            axis2,
            e_extremum: None,
            omega_peak: None,
            stable: false,
        });
    }

    let (e_extremum, omega_peak) = match omega_override {
        Some(w) => {
            let pt = entanglement_measure(&m, &d, w, p.temperature)?;
            (pt.entanglement, w)
        }
        None => {
            let mut best: Option<SpectrumPoint> = None;
            for &w in omega_grid {
                let pt = entanglement_measure(&m, &d, w, p.temperature)?;
                if best.is_none_or(|b| pt.entanglement < b.entanglement) {
                    best = Some(pt);
                }
            }
            let b = best.expect("validated non-empty grid");
            (b.entanglement, b.omega)
        }
    };
    Ok(SweepRow {
        axis1,
        axis2,
        e_extremum: Some(e_extremum),
        omega_peak: Some(omega_peak),
        stable: true,
    })
}

/// Evaluates the full cartesian grid. Output ordering is by axis index
/// (axis2 fastest); points run concurrently but assembly is ordered, so
/// re-running a sweep yields bit-identical results.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let v1 = spec.axes[0].values();
    let v2: Vec<Option<f64>> = match spec.axes.get(1) {
        Some(ax) => ax.values().into_iter().map(Some).collect(),
        None => vec![None],
    };
    let mut tasks = Vec::new();
    for &a in &v1 {
        for &b in &v2 {
            let mut assignment = vec![(spec.axes[0].name, a)];
            if let (Some(ax2), Some(bv)) = (spec.axes.get(1), b) {
                assignment.push((ax2.name, bv));
            }
            tasks.push(assignment);
        }
    }
    tasks
        .par_iter()
        .map(|assignment| evaluate_point(&spec.baseline, assignment, &spec.omega_grid))
        .collect()
}

/// Outcome of the wavelength/length coupling balancer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuneResult {
    /// Balancing wavelength (m).
    pub lambda_new: f64,
    /// Re-locked cavity length L = n·λ/2 (m).
    pub cavity_length_new: f64,
    /// Longitudinal mode index n.
    pub mode_index: u64,
    /// |g_z/g_φ − 1| at the returned operating point.
    pub residual_imbalance: f64,
    /// λ_new − λ_old (m).
    pub delta_lambda: f64,
    /// L_new − L_old (m).
    pub delta_length: f64,
    /// Wavelength shift predicted by first-order perturbation of the
    /// coupling ratio, without the resonance constraint (m).
    pub first_order_delta_lambda: f64,
}

/// How far the re-locked cavity length may move from the configured one.
pub const LENGTH_ADJUST_WINDOW: f64 = 200e-6;
/// Coarse wavelength scan step.
const LAMBDA_GRID_STEP: f64 = 0.1e-12;
/// Residual below which the couplings count as balanced.
pub const TUNE_TARGET: f64 = 1e-6;

/// Searches wavelengths within ±`lambda_window` of the configured λ (and
/// mode indices n with n·λ/2 within ±200 μm of the configured L) for the
/// point minimizing |g_z/g_φ − 1| subject to L = n·λ/2 exactly.
///
/// The coupling ratio scales as 1/λ at fixed mechanics, so the scan is a
/// 0.1 pm grid over the window followed by one exact local refinement;
/// candidate mode indices tie-break on the smallest length move.
pub fn tune_couplings(p: &PhysicalParams, lambda_window: f64) -> Result<TuneResult> {
    p.validate()?;
    if !lambda_window.is_finite() || lambda_window <= 0.0 {
        return Err(Error::InvalidParams("lambda_window must be > 0".into()));
    }
    let (d0, _) = derive_params(p)?;
    let r0 = coupling_ratio(&d0, p);

    let ratio_at = |lambda: f64| -> f64 {
        // closed geometric form; moving λ rescales the ratio as 1/λ
        r0 * p.wavelength / lambda
    };

    let lo = p.wavelength - lambda_window;
    let hi = p.wavelength + lambda_window;
    if lo <= 0.0 {
        return Err(Error::InvalidParams(
            "lambda window reaches non-positive wavelengths".into(),
        ));
    }

    let steps = ((hi - lo) / LAMBDA_GRID_STEP).ceil() as usize;
    let mut best_lambda = lo;
    let mut best_err = (ratio_at(lo) - 1.0).abs();
    for k in 0..=steps {
        let lambda = (lo + k as f64 * LAMBDA_GRID_STEP).min(hi);
        let err = (ratio_at(lambda) - 1.0).abs();
        if err < best_err {
            best_err = err;
            best_lambda = lambda;
        }
    }
    // exact refinement: ratio(λ) = 1 at λ* = λ_old·r0, when inside the window
    let lambda_star = p.wavelength * r0;
    if lambda_star >= lo && lambda_star <= hi {
        best_lambda = lambda_star;
    }

    // candidate mode indices keeping the re-locked length near the original
    let n_lo = (2.0 * (p.cavity_length - LENGTH_ADJUST_WINDOW) / best_lambda).ceil() as i64;
    let n_hi = (2.0 * (p.cavity_length + LENGTH_ADJUST_WINDOW) / best_lambda).floor() as i64;
    if n_hi < n_lo || n_hi < 1 {
        return Err(Error::NoResonanceInWindow);
    }
    let mode_index = (n_lo.max(1)..=n_hi)
        .min_by(|&a, &b| {
            let da = (a as f64 * best_lambda / 2.0 - p.cavity_length).abs();
            let db = (b as f64 * best_lambda / 2.0 - p.cavity_length).abs();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap() as u64;
    let cavity_length_new = mode_index as f64 * best_lambda / 2.0;

    let tuned = PhysicalParams {
        wavelength: best_lambda,
        cavity_length: cavity_length_new,
        ..p.clone()
    };
    let (dt, _) = derive_params(&tuned)?;
    let residual_imbalance = (coupling_ratio(&dt, &tuned) - 1.0).abs();

    let result = TuneResult {
        lambda_new: best_lambda,
        cavity_length_new,
        mode_index,
        residual_imbalance,
        delta_lambda: best_lambda - p.wavelength,
        delta_length: cavity_length_new - p.cavity_length,
        first_order_delta_lambda: p.wavelength * (r0 - 1.0),
    };
    if residual_imbalance > TUNE_TARGET {
        return Err(Error::TargetUnreachable(Box::new(result)));
    }
    Ok(result)
}

/// Applies a tune outcome back onto a parameter set.
pub fn apply_tune(p: &PhysicalParams, t: &TuneResult) -> PhysicalParams {
    PhysicalParams {
        wavelength: t.lambda_new,
        cavity_length: t.cavity_length_new,
        ..p.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn defaults() -> PhysicalParams {
        PhysicalParams::default()
    }

    /// Baseline with the couplings balanced exactly, the way the
    /// imbalance studies start.
    fn balanced() -> PhysicalParams {
        let t = tune_couplings(&defaults(), 5e-9).unwrap();
        apply_tune(&defaults(), &t)
    }

    #[test]
    fn zero_imbalance_preserves_ratio() {
        let p = balanced();
        let q = apply_imbalance(&p, 0.0).unwrap();
        let (d, _) = derive_params(&q).unwrap();
        assert_relative_eq!(coupling_ratio(&d, &q), 1.0, max_relative = 1e-9);
    }

    #[test]
    fn imbalance_round_trip() {
        let p = balanced();
        for x in [0.001, 0.01, 0.02, 0.1, -0.05] {
            let q = apply_imbalance(&p, x).unwrap();
            let (d, _) = derive_params(&q).unwrap();
            assert_relative_eq!(coupling_ratio(&d, &q), 1.0 + x / 100.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn two_hundred_hertz_mismatch_is_hundredth_percent_scale() {
        // a 200 Hz rotational-vibrational split at 1 MHz produces a
        // coupling imbalance of order 0.01–0.02%
        let p = balanced();
        let q = PhysicalParams {
            omega_phi: p.omega_phi + 2.0 * std::f64::consts::PI * 200.0,
            ..p
        };
        let (d, _) = derive_params(&q).unwrap();
        let imbalance_pct = (coupling_ratio(&d, &q) - 1.0) * 100.0;
        assert!(
            (0.005..=0.05).contains(&imbalance_pct),
            "imbalance {imbalance_pct}% out of the expected order of magnitude"
        );
    }

    #[test]
    fn destructive_imbalance_is_rejected() {
        assert!(apply_imbalance(&balanced(), -150.0).is_err());
    }

    #[test]
    fn unbalanced_baseline_is_rejected() {
        let p = PhysicalParams {
            omega_phi: 1.3 * defaults().omega_phi,
            ..defaults()
        };
        assert!(matches!(
            apply_imbalance(&p, 0.01),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn degenerate_sweep_equals_direct_call() {
        let p = defaults();
        let (d, _) = derive_params(&p).unwrap();
        let w = 0.97 * d.omega_phi;
        let spec = SweepSpec {
            axes: vec![
                SweepAxis {
                    name: AxisName::Omega,
                    min: w,
                    max: w,
                    points: 1,
                    spacing: AxisSpacing::Linear,
                },
                SweepAxis {
                    name: AxisName::Temperature,
                    min: 1.0,
                    max: 1.0,
                    points: 1,
                    spacing: AxisSpacing::Linear,
                },
            ],
            baseline: p.clone(),
            omega_grid: vec![],
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 1);

        let s = steady_state_feedback(&d, p.detuning_value);
        let m = build_linear_model(&d, &s);
        let direct = entanglement_measure(&m, &d, w, 1.0).unwrap();
        assert_eq!(rows[0].e_extremum.unwrap(), direct.entanglement);
    }

    #[test]
    fn sweep_is_deterministic() {
        let p = defaults();
        let (d, _) = derive_params(&p).unwrap();
        let spec = SweepSpec {
            axes: vec![SweepAxis {
                name: AxisName::Omega,
                min: 0.95 * d.omega_phi,
                max: 1.05 * d.omega_phi,
                points: 40,
                spacing: AxisSpacing::Linear,
            }],
            baseline: p,
            omega_grid: vec![],
        };
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a, b); // bit-identical, independent of thread scheduling
    }

    #[test]
    fn sweep_orders_rows_by_axis_index() {
        let p = defaults();
        let spec = SweepSpec {
            axes: vec![
                SweepAxis {
                    name: AxisName::Temperature,
                    min: 0.1,
                    max: 0.3,
                    points: 3,
                    spacing: AxisSpacing::Linear,
                },
                SweepAxis {
                    name: AxisName::Power,
                    min: 0.5e-3,
                    max: 1e-3,
                    points: 2,
                    spacing: AxisSpacing::Linear,
                },
            ],
            baseline: p.clone(),
            omega_grid: vec![p.omega_phi],
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows[0].axis1 <= rows[5].axis1);
        assert_eq!(rows[0].axis1, rows[1].axis1); // axis2 runs fastest
        assert!(rows[0].axis2.unwrap() < rows[1].axis2.unwrap());
    }

    #[test]
    fn temperature_surface_entangled_region_shrinks() {
        // ω × T surface: the set of grid points with E < 1 around the
        // rotational resonance shrinks monotonically as T rises
        let p = PhysicalParams {
            temperature: 1.0,
            ..defaults()
        };
        let (d, _) = derive_params(&p).unwrap();
        let spec = SweepSpec {
            axes: vec![
                SweepAxis {
                    name: AxisName::Omega,
                    min: 0.95 * d.omega_phi,
                    max: 1.05 * d.omega_phi,
                    points: 25,
                    spacing: AxisSpacing::Linear,
                },
                SweepAxis {
                    name: AxisName::Temperature,
                    min: 0.1,
                    max: 20.0,
                    points: 4,
                    spacing: AxisSpacing::Log,
                },
            ],
            baseline: p,
            omega_grid: vec![],
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 100);
        let temps: Vec<f64> = {
            let mut t: Vec<f64> = rows.iter().filter_map(|r| r.axis2).collect();
            t.sort_by(|a, b| a.partial_cmp(b).unwrap());
            t.dedup();
            t
        };
        let entangled_count = |t: f64| -> usize {
            rows.iter()
                .filter(|r| r.axis2 == Some(t) && r.e_extremum.is_some_and(|e| e < 1.0))
                .count()
        };
        let counts: Vec<usize> = temps.iter().map(|&t| entangled_count(t)).collect();
        assert!(counts[0] > 0, "no entanglement at T = {} K", temps[0]);
        assert!(
            counts.windows(2).all(|w| w[1] <= w[0]),
            "region grew with T: {counts:?}"
        );
        assert_eq!(*counts.last().unwrap(), 0);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let p = defaults();
        let bad_axis = SweepSpec {
            axes: vec![SweepAxis {
                name: AxisName::Temperature,
                min: 2.0,
                max: 1.0,
                points: 5,
                spacing: AxisSpacing::Linear,
            }],
            baseline: p.clone(),
            omega_grid: vec![p.omega_phi],
        };
        assert!(bad_axis.validate().is_err());
        let zero_grid = SweepSpec {
            axes: vec![SweepAxis {
                name: AxisName::Temperature,
                min: 1.0,
                max: 2.0,
                points: 2,
                spacing: AxisSpacing::Linear,
            }],
            baseline: p.clone(),
            omega_grid: vec![0.0],
        };
        assert!(zero_grid.validate().is_err());
    }

    #[test]
    fn tuner_fixed_point_on_balanced_params() {
        let p = balanced();
        let t = tune_couplings(&p, 5e-9).unwrap();
        assert!(t.residual_imbalance <= 1e-12);
        assert!(t.delta_lambda.abs() <= LAMBDA_GRID_STEP);
        assert!(t.delta_length.abs() <= p.wavelength); // at most one half-wave
    }

    #[test]
    fn tuner_balances_ten_hertz_mismatch() {
        let p = PhysicalParams {
            omega_phi: defaults().omega_phi + 2.0 * std::f64::consts::PI * 10.0,
            ..defaults()
        };
        let t = tune_couplings(&p, 5e-9).unwrap();
        assert!(t.residual_imbalance <= TUNE_TARGET);
        // exact half-wave resonance
        assert_eq!(
            t.cavity_length_new,
            t.mode_index as f64 * t.lambda_new / 2.0
        );
        assert!(t.delta_length.abs() <= LENGTH_ADJUST_WINDOW);
        assert!(t.delta_lambda.abs() <= 5e-9);
    }

    #[test]
    fn first_order_shift_scales_with_mismatch() {
        let base = defaults();
        let mk = |hz: f64| PhysicalParams {
            omega_phi: base.omega_phi + 2.0 * std::f64::consts::PI * hz,
            ..base.clone()
        };
        let t10 = tune_couplings(&mk(10.0), 5e-9).unwrap();
        let t20 = tune_couplings(&mk(20.0), 5e-9).unwrap();
        let shift10 = t10.first_order_delta_lambda
            - tune_couplings(&base, 5e-9)
                .unwrap()
                .first_order_delta_lambda;
        let shift20 = t20.first_order_delta_lambda
            - tune_couplings(&base, 5e-9)
                .unwrap()
                .first_order_delta_lambda;
        assert_relative_eq!(shift20 / shift10, 2.0, max_relative = 1e-4);
    }

    #[test]
    fn tuner_reports_unreachable_window() {
        // a 1 pm window cannot reach the balancing wavelength for a large mismatch
        let p = PhysicalParams {
            omega_phi: 1.1 * defaults().omega_phi,
            ..defaults()
        };
        match tune_couplings(&p, 1e-12) {
            Err(Error::TargetUnreachable(best)) => {
                assert!(best.residual_imbalance > TUNE_TARGET);
                assert_eq!(
                    best.cavity_length_new,
                    best.mode_index as f64 * best.lambda_new / 2.0
                );
            }
            other => panic!("expected TargetUnreachable, got {other:?}"),
        }
    }

    #[test]
    fn tuner_never_violates_half_wave_lock() {
        for hz in [0.0, 5.0, 10.0, 100.0, 1000.0] {
            let p = PhysicalParams {
                omega_phi: defaults().omega_phi + 2.0 * std::f64::consts::PI * hz,
                ..defaults()
            };
            let t = match tune_couplings(&p, 5e-9) {
                Ok(t) => t,
                Err(Error::TargetUnreachable(b)) => *b,
                Err(e) => panic!("{e}"),
            };
            assert_eq!(
                t.cavity_length_new,
                t.mode_index as f64 * t.lambda_new / 2.0
            );
        }
    }
}
