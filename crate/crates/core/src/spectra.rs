//! Output spectral densities and the ro-vibrational entanglement measure.
//!
//! Input correlations propagate through the transfer matrix by the single
//! formula of the project,
//!
//! ```text
//! V(ω) = T(ω) · C(ω) · T(−ω)ᵀ
//! ```
//!
//! valid flavor-by-flavor. Hermitian single-frequency operators are built
//! as R_w = [δw(ω) + δw(−ω)]/2, so their variance densities combine the
//! ±ω matrices, and the entanglement measure for the EPR pair
//! u = δz − δφ, v = δp_z + δL_z is
//!
//! ```text
//! E(ω) = V_Ru·V_Rv / D²,   D = |K_zp(ω) + K_zp(−ω)|/4
//! ```
//!
//! with K_zp the (δz, δp_z) entry of the commutator-flavor output matrix.
//! E(ω) < 1 witnesses bipartite entanglement at response frequency ω. The
//! formally divergent 2πδ(0) factors cancel between numerator and
//! denominator; the decoupled vacuum case gives E ≡ 1 exactly, which pins
//! the normalization end-to-end.

use nalgebra::SMatrix;
use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{transfer, LinearModel};
use crate::error::{Error, Result};
use crate::noise::{input_correlation, Flavor, InputCorrelation};
use crate::params::DerivedParams;

pub type C64 = Complex<f64>;
pub type OutputMatrix = SMatrix<C64, 6, 6>;

/// Indices into the state vector (δa, δa†, δz, δp_z, δφ, δL_z).
pub const IDX_Z: usize = 2;
pub const IDX_PZ: usize = 3;
pub const IDX_PHI: usize = 4;
pub const IDX_LZ: usize = 5;

/// Coefficients of the EPR combination u = δz − δφ.
pub const U_COEFFS: [f64; 6] = [0.0, 0.0, 1.0, 0.0, -1.0, 0.0];
/// Coefficients of the EPR combination v = δp_z + δL_z.
pub const V_COEFFS: [f64; 6] = [0.0, 0.0, 0.0, 1.0, 0.0, 1.0];

/// Tolerated relative imaginary residue on symmetrized densities.
const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// 6×6 output correlation density at one frequency, one flavor.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpectralMatrix {
    pub omega: f64,
    pub flavor: Flavor,
    pub matrix: OutputMatrix,
}

/// Per-frequency spectral summary of the entanglement measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumPoint {
    /// Response frequency (rad/s).
    pub omega: f64,
    /// Variance density of R_u (symmetrized).
    pub v_ru: f64,
    /// Variance density of R_v (symmetrized).
    pub v_rv: f64,
    /// Canonical commutator density D.
    pub commutator_density: f64,
    /// E = V_Ru·V_Rv/D²; entanglement witnessed when E < 1.
    pub entanglement: f64,
}

/// Propagates an input correlation through the model:
/// V(ω) = T(ω)·C(ω)·T(−ω)ᵀ.
pub fn output_spectrum(m: &LinearModel, corr: &InputCorrelation) -> Result<OutputSpectralMatrix> {
    let t_plus = transfer(m, corr.omega)?;
    let t_minus = transfer(m, -corr.omega)?;
    Ok(OutputSpectralMatrix {
        omega: corr.omega,
        flavor: corr.flavor,
        matrix: t_plus.matrix * corr.matrix * t_minus.matrix.transpose(),
    })
}

/// Returns the quadratic form and the absolute-sum scale of its terms (the
/// cancellation-aware magnitude reference for residue checks).
fn quadratic_form(v: &OutputMatrix, coeffs: &[f64; 6]) -> (C64, f64) {
    let mut acc = C64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    for (i, &ci) in coeffs.iter().enumerate() {
        if ci == 0.0 {
            continue;
        }
        for (j, &cj) in coeffs.iter().enumerate() {
            if cj == 0.0 {
                continue;
            }
            let term = v[(i, j)] * ci * cj;
            acc += term;
            scale += term.norm();
        }
    }
    (acc, scale)
}

/// Variance density of the Hermitian combination R_w for δw = coeffs·δx,
/// computed as (1/4)·[V_ww(ω) + V_ww(−ω)] from a matched ±ω pair.
///
/// For the symmetrized flavor the result is real and non-negative; an
/// imaginary residue below 1e-10 relative is discarded, anything larger is
/// reported as a numerical failure.
pub fn quadrature_density(
    v_plus: &OutputSpectralMatrix,
    v_minus: &OutputSpectralMatrix,
    coeffs: &[f64; 6],
) -> Result<f64> {
    if v_plus.flavor != v_minus.flavor {
        return Err(Error::FlavorMismatch(format!(
            "{:?} vs {:?}",
            v_plus.flavor, v_minus.flavor
        )));
    }
    debug_assert!(
        (v_plus.omega + v_minus.omega).abs() <= 1e-9 * v_plus.omega.abs().max(1.0),
        "quadrature_density expects a (+ω, −ω) pair"
    );
    let (q_plus, s_plus) = quadratic_form(&v_plus.matrix, coeffs);
    let (q_minus, s_minus) = quadratic_form(&v_minus.matrix, coeffs);
    let total = (q_plus + q_minus) / 4.0;
    // residue measured against the term scale: cancellation can make the
    // result itself arbitrarily small without any modeling error
    let scale = total.norm().max((s_plus + s_minus) / 4.0);
    if scale > 0.0 && total.im.abs() > IMAG_RESIDUE_TOL * scale {
        return Err(Error::NumericalFailure(format!(
            "imaginary residue {:e} on a quadrature density of scale {scale:e}",
            total.im,
        )));
    }
    Ok(total.re)
}

/// Full entanglement evaluation at one response frequency.
///
/// Requires a stable model and ω ≠ 0 (the Hermitian construction and the
/// Brownian kernel are degenerate at zero frequency; grids exclude it).
pub fn entanglement_measure(
    m: &LinearModel,
    d: &DerivedParams,
    omega: f64,
    temperature: f64,
) -> Result<SpectrumPoint> {
    if omega == 0.0 {
        return Err(Error::InvalidParams(
            "entanglement measure is undefined at omega = 0".into(),
        ));
    }
    let t_plus = transfer(m, omega)?;
    let t_minus = transfer(m, -omega)?;

    let build = |flavor: Flavor| -> (OutputSpectralMatrix, OutputSpectralMatrix) {
        let c_plus = input_correlation(omega, temperature, d, flavor);
        let c_minus = input_correlation(-omega, temperature, d, flavor);
        (
            OutputSpectralMatrix {
                omega,
                flavor,
                matrix: t_plus.matrix * c_plus.matrix * t_minus.matrix.transpose(),
            },
            OutputSpectralMatrix {
                omega: -omega,
                flavor,
                matrix: t_minus.matrix * c_minus.matrix * t_plus.matrix.transpose(),
            },
        )
    };

    let (sym_plus, sym_minus) = build(Flavor::Symmetrized);
    let v_ru = quadrature_density(&sym_plus, &sym_minus, &U_COEFFS)?;
    let v_rv = quadrature_density(&sym_plus, &sym_minus, &V_COEFFS)?;

    let (comm_plus, comm_minus) = build(Flavor::Commutator);
    let k_sum = comm_plus.matrix[(IDX_Z, IDX_PZ)] + comm_minus.matrix[(IDX_Z, IDX_PZ)];
    let commutator_density = k_sum.norm() / 4.0;
    if commutator_density < 1e-300 {
        return Err(Error::DegenerateDenominator(commutator_density));
    }

    Ok(SpectrumPoint {
        omega,
        v_ru,
        v_rv,
        commutator_density,
        entanglement: v_ru * v_rv / (commutator_density * commutator_density),
    })
}

/// Evaluates the measure over a frequency grid (order preserved, points
/// evaluated concurrently).
pub fn evaluate_curve(
    m: &LinearModel,
    d: &DerivedParams,
    grid: &[f64],
    temperature: f64,
) -> Result<Vec<SpectrumPoint>> {
    grid.par_iter()
        .map(|&w| entanglement_measure(m, d, w, temperature))
        .collect()
}

/// Curve summary: strongest entanglement and the interval where E < 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSummary {
    pub omega_peak: f64,
    pub e_min: f64,
    /// Contiguous ω-interval around the peak with E < 1, edges located by
    /// linear interpolation; absent when no grid point is entangled.
    pub entangled_band: Option<(f64, f64)>,
}

/// Grid argmin with parabolic sub-grid refinement (no density guard).
pub fn peak_unchecked(points: &[SpectrumPoint]) -> Option<(f64, f64)> {
    if points.is_empty() {
        return None;
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].omega.partial_cmp(&points[b].omega).unwrap());
    let sorted: Vec<&SpectrumPoint> = order.iter().map(|&i| &points[i]).collect();

    let mut best = 0;
    for (i, p) in sorted.iter().enumerate() {
        if p.entanglement < sorted[best].entanglement {
            best = i;
        }
    }
    if best == 0 || best + 1 == sorted.len() {
        return Some((sorted[best].omega, sorted[best].entanglement));
    }
    let (x0, x1, x2) = (
        sorted[best - 1].omega,
        sorted[best].omega,
        sorted[best + 1].omega,
    );
    let (y0, y1, y2) = (
        sorted[best - 1].entanglement,
        sorted[best].entanglement,
        sorted[best + 1].entanglement,
    );
    // vertex of the parabola through the three bracketing samples
    let denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if denom.abs() < 1e-300 {
        return Some((x1, y1));
    }
    let num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    let xv = x1 - 0.5 * num / denom;
    // clamp: the vertex must stay inside the bracketing step
    let xv = xv.clamp(x0, x2);
    let e_at = |x: f64| {
        let l0 = (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2));
        let l1 = (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2));
        let l2 = (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
        y0 * l0 + y1 * l1 + y2 * l2
    };
    Some((xv, e_at(xv).min(y1)))
}

/// Peak finder with the grid-density contract: at least 11 grid points must
/// fall inside one mechanical linewidth around the argmin.
pub fn find_peak(points: &[SpectrumPoint], gamma_mech: f64) -> Result<(f64, f64)> {
    if points.len() < 3 {
        return Err(Error::GridTooCoarse(format!(
            "{} points cannot bracket a peak",
            points.len()
        )));
    }
    let mut omegas: Vec<f64> = points.iter().map(|p| p.omega).collect();
    omegas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let argmin = points
        .iter()
        .min_by(|a, b| a.entanglement.partial_cmp(&b.entanglement).unwrap())
        .unwrap()
        .omega;
    let in_linewidth = omegas
        .iter()
        .filter(|&&w| (w - argmin).abs() <= gamma_mech / 2.0 * (1.0 + 1e-9))
        .count();
    if in_linewidth < 11 {
        return Err(Error::GridTooCoarse(format!(
            "{in_linewidth} grid points inside one mechanical linewidth ({gamma_mech:e} rad/s) \
             around the minimum; need at least 11"
        )));
    }
    Ok(peak_unchecked(points).expect("nonempty"))
}

/// Summary of a computed curve (argmin + E < 1 band by interpolation).
pub fn summarize_curve(points: &[SpectrumPoint]) -> Option<CurveSummary> {
    let (omega_peak, e_min) = peak_unchecked(points)?;
    let mut sorted: Vec<&SpectrumPoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.omega.partial_cmp(&b.omega).unwrap());

    let entangled_band = if e_min < 1.0 {
        let idx = sorted
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.entanglement.partial_cmp(&b.entanglement).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let crossing = |a: &SpectrumPoint, b: &SpectrumPoint| -> f64 {
            // linear interpolation of E = 1 between two samples
            let t = (1.0 - a.entanglement) / (b.entanglement - a.entanglement);
            a.omega + t * (b.omega - a.omega)
        };
        let mut lo = idx;
        while lo > 0 && sorted[lo - 1].entanglement < 1.0 {
            lo -= 1;
        }
        let left = if lo == 0 {
            sorted[0].omega
        } else {
            crossing(sorted[lo - 1], sorted[lo])
        };
        let mut hi = idx;
        while hi + 1 < sorted.len() && sorted[hi + 1].entanglement < 1.0 {
            hi += 1;
        }
        let right = if hi + 1 == sorted.len() {
            sorted[hi].omega
        } else {
            crossing(sorted[hi + 1], sorted[hi])
        };
        Some((left, right))
    } else {
        None
    };
    Some(CurveSummary {
        omega_peak,
        e_min,
        entangled_band,
    })
}
