//! Linearized fluctuation dynamics around the classical working point.
//!
//! State order x = (δa, δa†, δz, δp_z, δφ, δL_z); noise order
//! n = (δa_in, δa_in†, δε_z, δε_φ). The drift rows are
//!
//! ```text
//! δȧ    = −(iΔ+γ/2)·δa + i·a_s·g_z·δz − i·a_s·g_φ·δφ + √γ·δa_in
//! δȧ†   =  conjugate-partner row
//! δż    =  ω_z·δp_z
//! δṗ_z  = −ω_z·δz + g_z·a_s·(δa+δa†) − γ_z·δp_z + δε_z
//! δφ̇    =  ω_φ·δL_z
//! δL̇_z  = −ω_φ·δφ − g_φ·a_s·(δa+δa†) − γ_φ·δL_z + δε_φ
//! ```
//!
//! The complex (δa, δa†) pair is the canonical internal basis; conversion
//! to Hermitian quadratures is a separate pure utility used for the
//! eigenvalue computation (where the matrix is real). The Fourier
//! convention is f(t) = ∫(dω/2π)·e^{−iωt}·f(ω), so time derivatives map
//! to −iω and the transfer matrix is T(ω) = (−iω·I − A)⁻¹·B.

use nalgebra::{DMatrix, SMatrix};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::params::DerivedParams;
use crate::steady::SteadyState;

pub type C64 = Complex<f64>;
pub type StateMatrix = SMatrix<C64, 6, 6>;
pub type InputMatrix = SMatrix<C64, 6, 4>;

/// Relative residual bound on the frequency-domain solve.
pub const TRANSFER_RESIDUAL_TOL: f64 = 1e-10;

/// Drift/input matrices of the six-dimensional fluctuation state with the
/// stability verdict baked in at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    /// 6×6 drift matrix A.
    pub drift: StateMatrix,
    /// 6×4 noise input matrix B.
    pub input: InputMatrix,
    /// Eigenvalues of A (1/s), sorted by (re, im) for determinism.
    pub eigenvalues: [C64; 6],
    /// All eigenvalue real parts strictly negative.
    pub stable: bool,
}

/// Transfer matrix T(ω) = (−iω·I − A)⁻¹·B.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix {
    pub omega: f64,
    pub matrix: InputMatrix,
}

/// Builds the linearized model; instability is a reported state here, not
/// an error (the hard gate sits on every spectral computation).
pub fn build_linear_model(d: &DerivedParams, s: &SteadyState) -> LinearModel {
    let i = C64::i();
    let half_gamma = C64::new(d.gamma / 2.0, 0.0);
    let delta = s.detuning;
    let kz = s.amplitude * d.g_z;
    let kphi = s.amplitude * d.g_phi;

    let mut a = StateMatrix::zeros();
    a[(0, 0)] = -(i * delta + half_gamma);
    a[(0, 2)] = i * kz;
    a[(0, 4)] = -i * kphi;
    a[(1, 1)] = -(-i * delta + half_gamma);
    a[(1, 2)] = -i * kz;
    a[(1, 4)] = i * kphi;
    a[(2, 3)] = C64::new(d.omega_z, 0.0);
    a[(3, 0)] = C64::new(kz, 0.0);
    a[(3, 1)] = C64::new(kz, 0.0);
    a[(3, 2)] = C64::new(-d.omega_z, 0.0);
    a[(3, 3)] = C64::new(-d.gamma_z, 0.0);
    a[(4, 5)] = C64::new(d.omega_phi, 0.0);
    a[(5, 0)] = C64::new(-kphi, 0.0);
    a[(5, 1)] = C64::new(-kphi, 0.0);
    a[(5, 4)] = C64::new(-d.omega_phi, 0.0);
    a[(5, 5)] = C64::new(-d.gamma_phi, 0.0);

    let mut b = InputMatrix::zeros();
    let sqrt_gamma = C64::new(d.gamma.sqrt(), 0.0);
    b[(0, 0)] = sqrt_gamma;
    b[(1, 1)] = sqrt_gamma;
    b[(3, 2)] = C64::new(1.0, 0.0);
    b[(5, 3)] = C64::new(1.0, 0.0);

    let mut eigenvalues = drift_eigenvalues(&a);
    eigenvalues.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap()
            .then(x.im.partial_cmp(&y.im).unwrap())
    });
    let stable = eigenvalues.iter().all(|ev| ev.re < 0.0);

    LinearModel {
        drift: a,
        input: b,
        eigenvalues: eigenvalues.try_into().expect("six eigenvalues"),
        stable,
    }
}

/// Eigenvalues via the Hermitian-quadrature similarity transform, where the
/// drift matrix is real and the characteristic polynomial has real
/// coefficients (eigenvalues come in conjugate pairs).
fn drift_eigenvalues(a: &StateMatrix) -> Vec<C64> {
    let aq = quadrature_drift(a);
    let dm = DMatrix::from_fn(6, 6, |r, c| aq[(r, c)]);
    dm.complex_eigenvalues().iter().copied().collect()
}

/// Real drift matrix in the basis (δX, δY, δz, δp_z, δφ, δL_z) with
/// δX = (δa+δa†)/√2, δY = −i(δa−δa†)/√2. Pure utility; the complex pair
/// basis stays canonical everywhere else.
pub fn quadrature_drift(a: &StateMatrix) -> SMatrix<f64, 6, 6> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let i = C64::i();
    let mut u = StateMatrix::identity();
    u[(0, 0)] = C64::new(s, 0.0);
    u[(0, 1)] = C64::new(s, 0.0);
    u[(1, 0)] = -i * s;
    u[(1, 1)] = i * s;
    let mut uinv = StateMatrix::identity();
    uinv[(0, 0)] = C64::new(s, 0.0);
    uinv[(0, 1)] = i * s;
    uinv[(1, 0)] = C64::new(s, 0.0);
    uinv[(1, 1)] = -i * s;
    let aq = u * a * uinv;
    let scale = aq.iter().map(|z| z.norm()).fold(0.0, f64::max);
    debug_assert!(
        aq.iter().all(|z| z.im.abs() <= 1e-12 * scale),
        "quadrature-basis drift must be real"
    );
    aq.map(|z| z.re)
}

/// Frequency-domain solve T(ω) = (−iω·I − A)⁻¹·B.
///
/// Refuses unstable models (spectra would be meaningless) and verifies the
/// solve residual ‖(−iωI − A)·T − B‖ ≤ 1e-10·‖B‖ in the max norm.
pub fn transfer(m: &LinearModel, omega: f64) -> Result<TransferMatrix> {
    if !m.stable {
        return Err(Error::UnstableSystem);
    }
    let resolvent = StateMatrix::identity() * C64::new(0.0, -omega) - m.drift;
    let lu = resolvent.lu();
    let t = lu.solve(&m.input).ok_or(Error::SingularMatrix { omega })?;

    let b_norm = m.input.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let residual = (resolvent * t - m.input)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if residual > TRANSFER_RESIDUAL_TOL * b_norm {
        return Err(Error::SingularMatrix { omega });
    }
    Ok(TransferMatrix { omega, matrix: t })
}
