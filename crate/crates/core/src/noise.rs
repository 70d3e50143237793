//! Input-noise correlation matrices.
//!
//! Noise enters through four channels ordered (δa_in, δa_in†, δε_z, δε_φ):
//! optical vacuum from the drive and one independent Brownian bath per
//! mechanical mode. Every density in this crate strips the same
//! delta-function normalization,
//!
//! ```text
//! ⟨n_i(ω) n_j(ω′)⟩ = 2π·δ(ω+ω′)·C_ij(ω)
//! ```
//!
//! The quantum Brownian kernel is
//! S_j(ω) = (γ_j/ω_j)·ω·[1 + coth(ħω/(2 k_B T))].

use nalgebra::SMatrix;
use num_complex::Complex;

use crate::constants::{HBAR, K_B};
use crate::params::DerivedParams;

pub type C64 = Complex<f64>;
pub type NoiseMatrix = SMatrix<C64, 4, 4>;

/// Which part of the (generally non-symmetric) correlation is carried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Flavor {
    /// Operator-ordered correlation as written.
    Raw,
    /// (C(ω) + C(−ω)ᵀ)/2 — the measurable variance convention.
    Symmetrized,
    /// C(ω) − C(−ω)ᵀ — the canonical (T-independent) part.
    Commutator,
}

/// 4×4 input correlation density at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct InputCorrelation {
    pub omega: f64,
    pub temperature: f64,
    pub flavor: Flavor,
    pub matrix: NoiseMatrix,
}

/// Quantum Brownian spectral density (γ_j/ω_j)·ω·[1 + coth(ħω/(2k_B T))]
/// in the dimensionless-coordinate convention.
///
/// The small-argument branch uses ω·coth(x) → 2k_BT/ħ + ħω²/(6k_BT); for
/// |x| > 30 coth saturates to sign(x) exactly; at T = 0 the density is the
/// one-sided 2ω·θ(ω) form (zero at ω = 0).
pub fn brownian_spectrum(omega: f64, temperature: f64, gamma_j: f64, omega_j: f64) -> f64 {
    let scale = gamma_j / omega_j;
    if temperature == 0.0 {
        return if omega > 0.0 {
            scale * 2.0 * omega
        } else {
            0.0
        };
    }
    let x = HBAR * omega / (2.0 * K_B * temperature);
    if x.abs() < 1e-6 {
        scale
            * (omega
                + 2.0 * K_B * temperature / HBAR
                + HBAR * omega * omega / (6.0 * K_B * temperature))
    } else if x.abs() > 30.0 {
        scale * omega * (1.0 + x.signum())
    } else {
        scale * omega * (1.0 + 1.0 / x.tanh())
    }
}

fn raw_matrix(omega: f64, temperature: f64, d: &DerivedParams) -> NoiseMatrix {
    let mut c = NoiseMatrix::zeros();
    c[(0, 1)] = C64::new(1.0, 0.0); // ⟨δa_in δa_in†⟩ vacuum
    c[(2, 2)] = C64::new(
        brownian_spectrum(omega, temperature, d.gamma_z, d.omega_z),
        0.0,
    );
    c[(3, 3)] = C64::new(
        brownian_spectrum(omega, temperature, d.gamma_phi, d.omega_phi),
        0.0,
    );
    c
}

/// Input correlation matrix at (ω, T) in the requested flavor.
pub fn input_correlation(
    omega: f64,
    temperature: f64,
    d: &DerivedParams,
    flavor: Flavor,
) -> InputCorrelation {
    let matrix = match flavor {
        Flavor::Raw => raw_matrix(omega, temperature, d),
        Flavor::Symmetrized => {
            (raw_matrix(omega, temperature, d) + raw_matrix(-omega, temperature, d).transpose())
                / C64::new(2.0, 0.0)
        }
        Flavor::Commutator => {
            raw_matrix(omega, temperature, d) - raw_matrix(-omega, temperature, d).transpose()
        }
    };
    InputCorrelation {
        omega,
        temperature,
        flavor,
        matrix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_params, PhysicalParams};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    const GJ: f64 = 2.0 * std::f64::consts::PI;
    const WJ: f64 = 2.0e6 * std::f64::consts::PI;

    #[test]
    fn low_frequency_limit_is_classical() {
        // ω → 0⁺ at T > 0 → (γ_j/ω_j)·2k_BT/ħ
        let t = 1.0;
        let expect = GJ / WJ * 2.0 * K_B * t / HBAR;
        assert_relative_eq!(
            brownian_spectrum(1e-3, t, GJ, WJ),
            expect,
            max_relative = 1e-6
        );
        assert_relative_eq!(
            brownian_spectrum(0.0, t, GJ, WJ),
            expect,
            max_relative = 1e-12
        );
    }

    #[test]
    fn antisymmetric_part_is_temperature_free() {
        // S(ω) − S(−ω) = 2(γ_j/ω_j)·ω across all kernel branches; the
        // subtraction inherits rounding noise at the scale of S itself
        for t in [0.0, 1e-9, 1e-3, 1.0, 300.0] {
            for w in [1e-2, 1.0, 1e3, WJ, 50.0 * WJ] {
                let s_plus = brownian_spectrum(w, t, GJ, WJ);
                let diff = s_plus - brownian_spectrum(-w, t, GJ, WJ);
                let cancellation_noise = 4.0 * f64::EPSILON * s_plus.abs();
                assert_relative_eq!(
                    diff,
                    2.0 * GJ / WJ * w,
                    max_relative = 1e-9,
                    epsilon = cancellation_noise
                );
            }
        }
    }

    #[test]
    fn zero_temperature_is_one_sided() {
        assert_relative_eq!(
            brownian_spectrum(WJ, 0.0, GJ, WJ),
            2.0 * GJ,
            max_relative = 1e-12
        );
        assert_eq!(brownian_spectrum(-WJ, 0.0, GJ, WJ), 0.0);
        assert_eq!(brownian_spectrum(0.0, 0.0, GJ, WJ), 0.0);
    }

    fn derived() -> DerivedParams {
        derive_params(&PhysicalParams::default()).unwrap().0
    }

    #[test]
    fn optical_blocks_by_flavor() {
        let d = derived();
        for t in [0.0, 4.0] {
            let comm = input_correlation(0.3 * WJ, t, &d, Flavor::Commutator);
            assert_eq!(comm.matrix[(0, 1)].re, 1.0);
            assert_eq!(comm.matrix[(1, 0)].re, -1.0);
            let sym = input_correlation(0.3 * WJ, t, &d, Flavor::Symmetrized);
            assert_eq!(sym.matrix[(0, 1)].re, 0.5);
            assert_eq!(sym.matrix[(1, 0)].re, 0.5);
        }
    }

    #[test]
    fn symmetrized_brownian_diagonal_is_omega_coth() {
        let d = derived();
        let (w, t) = (0.7 * d.omega_z, 2.0);
        let sym = input_correlation(w, t, &d, Flavor::Symmetrized);
        let x = HBAR * w / (2.0 * K_B * t);
        let expect = d.gamma_z / d.omega_z * w / x.tanh();
        assert_relative_eq!(sym.matrix[(2, 2)].re, expect, max_relative = 1e-9);
    }

    #[test]
    fn no_cross_correlations() {
        let d = derived();
        for flavor in [Flavor::Raw, Flavor::Symmetrized, Flavor::Commutator] {
            let c = input_correlation(0.9 * d.omega_z, 1.0, &d, flavor).matrix;
            for i in 0..4 {
                for j in 0..4 {
                    let optical_block = i < 2 && j < 2;
                    let mech_diag = i == j && i >= 2;
                    if !optical_block && !mech_diag {
                        assert_eq!(c[(i, j)], C64::new(0.0, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn symmetrized_gram_form_is_positive() {
        // positivity of ⟨x x†⟩ for x = Σ c_i n_i: the Gram matrix is C·Σ
        // with Σ the optical-index swap (conjugation permutation).
        let d = derived();
        let mut swap = NoiseMatrix::zeros();
        swap[(0, 1)] = C64::new(1.0, 0.0);
        swap[(1, 0)] = C64::new(1.0, 0.0);
        swap[(2, 2)] = C64::new(1.0, 0.0);
        swap[(3, 3)] = C64::new(1.0, 0.0);
        for w in [
            -3.0 * d.omega_z,
            -d.omega_z,
            0.1,
            d.omega_z,
            5.0 * d.omega_z,
        ] {
            for t in [0.0, 0.1, 10.0] {
                let gram = input_correlation(w, t, &d, Flavor::Symmetrized).matrix * swap;
                // Hermitian with this structure; eigenvalues must be >= 0
                let eig = gram.map(|z| z.re).symmetric_eigenvalues();
                for ev in eig.iter() {
                    assert!(
                        *ev >= -1e-12,
                        "negative Gram eigenvalue {ev} at w={w}, T={t}"
                    );
                }
            }
        }
    }

    proptest! {
        /// RAW = SYMMETRIZED + COMMUTATOR/2 identically, and the flavor
        /// symmetries hold at every (ω, T).
        #[test]
        fn flavor_decomposition(w in -1e8..1e8f64, t in 0.0..400.0f64) {
            let d = derived();
            let raw = input_correlation(w, t, &d, Flavor::Raw).matrix;
            let sym = input_correlation(w, t, &d, Flavor::Symmetrized).matrix;
            let comm = input_correlation(w, t, &d, Flavor::Commutator).matrix;
            let recon = sym + comm / C64::new(2.0, 0.0);
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert!((raw[(i,j)] - recon[(i,j)]).norm()
                        <= 1e-12 * raw[(i,j)].norm().max(1.0));
                }
            }
            // C_sym(ω) = C_sym(−ω)ᵀ ; C_comm(ω) = −C_comm(−ω)ᵀ
            let sym_m = input_correlation(-w, t, &d, Flavor::Symmetrized).matrix.transpose();
            let comm_m = input_correlation(-w, t, &d, Flavor::Commutator).matrix.transpose();
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert!((sym[(i,j)] - sym_m[(i,j)]).norm() <= 1e-12 * sym[(i,j)].norm().max(1.0));
                    prop_assert!((comm[(i,j)] + comm_m[(i,j)]).norm() <= 1e-12 * comm[(i,j)].norm().max(1.0));
                }
            }
        }

        /// The commutator flavor carries no temperature dependence beyond
        /// the rounding noise of the defining subtraction.
        #[test]
        fn commutator_is_temperature_independent(w in -1e8..1e8f64, t in 1e-6..400.0f64) {
            let d = derived();
            let a = input_correlation(w, t, &d, Flavor::Commutator).matrix;
            let b = input_correlation(w, 0.0, &d, Flavor::Commutator).matrix;
            let raw_scale = input_correlation(w, t, &d, Flavor::Raw)
                .matrix
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            let noise = 8.0 * f64::EPSILON * raw_scale;
            for i in 0..4 {
                for j in 0..4 {
                    let err = (a[(i,j)] - b[(i,j)]).norm();
                    prop_assert!(err <= 1e-9 * a[(i,j)].norm() + noise,
                        "entry ({i},{j}): err {err:e} vs scale {raw_scale:e}");
                }
            }
        }
    }

    #[test]
    fn kernel_branch_continuity() {
        // series vs direct evaluation near the branch point
        let t = 1.0;
        let x_edge = 1e-6;
        let w_edge = x_edge * 2.0 * K_B * t / HBAR;
        let a = brownian_spectrum(w_edge * 0.999, t, GJ, WJ);
        let b = brownian_spectrum(w_edge * 1.001, t, GJ, WJ);
        assert_abs_diff_eq!(a, b, epsilon = 1e-6 * a.abs());
    }
}
