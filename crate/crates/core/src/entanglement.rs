//! Concurrence of three-photon Bell-diagonal states: the closed form
//! C = max{0, λ₁ - λ₂ - λ₃ - λ₄} on the sorted weights, the two family
//! formulas, and a general two-qubit Wootters computation used as an
//! independent cross-check.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::fock::hermitian_eigen;
use crate::search::bisect;
use crate::states::{BellDiagonalParams, DensityOperator, StateError, SUPPORT_TOL};

#[derive(Debug, Error)]
pub enum EntanglementError {
    #[error("state carries weight {weight:.3e} in sector {sector}: concurrence is defined only on the three-photon sector")]
    SupportOutsideSectorThree { sector: usize, weight: f64 },
    #[error("basis too small: the three-photon sector needs n_max >= 3, got {0}")]
    BasisTooSmall(usize),
}

/// Fixed identification of the three-photon sector with two logical qubits:
/// |3,0⟩↔|00⟩, |2,1⟩↔|01⟩, |1,2⟩↔|10⟩, |0,3⟩↔|11⟩.
///
/// It sends |Ψ±⟩ to (|00⟩±|11⟩)/√2 and |Φ±⟩ to (|01⟩±|10⟩)/√2, i.e. onto
/// genuine two-qubit Bell states. Any other bijection with that property
/// gives the same concurrence by local-unitary invariance, but one must be
/// fixed for the spin-flip conjugation step.
#[derive(Debug, Clone, Copy)]
pub struct LogicalQubitMap {
    sector_to_logical: [usize; 4],
}

impl LogicalQubitMap {
    /// With the sector ordering (|3,0⟩, |2,1⟩, |1,2⟩, |0,3⟩) and the logical
    /// ordering (|00⟩, |01⟩, |10⟩, |11⟩) the identification is the identity
    /// permutation.
    pub fn standard() -> Self {
        LogicalQubitMap {
            sector_to_logical: [0, 1, 2, 3],
        }
    }

    pub fn sector_to_logical(&self, sector_index: usize) -> usize {
        self.sector_to_logical[sector_index]
    }

    /// Rewrites a 4×4 sector-3 block in the logical two-qubit product basis.
    pub fn to_logical(&self, block: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        assert_eq!(block.nrows(), 4);
        assert_eq!(block.ncols(), 4);
        let mut out = DMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                out[(self.sector_to_logical[i], self.sector_to_logical[j])] = block[(i, j)];
            }
        }
        out
    }
}

impl Default for LogicalQubitMap {
    fn default() -> Self {
        LogicalQubitMap::standard()
    }
}

/// C = max{0, λ₁ - λ₂ - λ₃ - λ₄} with the weights sorted in decreasing
/// order; equivalently max{0, 2λ₁ - 1}.
pub fn concurrence_bell_diagonal(p: &BellDiagonalParams) -> f64 {
    let mut weights = p.as_array();
    weights.sort_by(|a, b| b.total_cmp(a));
    (weights[0] - weights[1] - weights[2] - weights[3]).max(0.0)
}

/// Werner-family concurrence: 0 on a ∈ [0, 1/3], (3a - 1)/2 above.
pub fn concurrence_werner(a: f64) -> Result<f64, StateError> {
    if !(0.0..=1.0).contains(&a) || a.is_nan() {
        return Err(StateError::WernerParamOutOfRange(a));
    }
    if a <= 1.0 / 3.0 {
        Ok(0.0)
    } else {
        Ok((3.0 * a - 1.0) / 2.0)
    }
}

/// Parameter where the x-family concurrence becomes positive: the real root
/// of x³ + x² + x = 1, located by bisection to 1e-14. The printed literature
/// value 0.544 is this number rounded.
pub fn x_concurrence_threshold() -> f64 {
    static THRESHOLD: OnceLock<f64> = OnceLock::new();
    *THRESHOLD.get_or_init(|| {
        let (root, _) = bisect(|t| t * t * t + t * t + t - 1.0, 0.0, 1.0, 1e-14)
            .expect("sign change on [0, 1]");
        root
    })
}

/// x-family concurrence: (-1-x+x²-x³)/2 below the negative threshold, zero
/// in the middle band, (-1+x+x²+x³)/2 above the positive threshold, with
/// the thresholds at ±[`x_concurrence_threshold`].
pub fn concurrence_x_family(x: f64) -> Result<f64, StateError> {
    if !(-1.0..=1.0).contains(&x) || x.is_nan() {
        return Err(StateError::XParamOutOfRange(x));
    }
    let threshold = x_concurrence_threshold();
    if x > threshold {
        Ok((-1.0 + x + x * x + x * x * x) / 2.0)
    } else if x < -threshold {
        Ok((-1.0 - x + x * x - x * x * x) / 2.0)
    } else {
        Ok(0.0)
    }
}

/// Y ⊗ Y in the logical product basis, Y being the second Pauli matrix.
fn spin_flip_matrix() -> DMatrix<Complex64> {
    let mut yy = DMatrix::zeros(4, 4);
    let one = Complex64::new(1.0, 0.0);
    yy[(0, 3)] = -one;
    yy[(1, 2)] = one;
    yy[(2, 1)] = one;
    yy[(3, 0)] = -one;
    yy
}

/// Principal square root of a Hermitian PSD block, round-off negatives
/// clamped to zero.
fn hermitian_sqrt(block: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (vals, vecs) = hermitian_eigen(block);
    let mut scaled = vecs.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        let root = Complex64::new(vals[j].max(0.0).sqrt(), 0.0);
        for z in col.iter_mut() {
            *z *= root;
        }
    }
    scaled * vecs.adjoint()
}

/// Wootters concurrence of a state supported in the three-photon sector.
///
/// The sector block is rewritten as a two-qubit density matrix through
/// [`LogicalQubitMap`], spin-flipped as ρ̃ = (Y⊗Y) ρ* (Y⊗Y) with entrywise
/// conjugation in the logical basis, and C = max{0, μ₁ - μ₂ - μ₃ - μ₄} where
/// the μᵢ are the decreasing square roots of the eigenvalues of ρρ̃
/// (computed as the Hermitian spectrum of √ρ ρ̃ √ρ, which shares them).
pub fn wootters_concurrence(rho: &DensityOperator) -> Result<f64, EntanglementError> {
    let n_max = rho.basis().n_max();
    if n_max < 3 {
        return Err(EntanglementError::BasisTooSmall(n_max));
    }
    for sector in 0..=n_max {
        if sector == 3 {
            continue;
        }
        let weight = rho.sector_weight(sector);
        if weight > SUPPORT_TOL {
            return Err(EntanglementError::SupportOutsideSectorThree { sector, weight });
        }
    }

    let map = LogicalQubitMap::standard();
    let rho4 = map.to_logical(rho.block(3));
    let yy = spin_flip_matrix();
    let rho_conj = rho4.map(|z| z.conj());
    let rho_tilde = &yy * rho_conj * &yy;

    let sqrt_rho = hermitian_sqrt(&rho4);
    let product = &sqrt_rho * rho_tilde * &sqrt_rho;
    let (vals, _) = hermitian_eigen(&product);
    let mut mu: Vec<f64> = vals.iter().map(|&l| l.max(0.0).sqrt()).collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockBasis;
    use crate::states::{
        bell_basis, bell_diagonal_state, unpolarized_state, werner_params, x_family_params,
        UnpolarizedSpec,
    };
    use approx::assert_abs_diff_eq;

    fn basis() -> FockBasis {
        FockBasis::new(3)
    }

    #[test]
    fn bell_diagonal_examples() {
        let uniform = BellDiagonalParams::new(0.25, 0.25, 0.25, 0.25).unwrap();
        assert_eq!(concurrence_bell_diagonal(&uniform), 0.0);

        let pure = BellDiagonalParams::new(0.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(concurrence_bell_diagonal(&pure), 1.0);

        // λ₁ = 1/2 sits exactly at the separability threshold
        let edge = BellDiagonalParams::new(0.5, 0.3, 0.1, 0.1).unwrap();
        assert_eq!(concurrence_bell_diagonal(&edge), 0.0);
    }

    #[test]
    fn werner_concurrence_piecewise() {
        assert_eq!(concurrence_werner(1.0 / 3.0).unwrap(), 0.0);
        assert_eq!(concurrence_werner(1.0).unwrap(), 1.0);
        let c = concurrence_werner(0.6).unwrap();
        assert_abs_diff_eq!(c, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(
            c,
            concurrence_bell_diagonal(&werner_params(0.6).unwrap()),
            epsilon = 1e-15
        );
        assert!(concurrence_werner(-0.2).is_err());
    }

    #[test]
    fn x_family_concurrence_piecewise() {
        assert_eq!(concurrence_x_family(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(concurrence_x_family(1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            concurrence_x_family(0.6).unwrap(),
            concurrence_bell_diagonal(&x_family_params(0.6).unwrap()),
            epsilon = 1e-12
        );
        assert!(concurrence_x_family(-1.2).is_err());
    }

    #[test]
    fn threshold_solves_the_cubic() {
        let t = x_concurrence_threshold();
        assert!((t * t * t + t * t + t - 1.0).abs() < 1e-13);
        assert_abs_diff_eq!(t, 0.544, epsilon = 5e-4); // printed literature rounding
    }

    #[test]
    fn logical_map_sends_bell_type_to_bell_states() {
        let bell = bell_basis(basis()).unwrap();
        let map = LogicalQubitMap::standard();
        // |Ψ+⟩ → (|00⟩ + |11⟩)/√2
        let psi = bell.psi_plus.outer();
        let logical = map.to_logical(psi.block(3));
        assert_abs_diff_eq!(logical[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(logical[(0, 3)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(logical[(3, 3)].re, 0.5, epsilon = 1e-15);
        // |Φ-⟩ → (|01⟩ - |10⟩)/√2
        let phi = bell.phi_minus.outer();
        let logical = map.to_logical(phi.block(3));
        assert_abs_diff_eq!(logical[(1, 1)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(logical[(1, 2)].re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(logical[(2, 2)].re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn wootters_on_known_states() {
        let mixed = unpolarized_state(basis(), &UnpolarizedSpec::delta(3, 3)).unwrap();
        assert_abs_diff_eq!(wootters_concurrence(&mixed).unwrap(), 0.0, epsilon = 1e-12);

        let pure = bell_diagonal_state(
            basis(),
            &BellDiagonalParams::new(0.0, 0.0, 0.0, 1.0).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(wootters_concurrence(&pure).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn wootters_rejects_support_outside_sector_three() {
        let vacuumish = unpolarized_state(basis(), &UnpolarizedSpec::delta(3, 2)).unwrap();
        assert!(matches!(
            wootters_concurrence(&vacuumish),
            Err(EntanglementError::SupportOutsideSectorThree { sector: 2, .. })
        ));
    }
}
