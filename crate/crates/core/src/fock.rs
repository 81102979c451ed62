//! Truncated two-mode Fock space organized by total-photon-number sector.
//!
//! Basis kets are |k, N-k⟩ with k horizontally and N-k vertically polarized
//! photons. Every operator in this crate (Stokes operators, polarization
//! unitaries, the state families built on top of them) conserves the total
//! photon number N, so operators are stored as one (N+1)×(N+1) complex block
//! per sector instead of a single dense matrix.
//!
//! Within sector N the basis ordering is fixed as |N,0⟩, |N-1,1⟩, …, |0,N⟩
//! (descending horizontal count); file formats rely on this ordering.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Per-entry tolerance for the Hermiticity check on sector blocks.
pub const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum FockError {
    #[error("sector {n} out of range: basis holds sectors 0..={n_max}")]
    SectorOutOfRange { n: usize, n_max: usize },
    #[error("operator is not Hermitian: max |A - A†| entry = {max_dev:.3e}")]
    NotHermitian { max_dev: f64 },
}

/// Truncated two-mode Fock basis with total photon number at most `n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasis {
    n_max: usize,
}

/// Default truncation: covers the three-photon sector with headroom for
/// multi-sector polarization tests.
pub const DEFAULT_N_MAX: usize = 6;

impl FockBasis {
    pub fn new(n_max: usize) -> Self {
        FockBasis { n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of sectors, `n_max + 1`.
    pub fn sector_count(&self) -> usize {
        self.n_max + 1
    }

    /// Dimension of sector N is N + 1.
    pub fn sector_dim(&self, n: usize) -> usize {
        n + 1
    }

    pub fn sector_dims(&self) -> Vec<usize> {
        (0..=self.n_max).map(|n| n + 1).collect()
    }

    /// Total dimension Σ_{N=0}^{n_max} (N+1).
    pub fn total_dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 2) / 2
    }

    /// Index of |k, N-k⟩ within sector N (descending horizontal count).
    pub fn index_in_sector(&self, n: usize, k: usize) -> usize {
        debug_assert!(k <= n);
        n - k
    }
}

impl Default for FockBasis {
    fn default() -> Self {
        FockBasis::new(DEFAULT_N_MAX)
    }
}

/// Euler angles (radians) parametrizing a polarization unitary.
///
/// All real values are accepted; periodicity is a property of the resulting
/// unitary, not of the angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub phi: f64,
    pub theta: f64,
    pub psi: f64,
}

impl EulerAngles {
    pub fn new(phi: f64, theta: f64, psi: f64) -> Self {
        EulerAngles { phi, theta, psi }
    }
}

/// Operator on the truncated two-mode space, stored as one complex
/// (N+1)×(N+1) block per total-photon-number sector.
///
/// The representation is exact for photon-number-conserving operators;
/// cross-sector couplings cannot be expressed, which is what makes sector
/// invariance hold by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorOperator {
    basis: FockBasis,
    blocks: Vec<DMatrix<Complex64>>,
}

impl SectorOperator {
    pub fn zeros(basis: FockBasis) -> Self {
        let blocks = (0..=basis.n_max())
            .map(|n| DMatrix::zeros(n + 1, n + 1))
            .collect();
        SectorOperator { basis, blocks }
    }

    pub fn identity(basis: FockBasis) -> Self {
        let blocks = (0..=basis.n_max())
            .map(|n| DMatrix::identity(n + 1, n + 1))
            .collect();
        SectorOperator { basis, blocks }
    }

    /// Builds from explicit per-sector blocks.
    ///
    /// Panics if the block count or any block dimension does not match the
    /// basis; malformed blocks are a programming error, not an input error.
    pub fn from_blocks(basis: FockBasis, blocks: Vec<DMatrix<Complex64>>) -> Self {
        assert_eq!(blocks.len(), basis.sector_count(), "block count mismatch");
        for (n, b) in blocks.iter().enumerate() {
            assert_eq!(b.nrows(), n + 1, "sector {n} block has wrong dimension");
            assert_eq!(b.ncols(), n + 1, "sector {n} block has wrong dimension");
        }
        SectorOperator { basis, blocks }
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn block(&self, n: usize) -> &DMatrix<Complex64> {
        &self.blocks[n]
    }

    pub fn block_mut(&mut self, n: usize) -> &mut DMatrix<Complex64> {
        &mut self.blocks[n]
    }

    pub fn blocks(&self) -> &[DMatrix<Complex64>] {
        &self.blocks
    }

    pub fn trace(&self) -> Complex64 {
        self.blocks
            .iter()
            .map(|b| b.diagonal().iter().sum::<Complex64>())
            .sum()
    }

    pub fn adjoint(&self) -> SectorOperator {
        SectorOperator {
            basis: self.basis,
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> SectorOperator {
        SectorOperator {
            basis: self.basis,
            blocks: self.blocks.iter().map(|b| b * c).collect(),
        }
    }

    /// Largest entry of |A - A†| across all blocks.
    pub fn hermiticity_error(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let dev = b - b.adjoint();
                dev.iter().map(|z| z.norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// Largest entry of |A - B| across all blocks.
    pub fn max_abs_diff(&self, other: &SectorOperator) -> f64 {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }

    /// U A U† with `self` as A.
    pub fn conjugate_by(&self, u: &SectorOperator) -> SectorOperator {
        assert_eq!(self.basis, u.basis, "basis mismatch");
        let blocks = self
            .blocks
            .iter()
            .zip(&u.blocks)
            .map(|(a, ub)| ub * a * ub.adjoint())
            .collect();
        SectorOperator {
            basis: self.basis,
            blocks,
        }
    }

    /// Eigenvalues of a Hermitian operator, all sectors concatenated,
    /// ascending within each sector.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.blocks
            .iter()
            .flat_map(|b| {
                let (vals, _) = hermitian_eigen(b);
                vals.iter().copied().collect::<Vec<_>>()
            })
            .collect()
    }

    /// Dense matrix on the subspace spanned by the listed sectors, in the
    /// given sector order. Off-block entries are zero by construction.
    pub fn dense_on_sectors(&self, sectors: &[usize]) -> DMatrix<Complex64> {
        let dim: usize = sectors.iter().map(|&n| n + 1).sum();
        let mut out = DMatrix::zeros(dim, dim);
        let mut offset = 0;
        for &n in sectors {
            let d = n + 1;
            out.view_mut((offset, offset), (d, d))
                .copy_from(&self.blocks[n]);
            offset += d;
        }
        out
    }

    /// Dense matrix on the full truncated space, sectors 0..=n_max in order.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let sectors: Vec<usize> = (0..=self.basis.n_max()).collect();
        self.dense_on_sectors(&sectors)
    }
}

impl std::ops::Add for &SectorOperator {
    type Output = SectorOperator;
    fn add(self, rhs: &SectorOperator) -> SectorOperator {
        assert_eq!(self.basis, rhs.basis, "basis mismatch");
        SectorOperator {
            basis: self.basis,
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &SectorOperator {
    type Output = SectorOperator;
    fn sub(self, rhs: &SectorOperator) -> SectorOperator {
        assert_eq!(self.basis, rhs.basis, "basis mismatch");
        SectorOperator {
            basis: self.basis,
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Mul for &SectorOperator {
    type Output = SectorOperator;
    fn mul(self, rhs: &SectorOperator) -> SectorOperator {
        assert_eq!(self.basis, rhs.basis, "basis mismatch");
        SectorOperator {
            basis: self.basis,
            blocks: self
                .blocks
                .iter()
                .zip(&rhs.blocks)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }
}

/// State vector supported in a single photon-number sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorVector {
    basis: FockBasis,
    sector: usize,
    coeffs: DVector<Complex64>,
}

impl SectorVector {
    pub fn new(
        basis: FockBasis,
        sector: usize,
        coeffs: DVector<Complex64>,
    ) -> Result<Self, FockError> {
        if sector > basis.n_max() {
            return Err(FockError::SectorOutOfRange {
                n: sector,
                n_max: basis.n_max(),
            });
        }
        assert_eq!(coeffs.len(), sector + 1, "coefficient length mismatch");
        Ok(SectorVector {
            basis,
            sector,
            coeffs,
        })
    }

    /// The basis ket |k, n-k⟩.
    pub fn basis_state(basis: FockBasis, k: usize, n_minus_k: usize) -> Result<Self, FockError> {
        let n = k + n_minus_k;
        if n > basis.n_max() {
            return Err(FockError::SectorOutOfRange {
                n,
                n_max: basis.n_max(),
            });
        }
        let mut coeffs = DVector::zeros(n + 1);
        coeffs[basis.index_in_sector(n, k)] = Complex64::new(1.0, 0.0);
        Ok(SectorVector {
            basis,
            sector: n,
            coeffs,
        })
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn sector(&self) -> usize {
        self.sector
    }

    pub fn coeffs(&self) -> &DVector<Complex64> {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    /// ⟨self|other⟩; zero when the supports live in different sectors.
    pub fn inner(&self, other: &SectorVector) -> Complex64 {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        if self.sector != other.sector {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs.dotc(&other.coeffs)
    }

    /// |self⟩⟨self| as a sector-block operator.
    pub fn outer(&self) -> SectorOperator {
        let mut op = SectorOperator::zeros(self.basis);
        let block = &self.coeffs * self.coeffs.adjoint();
        op.blocks[self.sector] = block;
        op
    }
}

/// Eigendecomposition of a Hermitian block: real eigenvalues (ascending) and
/// the unitary of column eigenvectors. The input is symmetrized first so that
/// last-ulp asymmetry from upstream arithmetic cannot leak in.
pub(crate) fn hermitian_eigen(block: &DMatrix<Complex64>) -> (DVector<f64>, DMatrix<Complex64>) {
    let sym = (block + block.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    (eig.eigenvalues, eig.eigenvectors)
}

/// exp(-i t H) for a Hermitian block H, via eigendecomposition.
fn exp_neg_i_scaled(block: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    let (vals, vecs) = hermitian_eigen(block);
    let phases = DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&l| Complex64::from_polar(1.0, -t * l)),
    );
    let mut scaled = vecs.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        let p = phases[j];
        for z in col.iter_mut() {
            *z *= p;
        }
    }
    scaled * vecs.adjoint()
}

/// The Stokes operators Ŝ1 = a_H†a_V + a_H a_V†, Ŝ2 = (a_H†a_V - a_H a_V†)/i,
/// Ŝ3 = a_H†a_H - a_V†a_V as sector-block Hermitian operators.
pub fn stokes_operators(basis: FockBasis) -> (SectorOperator, SectorOperator, SectorOperator) {
    let mut s1 = SectorOperator::zeros(basis);
    let mut s2 = SectorOperator::zeros(basis);
    let mut s3 = SectorOperator::zeros(basis);
    for n in 0..=basis.n_max() {
        let b1 = s1.block_mut(n);
        for k in 0..n {
            // a_H† a_V : |k, n-k⟩ -> √((k+1)(n-k)) |k+1, n-k-1⟩
            let amp = (((k + 1) * (n - k)) as f64).sqrt();
            let row = basis.index_in_sector(n, k + 1);
            let col = basis.index_in_sector(n, k);
            b1[(row, col)] += Complex64::new(amp, 0.0);
            // a_H a_V† is the adjoint term
            b1[(col, row)] += Complex64::new(amp, 0.0);
        }
        let b2 = s2.block_mut(n);
        for k in 0..n {
            let amp = (((k + 1) * (n - k)) as f64).sqrt();
            let row = basis.index_in_sector(n, k + 1);
            let col = basis.index_in_sector(n, k);
            b2[(row, col)] += Complex64::new(0.0, -amp);
            b2[(col, row)] += Complex64::new(0.0, amp);
        }
        let b3 = s3.block_mut(n);
        for k in 0..=n {
            let idx = basis.index_in_sector(n, k);
            b3[(idx, idx)] = Complex64::new(2.0 * k as f64 - n as f64, 0.0);
        }
    }
    (s1, s2, s3)
}

/// The polarization unitary
/// Û_pol(φ,θ,ψ) = exp(-i φ Ŝ3/2) · exp(-i θ Ŝ2/2) · exp(-i ψ Ŝ3/2),
/// computed per sector via Hermitian eigendecomposition of the Stokes blocks.
pub fn polarization_unitary(basis: FockBasis, angles: EulerAngles) -> SectorOperator {
    let (_, s2, s3) = stokes_operators(basis);
    let blocks = (0..=basis.n_max())
        .map(|n| {
            let f_phi = exp_neg_i_scaled(s3.block(n), angles.phi / 2.0);
            let f_theta = exp_neg_i_scaled(s2.block(n), angles.theta / 2.0);
            let f_psi = exp_neg_i_scaled(s3.block(n), angles.psi / 2.0);
            f_phi * f_theta * f_psi
        })
        .collect();
    SectorOperator::from_blocks(basis, blocks)
}

/// The projector P̂_N onto the n-photon subspace: identity block in sector n,
/// zero elsewhere.
pub fn projector_sector(basis: FockBasis, n: usize) -> Result<SectorOperator, FockError> {
    if n > basis.n_max() {
        return Err(FockError::SectorOutOfRange {
            n,
            n_max: basis.n_max(),
        });
    }
    let mut op = SectorOperator::zeros(basis);
    *op.block_mut(n) = DMatrix::identity(n + 1, n + 1);
    Ok(op)
}
