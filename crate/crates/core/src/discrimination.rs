//! State-discrimination quantities: the s-overlap Q_s = Tr(ρ̂^s ζ̂^{1-s}),
//! its minimum over s ∈ [0,1], the quantum Chernoff bound ξ_QCB = -ln min Q_s,
//! the trace norm, and the k-copy minimal error probability
//! P_min^(k) = ½(1 - ½‖ρ̂^⊗k - ζ̂^⊗k‖₁).

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::fock::{hermitian_eigen, SectorOperator, HERMITICITY_TOL};
use crate::search::{self, ScalarMin};
use crate::states::DensityOperator;

/// Spectrum values below `CLIP_REL` times the largest eigenvalue are treated
/// as exact zeros before fractional powers, so round-off cannot produce NaN
/// under λ^s.
pub const CLIP_REL: f64 = 1e-12;

/// Bracket tolerance for the golden-section search over s.
pub const S_BRACKET_TOL: f64 = 1e-10;

/// Grid size seeding the s-search (uniform on [0,1], endpoints included).
pub const S_GRID_POINTS: usize = 11;

/// Largest dense dimension allowed for a tensor-power computation. 256 admits
/// k = 4 copies of a state supported on the four-dimensional three-photon
/// sector.
pub const TENSOR_DIM_BUDGET: usize = 256;

/// Cross-spectrum weights |⟨v_i|w_j⟩|² below this are discarded when building
/// the overlap kernel; orthogonal eigenvector pairs produce pure round-off
/// at the 1e-33 scale, far below any physical overlap handled here.
const KERNEL_WEIGHT_CUTOFF: f64 = 1e-28;

#[derive(Debug, Error)]
pub enum DiscriminationError {
    #[error("basis mismatch: operands live on different Fock truncations")]
    BasisMismatch,
    #[error("trace norm requires a Hermitian operator, max |A - A†| entry = {0:.3e}")]
    NotHermitian(f64),
    #[error("states have orthogonal supports: the Chernoff exponent is infinite")]
    OrthogonalSupports,
    #[error("copy count must be at least 1")]
    InvalidCopies,
    #[error(
        "tensor power too large: support dimension {dim}^{copies} exceeds the budget of {budget}"
    )]
    TensorPowerTooLarge {
        dim: usize,
        copies: u32,
        budget: usize,
    },
}

/// Minimum of the s-overlap and where it was attained.
#[derive(Debug, Clone, Copy)]
pub struct SOverlapResult {
    /// min over s ∈ [0,1] of Tr(ρ̂^s ζ̂^{1-s}).
    pub q_star: f64,
    /// The minimizing s.
    pub s_star: f64,
    /// Number of Q_s evaluations spent by the optimizer.
    pub evaluations: usize,
}

/// Clips a spectrum: values below `CLIP_REL` times the largest eigenvalue
/// become exact zeros.
fn clip_spectrum(vals: &mut [f64]) {
    let max = vals.iter().copied().fold(0.0, f64::max);
    let cut = CLIP_REL * max;
    for v in vals.iter_mut() {
        if *v < cut {
            *v = 0.0;
        }
    }
}

/// Precomputed spectral data for evaluating Q_s at many values of s.
///
/// Per sector, with ρ = V D V† and ζ = W E W†,
/// Q_s = Σ_{ij} D_i^s E_j^{1-s} |⟨v_i|w_j⟩|²; only terms with both
/// eigenvalues positive survive the support convention, so the kernel keeps
/// (ln D_i, ln E_j, weight) triples for those.
struct OverlapKernel {
    terms: Vec<(f64, f64, f64)>,
}

impl OverlapKernel {
    fn build(rho: &DensityOperator, zeta: &DensityOperator) -> Result<Self, DiscriminationError> {
        if rho.basis() != zeta.basis() {
            return Err(DiscriminationError::BasisMismatch);
        }
        let mut rho_spectra = Vec::new();
        let mut zeta_spectra = Vec::new();
        let mut weights = Vec::new();
        for n in 0..=rho.basis().n_max() {
            let (d, v) = hermitian_eigen(rho.block(n));
            let (e, w) = hermitian_eigen(zeta.block(n));
            let cross = v.adjoint() * w;
            rho_spectra.push(d);
            zeta_spectra.push(e);
            weights.push(cross);
        }
        // clip against the global largest eigenvalue of each state
        let mut d_all: Vec<f64> = rho_spectra.iter().flat_map(|v| v.iter().copied()).collect();
        let mut e_all: Vec<f64> = zeta_spectra
            .iter()
            .flat_map(|v| v.iter().copied())
            .collect();
        clip_spectrum(&mut d_all);
        clip_spectrum(&mut e_all);

        let mut terms = Vec::new();
        let mut offset = 0;
        for (sector, cross) in weights.iter().enumerate() {
            let dim = sector + 1;
            for i in 0..dim {
                for j in 0..dim {
                    let d = d_all[offset + i];
                    let e = e_all[offset + j];
                    if d <= 0.0 || e <= 0.0 {
                        continue;
                    }
                    let w = cross[(i, j)].norm_sqr();
                    if w < KERNEL_WEIGHT_CUTOFF {
                        continue;
                    }
                    terms.push((d.ln(), e.ln(), w));
                }
            }
            offset += dim;
        }
        Ok(OverlapKernel { terms })
    }

    fn eval(&self, s: f64) -> f64 {
        // empty kernel = orthogonal supports, Q_s ≡ 0 (an empty f64 sum
        // would yield -0.0)
        if self.terms.is_empty() {
            return 0.0;
        }
        self.terms
            .iter()
            .map(|&(ln_d, ln_e, w)| w * (s * ln_d + (1.0 - s) * ln_e).exp())
            .sum()
    }
}

/// Tr(ρ̂^s ζ̂^{1-s}) for a fixed s ∈ [0,1], computed per sector from the
/// Hermitian eigendecompositions with the zero-eigenvalue support convention.
pub fn s_overlap(
    rho: &DensityOperator,
    zeta: &DensityOperator,
    s: f64,
) -> Result<f64, DiscriminationError> {
    assert!((0.0..=1.0).contains(&s), "s must lie in [0, 1], got {s}");
    let kernel = OverlapKernel::build(rho, zeta)?;
    Ok(kernel.eval(s))
}

/// min over s ∈ [0,1] of Q_s and its minimizer.
///
/// ln Q_s is convex, so a single golden-section refinement of the best cell
/// of an 11-point uniform grid locates the minimum; both endpoints stay in
/// the running with the support convention applied there.
pub fn minimize_s_overlap(
    rho: &DensityOperator,
    zeta: &DensityOperator,
) -> Result<SOverlapResult, DiscriminationError> {
    let kernel = OverlapKernel::build(rho, zeta)?;
    Ok(minimize_kernel(&kernel))
}

fn minimize_kernel(kernel: &OverlapKernel) -> SOverlapResult {
    let ScalarMin {
        x,
        value,
        evaluations,
    } = search::grid_seeded_min(|s| kernel.eval(s), 0.0, 1.0, S_GRID_POINTS, S_BRACKET_TOL);
    SOverlapResult {
        q_star: value,
        s_star: x,
        evaluations,
    }
}

/// The quantum Chernoff bound ξ_QCB = -ln min_s Tr(ρ̂^s ζ̂^{1-s}).
///
/// States with orthogonal supports have Q_s ≡ 0 and are reported as
/// [`DiscriminationError::OrthogonalSupports`] rather than as an overflowing
/// number.
pub fn chernoff_bound(
    rho: &DensityOperator,
    zeta: &DensityOperator,
) -> Result<f64, DiscriminationError> {
    let result = minimize_s_overlap(rho, zeta)?;
    if result.q_star <= 0.0 {
        return Err(DiscriminationError::OrthogonalSupports);
    }
    Ok(-result.q_star.ln())
}

/// Trace norm ‖A‖₁ of a Hermitian sector operator: the sum of absolute
/// eigenvalues across all sector blocks.
pub fn trace_norm(op: &SectorOperator) -> Result<f64, DiscriminationError> {
    let dev = op.hermiticity_error();
    if dev > HERMITICITY_TOL {
        return Err(DiscriminationError::NotHermitian(dev));
    }
    Ok(op.hermitian_eigenvalues().into_iter().map(f64::abs).sum())
}

fn kron_power(m: &DMatrix<Complex64>, k: u32) -> DMatrix<Complex64> {
    let mut out = m.clone();
    for _ in 1..k {
        out = out.kronecker(m);
    }
    out
}

/// Minimal error probability of discriminating two equiprobable states from
/// k independent copies: P_min^(k) = ½(1 - ½‖ρ̂^⊗k - ζ̂^⊗k‖₁).
///
/// Both states are restricted to the union of their support sectors before
/// the Kronecker powers are taken; the resulting dense dimension must stay
/// within [`TENSOR_DIM_BUDGET`].
pub fn p_min_k(
    rho: &DensityOperator,
    zeta: &DensityOperator,
    k: u32,
) -> Result<f64, DiscriminationError> {
    if rho.basis() != zeta.basis() {
        return Err(DiscriminationError::BasisMismatch);
    }
    if k == 0 {
        return Err(DiscriminationError::InvalidCopies);
    }
    let mut sectors = rho.support_sectors();
    for n in zeta.support_sectors() {
        if !sectors.contains(&n) {
            sectors.push(n);
        }
    }
    sectors.sort_unstable();
    let dim: usize = sectors.iter().map(|&n| n + 1).sum();
    let powered = dim.checked_pow(k).filter(|&d| d <= TENSOR_DIM_BUDGET);
    if powered.is_none() {
        return Err(DiscriminationError::TensorPowerTooLarge {
            dim,
            copies: k,
            budget: TENSOR_DIM_BUDGET,
        });
    }

    let rho_dense = rho.op().dense_on_sectors(&sectors);
    let zeta_dense = zeta.op().dense_on_sectors(&sectors);
    let diff = kron_power(&rho_dense, k) - kron_power(&zeta_dense, k);
    let (vals, _) = hermitian_eigen(&diff);
    let norm: f64 = vals.iter().map(|l| l.abs()).sum();
    // the exact value lies in [0, 1/2]; trim eigenvalue round-off
    Ok((0.5 * (1.0 - 0.5 * norm)).clamp(0.0, 0.5))
}
