//! State families: Bell-type basis vectors, Bell-diagonal mixtures, the
//! Werner and x-parametrized families, unpolarized states, and the JSON
//! state specification consumed by the CLI.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::{FockBasis, FockError, SectorOperator, SectorVector, HERMITICITY_TOL};

/// Tolerance on the density-operator invariants: unit trace and eigenvalue
/// positivity are enforced to this absolute precision.
pub const DENSITY_TOL: f64 = 1e-12;

/// Sectors whose block carries less trace weight than this are treated as
/// outside the support of a state.
pub const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("werner parameter a must lie in [0, 1], got {0}")]
    WernerParamOutOfRange(f64),
    #[error("x-family parameter x must lie in [-1, 1], got {0}")]
    XParamOutOfRange(f64),
    #[error("bell-diagonal weight {name} must lie in [0, 1], got {value}")]
    BellWeightOutOfRange { name: &'static str, value: f64 },
    #[error("bell-diagonal weights must sum to 1 within {DENSITY_TOL:e}, got {0}")]
    BellWeightsNotNormalized(f64),
    #[error("unpolarized weight pi[{index}] must be nonnegative, got {value}")]
    UnpolarizedWeightNegative { index: usize, value: f64 },
    #[error("unpolarized weights must sum to 1 within {DENSITY_TOL:e}, got {0}")]
    UnpolarizedWeightsNotNormalized(f64),
    #[error(
        "unpolarized weight list has {got} entries, basis with n_max = {n_max} needs {expected}"
    )]
    UnpolarizedLengthMismatch {
        got: usize,
        expected: usize,
        n_max: usize,
    },
    #[error("basis too small: need n_max >= {needed}, got {n_max}")]
    BasisTooSmall { needed: usize, n_max: usize },
    #[error("density operator must be Hermitian within {HERMITICITY_TOL:e} per entry, max deviation {0:.3e}")]
    NotHermitian(f64),
    #[error("density operator must be positive semidefinite within {DENSITY_TOL:e}, min eigenvalue {0:.3e}")]
    NotPositive(f64),
    #[error("density operator must have unit trace within {DENSITY_TOL:e}, got trace {0}")]
    TraceNotOne(f64),
    #[error("dense block for sector {sector} must have {expected} row-major entries, got {got}")]
    DenseBlockShape {
        sector: usize,
        expected: usize,
        got: usize,
    },
    #[error("dense spec must provide {expected} blocks for n_max = {n_max}, got {got}")]
    DenseBlockCount {
        got: usize,
        expected: usize,
        n_max: usize,
    },
    #[error("invalid state JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// Positive, unit-trace sector-block operator: a physical state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    op: SectorOperator,
}

impl DensityOperator {
    /// Validates Hermiticity, positivity (eigenvalues ≥ -1e-12) and unit
    /// trace (|Tr - 1| < 1e-12) before wrapping.
    pub fn new(op: SectorOperator) -> Result<Self, StateError> {
        let herm = op.hermiticity_error();
        if herm > HERMITICITY_TOL {
            return Err(StateError::NotHermitian(herm));
        }
        let min_eig = op
            .hermitian_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -DENSITY_TOL {
            return Err(StateError::NotPositive(min_eig));
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(StateError::TraceNotOne(tr.re));
        }
        Ok(DensityOperator { op })
    }

    pub fn op(&self) -> &SectorOperator {
        &self.op
    }

    pub fn basis(&self) -> FockBasis {
        self.op.basis()
    }

    pub fn block(&self, n: usize) -> &DMatrix<Complex64> {
        self.op.block(n)
    }

    /// Tr ρ² — Frobenius norm squared of a Hermitian operator.
    pub fn purity(&self) -> f64 {
        self.op
            .blocks()
            .iter()
            .map(|b| b.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum()
    }

    /// Trace weight Tr(ρ P̂_N) carried by sector `n`.
    pub fn sector_weight(&self, n: usize) -> f64 {
        self.op.block(n).diagonal().iter().map(|z| z.re).sum()
    }

    /// Sectors carrying more than [`SUPPORT_TOL`] of trace weight.
    pub fn support_sectors(&self) -> Vec<usize> {
        (0..=self.basis().n_max())
            .filter(|&n| self.sector_weight(n) > SUPPORT_TOL)
            .collect()
    }

    /// U ρ U†. Unitary conjugation preserves the density invariants, so the
    /// result is wrapped without revalidation.
    pub fn conjugate_by(&self, u: &SectorOperator) -> DensityOperator {
        DensityOperator {
            op: self.op.conjugate_by(u),
        }
    }
}

/// Eigenvalue 4-tuple (α, β, γ, δ) of a three-photon Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
}

impl BellDiagonalParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self, StateError> {
        for (name, value) in [
            ("alpha", alpha),
            ("beta", beta),
            ("gamma", gamma),
            ("delta", delta),
        ] {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(StateError::BellWeightOutOfRange { name, value });
            }
        }
        let sum = alpha + beta + gamma + delta;
        if (sum - 1.0).abs() > DENSITY_TOL {
            return Err(StateError::BellWeightsNotNormalized(sum));
        }
        Ok(BellDiagonalParams {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Weights in constructor order (α, β, γ, δ).
    pub fn as_array(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }
}

/// Sector-weight distribution {π_N} defining an unpolarized state.
#[derive(Debug, Clone, PartialEq)]
pub struct UnpolarizedSpec {
    pi: Vec<f64>,
}

impl UnpolarizedSpec {
    pub fn new(pi: Vec<f64>) -> Result<Self, StateError> {
        for (index, &value) in pi.iter().enumerate() {
            if value < 0.0 || value.is_nan() {
                return Err(StateError::UnpolarizedWeightNegative { index, value });
            }
        }
        let sum: f64 = pi.iter().sum();
        if (sum - 1.0).abs() > DENSITY_TOL {
            return Err(StateError::UnpolarizedWeightsNotNormalized(sum));
        }
        Ok(UnpolarizedSpec { pi })
    }

    /// All weight on one sector: π_N = δ_{N,sector}.
    pub fn delta(n_max: usize, sector: usize) -> Self {
        let mut pi = vec![0.0; n_max + 1];
        pi[sector] = 1.0;
        UnpolarizedSpec { pi }
    }

    pub fn pi(&self) -> &[f64] {
        &self.pi
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    /// Same distribution on a larger basis, padded with zero weights.
    pub fn padded_to(&self, n_max: usize) -> UnpolarizedSpec {
        let mut pi = self.pi.clone();
        pi.resize(n_max + 1, 0.0);
        UnpolarizedSpec { pi }
    }
}

/// The four Bell-type vectors of the three-photon sector.
#[derive(Debug, Clone)]
pub struct BellBasis {
    pub psi_plus: SectorVector,
    pub psi_minus: SectorVector,
    pub phi_plus: SectorVector,
    pub phi_minus: SectorVector,
}

impl BellBasis {
    /// In the order (Ψ+, Ψ-, Φ+, Φ-).
    pub fn vectors(&self) -> [&SectorVector; 4] {
        [
            &self.psi_plus,
            &self.psi_minus,
            &self.phi_plus,
            &self.phi_minus,
        ]
    }
}

fn superpose(
    basis: FockBasis,
    a: (usize, usize),
    b: (usize, usize),
    sign: f64,
) -> Result<SectorVector, StateError> {
    let ket_a = SectorVector::basis_state(basis, a.0, a.1)?;
    let ket_b = SectorVector::basis_state(basis, b.0, b.1)?;
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let coeffs: DVector<Complex64> =
        ket_a.coeffs() * inv_sqrt2 + ket_b.coeffs() * (inv_sqrt2 * sign);
    Ok(SectorVector::new(basis, ket_a.sector(), coeffs)?)
}

/// The Bell-type basis of the three-photon sector:
/// |Ψ±⟩ = (|3,0⟩ ± |0,3⟩)/√2 and |Φ±⟩ = (|2,1⟩ ± |1,2⟩)/√2.
pub fn bell_basis(basis: FockBasis) -> Result<BellBasis, StateError> {
    if basis.n_max() < 3 {
        return Err(StateError::BasisTooSmall {
            needed: 3,
            n_max: basis.n_max(),
        });
    }
    Ok(BellBasis {
        psi_plus: superpose(basis, (3, 0), (0, 3), 1.0)?,
        psi_minus: superpose(basis, (3, 0), (0, 3), -1.0)?,
        phi_plus: superpose(basis, (2, 1), (1, 2), 1.0)?,
        phi_minus: superpose(basis, (2, 1), (1, 2), -1.0)?,
    })
}

/// ρ̂ = α|Φ+⟩⟨Φ+| + β|Φ-⟩⟨Φ-| + γ|Ψ+⟩⟨Ψ+| + δ|Ψ-⟩⟨Ψ-|.
///
/// The four Bell-type vectors span the three-photon sector, so the sector-3
/// block spectrum is exactly {α, β, γ, δ}.
pub fn bell_diagonal_state(
    basis: FockBasis,
    p: &BellDiagonalParams,
) -> Result<DensityOperator, StateError> {
    let bell = bell_basis(basis)?;
    let weighted = [
        (p.alpha(), &bell.phi_plus),
        (p.beta(), &bell.phi_minus),
        (p.gamma(), &bell.psi_plus),
        (p.delta(), &bell.psi_minus),
    ];
    let mut op = SectorOperator::zeros(basis);
    for (w, v) in weighted {
        op = &op + &v.outer().scale(Complex64::new(w, 0.0));
    }
    DensityOperator::new(op)
}

/// Werner-family weights: α = β = γ = (1-a)/4, δ = (3a+1)/4.
pub fn werner_params(a: f64) -> Result<BellDiagonalParams, StateError> {
    if !(0.0..=1.0).contains(&a) || a.is_nan() {
        return Err(StateError::WernerParamOutOfRange(a));
    }
    let side = (1.0 - a) / 4.0;
    BellDiagonalParams::new(side, side, side, (3.0 * a + 1.0) / 4.0)
}

/// x-family weights:
/// α = (1-x+x²-x³)/4, β = (1-x-x²+x³)/4, γ = (1+x-x²-x³)/4, δ = (1+x+x²+x³)/4.
pub fn x_family_params(x: f64) -> Result<BellDiagonalParams, StateError> {
    if !(-1.0..=1.0).contains(&x) || x.is_nan() {
        return Err(StateError::XParamOutOfRange(x));
    }
    let x2 = x * x;
    let x3 = x2 * x;
    // the cubics are nonnegative on [-1, 1]; rounding can dip a hair below
    // zero near |x| = 1
    BellDiagonalParams::new(
        ((1.0 - x + x2 - x3) / 4.0).max(0.0),
        ((1.0 - x - x2 + x3) / 4.0).max(0.0),
        ((1.0 + x - x2 - x3) / 4.0).max(0.0),
        ((1.0 + x + x2 + x3) / 4.0).max(0.0),
    )
}

/// σ̂ = Σ_N π_N P̂_N/(N+1): each sector block is π_N/(N+1) times identity.
/// Such states are exactly the ones invariant under every polarization
/// unitary.
pub fn unpolarized_state(
    basis: FockBasis,
    spec: &UnpolarizedSpec,
) -> Result<DensityOperator, StateError> {
    let expected = basis.n_max() + 1;
    if spec.len() != expected {
        return Err(StateError::UnpolarizedLengthMismatch {
            got: spec.len(),
            expected,
            n_max: basis.n_max(),
        });
    }
    let mut op = SectorOperator::zeros(basis);
    for (n, &w) in spec.pi().iter().enumerate() {
        let dim = n + 1;
        let scale = Complex64::new(w / dim as f64, 0.0);
        *op.block_mut(n) = DMatrix::identity(dim, dim) * scale;
    }
    DensityOperator::new(op)
}

/// JSON state specification.
///
/// ```json
/// {"type":"werner","a":0.5}
/// {"type":"x_family","x":-0.25}
/// {"type":"bell_diagonal","alpha":0.4,"beta":0.3,"gamma":0.2,"delta":0.1}
/// {"type":"unpolarized","pi":[0.0,0.0,0.0,1.0]}
/// {"type":"dense","n_max":1,"blocks":[[[0.5,0.0]],[[0.25,0.0],...]]}
/// ```
///
/// Dense blocks are row-major lists of `[re, im]` pairs, one list per sector.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    BellDiagonal {
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
    },
    Werner {
        a: f64,
    },
    XFamily {
        x: f64,
    },
    Unpolarized {
        pi: Vec<f64>,
    },
    Dense {
        n_max: usize,
        blocks: Vec<Vec<[f64; 2]>>,
    },
}

impl StateSpec {
    pub fn from_json_str(s: &str) -> Result<Self, StateError> {
        serde_json::from_str(s).map_err(|e| StateError::Json(e.to_string()))
    }

    /// Smallest n_max this spec can be realized on.
    pub fn min_n_max(&self) -> usize {
        match self {
            StateSpec::BellDiagonal { .. }
            | StateSpec::Werner { .. }
            | StateSpec::XFamily { .. } => 3,
            StateSpec::Unpolarized { pi } => pi.len().saturating_sub(1),
            StateSpec::Dense { n_max, .. } => *n_max,
        }
    }

    /// Builds the state on `basis`, which must satisfy
    /// `basis.n_max() >= self.min_n_max()`. Unpolarized and dense specs
    /// smaller than the basis are padded with zero sectors.
    pub fn build(&self, basis: FockBasis) -> Result<DensityOperator, StateError> {
        if basis.n_max() < self.min_n_max() {
            return Err(StateError::BasisTooSmall {
                needed: self.min_n_max(),
                n_max: basis.n_max(),
            });
        }
        match self {
            StateSpec::BellDiagonal {
                alpha,
                beta,
                gamma,
                delta,
            } => {
                let p = BellDiagonalParams::new(*alpha, *beta, *gamma, *delta)?;
                bell_diagonal_state(basis, &p)
            }
            StateSpec::Werner { a } => bell_diagonal_state(basis, &werner_params(*a)?),
            StateSpec::XFamily { x } => bell_diagonal_state(basis, &x_family_params(*x)?),
            StateSpec::Unpolarized { pi } => {
                let spec = UnpolarizedSpec::new(pi.clone())?.padded_to(basis.n_max());
                unpolarized_state(basis, &spec)
            }
            StateSpec::Dense { n_max, blocks } => {
                if blocks.len() != n_max + 1 {
                    return Err(StateError::DenseBlockCount {
                        got: blocks.len(),
                        expected: n_max + 1,
                        n_max: *n_max,
                    });
                }
                let mut op = SectorOperator::zeros(basis);
                for (sector, flat) in blocks.iter().enumerate() {
                    let dim = sector + 1;
                    if flat.len() != dim * dim {
                        return Err(StateError::DenseBlockShape {
                            sector,
                            expected: dim * dim,
                            got: flat.len(),
                        });
                    }
                    let block = op.block_mut(sector);
                    for i in 0..dim {
                        for j in 0..dim {
                            let [re, im] = flat[i * dim + j];
                            block[(i, j)] = Complex64::new(re, im);
                        }
                    }
                }
                DensityOperator::new(op)
            }
        }
    }
}
