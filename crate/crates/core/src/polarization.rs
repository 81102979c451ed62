//! The Chernoff quantum degree of polarization:
//! ℙ_C(ρ̂) = 1 - max over unpolarized σ̂ of [min over s ∈ [0,1] of Q_s(ρ̂, σ̂)],
//! with the maximization running over the sector-weight simplex, plus the
//! closed form for three-photon Bell-diagonal states.

use crate::discrimination::{minimize_s_overlap, SOverlapResult, S_BRACKET_TOL, S_GRID_POINTS};
use crate::search;
use crate::states::{unpolarized_state, BellDiagonalParams, DensityOperator, UnpolarizedSpec};

/// Coarsest step of the outer simplex refinement.
pub const OUTER_STEP_MAX: f64 = 0.25;

/// Finest step of the outer simplex refinement; the inner s-tolerance
/// ([`S_BRACKET_TOL`]) must out-resolve this for the max–min to be stable.
pub const OUTER_STEP_MIN: f64 = 1e-5;

/// Cap on accepted moves per refinement scale; ordinary runs take a handful.
const MAX_MOVES_PER_SCALE: usize = 100;

/// Optimizer effort counters.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchDiagnostics {
    /// Unpolarized candidates evaluated by the outer search.
    pub outer_candidates: usize,
    /// Total Q_s evaluations spent across all inner minimizations.
    pub inner_evaluations: usize,
}

/// Outcome of the degree-of-polarization optimization.
#[derive(Debug, Clone)]
pub struct PolarizationResult {
    /// ℙ_C ∈ [0, 1].
    pub degree: f64,
    /// Sector-weight distribution attaining the outer maximum.
    pub best_pi: UnpolarizedSpec,
    /// Inner minimizer s at the optimum.
    pub s_star: f64,
    pub diagnostics: SearchDiagnostics,
}

/// Evaluates min_s Q_s(ρ̂, σ̂(π)) for support-sector weights `weights`.
fn inner_min(
    rho: &DensityOperator,
    support: &[usize],
    weights: &[f64],
    diagnostics: &mut SearchDiagnostics,
) -> SOverlapResult {
    let n_max = rho.basis().n_max();
    let mut pi = vec![0.0; n_max + 1];
    let total: f64 = weights.iter().sum();
    for (&sector, &w) in support.iter().zip(weights) {
        pi[sector] = w / total;
    }
    let spec = UnpolarizedSpec::new(pi).expect("normalized nonnegative weights");
    let sigma = unpolarized_state(rho.basis(), &spec).expect("matching basis");
    let result = minimize_s_overlap(rho, &sigma).expect("matching basis");
    diagnostics.outer_candidates += 1;
    diagnostics.inner_evaluations += result.evaluations;
    result
}

/// The degree of polarization of an arbitrary state, by nested optimization:
/// for each candidate sector-weight vector the inner minimum over s is solved
/// by [`minimize_s_overlap`], and the outer maximum is searched over the
/// simplex of weights on the support sectors of ρ̂ (off-support weight only
/// lowers Q_s, so it is never optimal).
///
/// The outer search starts from the uniform distribution and every vertex,
/// then refines the best of those by a local pairwise-transfer grid with step
/// halving from [`OUTER_STEP_MAX`] down to [`OUTER_STEP_MIN`], accepting
/// moves that increase the inner minimum. Single-sector states skip the
/// search: π concentrated on that sector is exactly optimal because
/// π^{1-s} ≤ 1 with equality at π = 1.
pub fn degree_chernoff(rho: &DensityOperator) -> PolarizationResult {
    let support = rho.support_sectors();
    let n_max = rho.basis().n_max();
    let mut diagnostics = SearchDiagnostics::default();

    if support.len() == 1 {
        let result = inner_min(rho, &support, &[1.0], &mut diagnostics);
        return PolarizationResult {
            degree: (1.0 - result.q_star).max(0.0),
            best_pi: UnpolarizedSpec::delta(n_max, support[0]),
            s_star: result.s_star,
            diagnostics,
        };
    }

    let dim = support.len();
    let mut candidates: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    candidates.push(vec![1.0 / dim as f64; dim]);
    for i in 0..dim {
        let mut vertex = vec![0.0; dim];
        vertex[i] = 1.0;
        candidates.push(vertex);
    }

    let mut best_weights = candidates[0].clone();
    let mut best = inner_min(rho, &support, &best_weights, &mut diagnostics);
    for candidate in &candidates[1..] {
        let result = inner_min(rho, &support, candidate, &mut diagnostics);
        if result.q_star > best.q_star {
            best = result;
            best_weights = candidate.clone();
        }
    }

    let mut step = OUTER_STEP_MAX;
    while step >= OUTER_STEP_MIN {
        let mut moves = 0;
        loop {
            let mut improved: Option<(Vec<f64>, SOverlapResult)> = None;
            for from in 0..dim {
                if best_weights[from] <= 0.0 {
                    continue;
                }
                let transfer = step.min(best_weights[from]);
                for to in 0..dim {
                    if to == from {
                        continue;
                    }
                    let mut weights = best_weights.clone();
                    weights[from] -= transfer;
                    weights[to] += transfer;
                    let result = inner_min(rho, &support, &weights, &mut diagnostics);
                    let current_best = improved.as_ref().map_or(best.q_star, |(_, r)| r.q_star);
                    if result.q_star > current_best {
                        improved = Some((weights, result));
                    }
                }
            }
            match improved {
                Some((weights, result)) => {
                    best_weights = weights;
                    best = result;
                    moves += 1;
                    if moves >= MAX_MOVES_PER_SCALE {
                        break;
                    }
                }
                None => break,
            }
        }
        step *= 0.5;
    }

    let total: f64 = best_weights.iter().sum();
    let mut pi = vec![0.0; n_max + 1];
    for (&sector, &w) in support.iter().zip(&best_weights) {
        pi[sector] = w / total;
    }
    PolarizationResult {
        degree: (1.0 - best.q_star).max(0.0),
        best_pi: UnpolarizedSpec::new(pi).expect("normalized nonnegative weights"),
        s_star: best.s_star,
        diagnostics,
    }
}

/// Scalar minimization behind the Bell-diagonal closed form:
/// min over s of (1/4)^{1-s}(α^s + β^s + γ^s + δ^s), zero weights dropping
/// out entirely under the support convention.
pub fn bell_diagonal_overlap_minimum(p: &BellDiagonalParams) -> SOverlapResult {
    let weights = p.as_array();
    let q = |s: f64| {
        let sum: f64 = weights
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| l.powf(s))
            .sum();
        0.25f64.powf(1.0 - s) * sum
    };
    let min = search::grid_seeded_min(q, 0.0, 1.0, S_GRID_POINTS, S_BRACKET_TOL);
    SOverlapResult {
        q_star: min.value,
        s_star: min.x,
        evaluations: min.evaluations,
    }
}

/// Closed-form degree of polarization of a Bell-diagonal state:
/// ℙ_C = 1 - min over s ∈ [0,1] of (1/4)^{1-s}(α^s + β^s + γ^s + δ^s).
pub fn degree_chernoff_bell_diagonal(p: &BellDiagonalParams) -> f64 {
    (1.0 - bell_diagonal_overlap_minimum(p).q_star).max(0.0)
}
