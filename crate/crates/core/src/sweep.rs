//! Parameter sweeps over the two state families, crossing-point location
//! between concurrence and degree of polarization, and pairwise
//! discrimination reports. These back the CLI subcommands.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::discrimination::{minimize_s_overlap, p_min_k, DiscriminationError};
use crate::entanglement::{concurrence_werner, concurrence_x_family};
use crate::fock::FockBasis;
use crate::polarization::{bell_diagonal_overlap_minimum, degree_chernoff};
use crate::search::{bisect, BisectError};
use crate::states::{
    bell_diagonal_state, werner_params, x_family_params, DensityOperator, StateError,
};

/// Disagreement between the closed form and the general max–min path that
/// fails a cross-checked sweep.
pub const CROSS_CHECK_TOL: f64 = 1e-6;

/// Parameter tolerance of the crossing bisection.
pub const CROSSING_PARAM_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("sweep needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("cross-check failed at param {param}: closed form {closed_form}, general path {general} (tolerance {CROSS_CHECK_TOL:e})")]
    CrossCheckFailed {
        param: f64,
        closed_form: f64,
        general: f64,
    },
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    NoCrossing(#[from] BisectError),
}

/// The two one-parameter Bell-diagonal families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Werner state, parameter a ∈ [0, 1].
    Werner,
    /// x-parametrized Bell-diagonal state, x ∈ [-1, 1].
    XFamily,
}

impl Family {
    pub fn param_range(&self) -> (f64, f64) {
        match self {
            Family::Werner => (0.0, 1.0),
            Family::XFamily => (-1.0, 1.0),
        }
    }

    pub fn param_name(&self) -> &'static str {
        match self {
            Family::Werner => "a",
            Family::XFamily => "x",
        }
    }
}

/// One row of a sweep: parameter value, the two measures, and the inner
/// optimizer outcome behind the degree of polarization.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRecord {
    pub param: f64,
    pub concurrence: f64,
    pub degree_pol: f64,
    pub s_star: f64,
    pub q_star: f64,
}

/// A located solution of C = ℙ_C.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossingResult {
    /// Parameter value where the two measures meet.
    pub location: f64,
    /// |C - ℙ_C| at the reported location.
    pub residual: f64,
    /// Final bisection interval.
    pub bracket: (f64, f64),
}

/// The record at one parameter value, via the family closed forms.
pub fn family_record(family: Family, t: f64) -> Result<SweepRecord, SweepError> {
    let (params, concurrence) = match family {
        Family::Werner => (werner_params(t)?, concurrence_werner(t)?),
        Family::XFamily => (x_family_params(t)?, concurrence_x_family(t)?),
    };
    let min = bell_diagonal_overlap_minimum(&params);
    Ok(SweepRecord {
        param: t,
        concurrence,
        degree_pol: (1.0 - min.q_star).max(0.0),
        s_star: min.s_star,
        q_star: min.q_star,
    })
}

/// C(t) - ℙ_C(t), the function whose roots are the crossing points.
fn measure_gap(family: Family, t: f64) -> Result<f64, SweepError> {
    let record = family_record(family, t)?;
    Ok(record.concurrence - record.degree_pol)
}

fn grid(lo: f64, hi: f64, n_points: usize) -> Vec<f64> {
    (0..n_points)
        .map(|i| {
            if i + 1 == n_points {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n_points - 1) as f64
            }
        })
        .collect()
}

/// Uniform-grid sweep of a family. With `cross_check` enabled, every record's
/// degree is recomputed through the general max–min path on the constructed
/// density operator and any disagreement beyond [`CROSS_CHECK_TOL`] fails
/// the sweep loudly.
///
/// Points are evaluated in parallel and merged in parameter order, so the
/// output is deterministic regardless of scheduling.
pub fn sweep(
    family: Family,
    n_points: usize,
    cross_check: bool,
) -> Result<Vec<SweepRecord>, SweepError> {
    if n_points < 2 {
        return Err(SweepError::TooFewPoints(n_points));
    }
    let (lo, hi) = family.param_range();
    grid(lo, hi, n_points)
        .into_par_iter()
        .map(|t| {
            let record = family_record(family, t)?;
            if cross_check {
                let params = match family {
                    Family::Werner => werner_params(t)?,
                    Family::XFamily => x_family_params(t)?,
                };
                let rho = bell_diagonal_state(FockBasis::new(3), &params)?;
                let general = degree_chernoff(&rho).degree;
                if (general - record.degree_pol).abs() > CROSS_CHECK_TOL {
                    return Err(SweepError::CrossCheckFailed {
                        param: t,
                        closed_form: record.degree_pol,
                        general,
                    });
                }
            }
            Ok(record)
        })
        .collect()
}

/// Werner-family sweep on a ∈ [0, 1].
pub fn sweep_werner(n_points: usize, cross_check: bool) -> Result<Vec<SweepRecord>, SweepError> {
    sweep(Family::Werner, n_points, cross_check)
}

/// x-family sweep on x ∈ [-1, 1].
pub fn sweep_x_family(n_points: usize, cross_check: bool) -> Result<Vec<SweepRecord>, SweepError> {
    sweep(Family::XFamily, n_points, cross_check)
}

/// Locates a parameter where C = ℙ_C by bisection on f(t) = C(t) - ℙ_C(t),
/// to a parameter tolerance of [`CROSSING_PARAM_TOL`]. The gap must change
/// sign on the bracket.
pub fn find_crossing(family: Family, lo: f64, hi: f64) -> Result<CrossingResult, SweepError> {
    // surface parameter-domain violations before bisecting
    let f_lo = measure_gap(family, lo)?;
    let f_hi = measure_gap(family, hi)?;
    if f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
        return Err(SweepError::NoCrossing(BisectError::NoSignChange {
            lo,
            hi,
            f_lo,
            f_hi,
        }));
    }
    let (location, bracket) = bisect(
        |t| measure_gap(family, t).expect("bracket stays inside the family domain"),
        lo,
        hi,
        CROSSING_PARAM_TOL,
    )?;
    let residual = measure_gap(family, location)?.abs();
    Ok(CrossingResult {
        location,
        residual,
        bracket,
    })
}

/// One copy count of a discrimination report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CopyRecord {
    pub copies: u32,
    /// P_min^(k), the k-copy minimal error probability.
    pub p_min: f64,
    /// The Chernoff upper bound ½ q*^k.
    pub chernoff_upper: f64,
}

/// Discrimination summary for a pair of states.
#[derive(Debug, Clone, Serialize)]
pub struct DiscriminationReport {
    pub q_star: f64,
    pub s_star: f64,
    /// ξ_QCB = -ln q*; `None` when the supports are orthogonal and the
    /// exponent is infinite.
    pub xi_qcb: Option<f64>,
    pub copies: Vec<CopyRecord>,
}

/// Computes q*, s*, ξ_QCB and P_min^(j) for j = 1..=max_copies together with
/// the per-copy Chernoff upper bound.
pub fn discrimination_report(
    rho: &DensityOperator,
    zeta: &DensityOperator,
    max_copies: u32,
) -> Result<DiscriminationReport, DiscriminationError> {
    if max_copies == 0 {
        return Err(DiscriminationError::InvalidCopies);
    }
    let min = minimize_s_overlap(rho, zeta)?;
    let xi_qcb = if min.q_star > 0.0 {
        Some((-min.q_star.ln()).max(0.0))
    } else {
        None
    };
    let mut copies = Vec::with_capacity(max_copies as usize);
    for k in 1..=max_copies {
        copies.push(CopyRecord {
            copies: k,
            p_min: p_min_k(rho, zeta, k)?,
            chernoff_upper: 0.5 * min.q_star.powi(k as i32),
        });
    }
    Ok(DiscriminationReport {
        q_star: min.q_star,
        s_star: min.s_star,
        xi_qcb,
        copies,
    })
}
