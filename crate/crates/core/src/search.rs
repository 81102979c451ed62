//! Derivative-free scalar search: golden-section minimization and bisection.

/// Outcome of a golden-section run.
#[derive(Debug, Clone, Copy)]
pub struct ScalarMin {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimizes a unimodal `f` on `[lo, hi]` by golden-section search,
/// terminating when the bracket width drops below `bracket_tol`.
pub fn golden_section_min(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    bracket_tol: f64,
) -> ScalarMin {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 2;

    while hi - lo > bracket_tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        evaluations += 1;
    }

    if f1 < f2 {
        ScalarMin {
            x: x1,
            value: f1,
            evaluations,
        }
    } else {
        ScalarMin {
            x: x2,
            value: f2,
            evaluations,
        }
    }
}

/// Minimizes a unimodal `f` on `[lo, hi]`: an `n_grid`-point uniform scan
/// picks the bracket, golden-section refines it, and both endpoints are
/// kept in the running so a boundary minimum cannot be missed.
pub fn grid_seeded_min(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    n_grid: usize,
    bracket_tol: f64,
) -> ScalarMin {
    debug_assert!(n_grid >= 3);
    let step = (hi - lo) / (n_grid - 1) as f64;
    let grid: Vec<(f64, f64)> = (0..n_grid)
        .map(|i| {
            let x = if i + 1 == n_grid {
                hi
            } else {
                lo + i as f64 * step
            };
            (x, f(x))
        })
        .collect();
    let mut evaluations = n_grid;

    let (best_idx, &(mut best_x, mut best_val)) = grid
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .expect("non-empty grid");

    let bracket_lo = grid[best_idx.saturating_sub(1)].0;
    let bracket_hi = grid[(best_idx + 1).min(n_grid - 1)].0;
    let refined = golden_section_min(&mut f, bracket_lo, bracket_hi, bracket_tol);
    evaluations += refined.evaluations;
    if refined.value < best_val {
        best_x = refined.x;
        best_val = refined.value;
    }

    ScalarMin {
        x: best_x,
        value: best_val,
        evaluations,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BisectError {
    #[error("no sign change on bracket [{lo}, {hi}]: f(lo) = {f_lo:.6e}, f(hi) = {f_hi:.6e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
}

/// Root of `f` on `[lo, hi]` by bisection; `f(lo)` and `f(hi)` must have
/// opposite signs. Terminates when the bracket width drops below `tol` and
/// returns (root, final bracket).
pub fn bisect(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<(f64, (f64, f64)), BisectError> {
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok((lo, (lo, lo)));
    }
    if f_hi == 0.0 {
        return Ok((hi, (hi, hi)));
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(BisectError::NoSignChange { lo, hi, f_lo, f_hi });
    }

    let mut f_lo = f_lo;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket at floating-point resolution
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok((mid, (lo, hi)));
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), (lo, hi)))
}
