//! LP-relaxation-and-rounding desk-rejection.
//!
//! [`max_rounding`] turns a feasible fractional solution into a feasible 0/1
//! decision: repeatedly keep the fractional paper with the largest value and,
//! for each of its authors now over the limit, reject that author's
//! fractional papers with the least LP mass until the author fits again.
//! [`opt_reject`] chains reduction, LP, rounding and lifting.

use crate::error::{ModelError, SolverError};
use crate::lp::{build_lp, solve_lp_with_stats, FractionalSolution, SimplexStats, SolveOptions};
use crate::model::{check_feasible, AuthorshipInstance, DecisionVector, PaperId};
use crate::reduce::{lift_decision, reduce_instance};

/// Tolerance for fractional load comparisons.
pub const LOAD_TOL: f64 = 1e-7;

pub fn max_rounding(
    frac: &FractionalSolution,
    inst: &AuthorshipInstance,
    b: u32,
) -> Result<DecisionVector, SolverError> {
    let m = inst.m();
    if frac.values.len() != m {
        return Err(ModelError::LengthMismatch {
            expected: m,
            actual: frac.values.len(),
        }
        .into());
    }
    for (var, &value) in frac.values.iter().enumerate() {
        if !(-LOAD_TOL..=1.0 + LOAD_TOL).contains(&value) {
            return Err(SolverError::OutOfBounds { var, value });
        }
    }
    let limit = f64::from(b);
    let mut x: Vec<f64> = frac.values.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let mut load: Vec<f64> = inst
        .authors()
        .map(|a| inst.papers_of(a).iter().map(|p| x[p.index()]).sum())
        .collect();
    if let Some((row, &l)) = load.iter().enumerate().find(|(_, &l)| l > limit + LOAD_TOL) {
        return Err(SolverError::InfeasibleInput {
            row,
            load: l,
            limit,
        });
    }

    let mut in_s: Vec<bool> = x.iter().map(|&v| v > 0.0 && v < 1.0).collect();
    // Values of papers still in S never change, so one sort gives every argmax:
    // largest value first, ties to the smallest id.
    let mut order: Vec<usize> = (0..m).filter(|&j| in_s[j]).collect();
    order.sort_by(|&i, &j| x[j].total_cmp(&x[i]).then(i.cmp(&j)));

    let mut candidates: Vec<usize> = Vec::new();
    for l in order {
        if !in_s[l] {
            continue;
        }
        in_s[l] = false;
        let promoted = PaperId::from_index(l);
        let gain = 1.0 - x[l];
        x[l] = 1.0;
        for a in inst.authors_of(promoted) {
            load[a.index()] += gain;
        }

        for &a in inst.authors_of(promoted) {
            if load[a.index()] <= limit + LOAD_TOL {
                continue;
            }
            // Least LP mass first, ties to the latest submission.
            candidates.clear();
            candidates.extend(
                inst.papers_of(a)
                    .iter()
                    .map(|p| p.index())
                    .filter(|&j| in_s[j]),
            );
            candidates.sort_by(|&i, &j| x[i].total_cmp(&x[j]).then(j.cmp(&i)));
            for &j in &candidates {
                if load[a.index()] <= limit + LOAD_TOL {
                    break;
                }
                let v = x[j];
                x[j] = 0.0;
                in_s[j] = false;
                for other in inst.authors_of(PaperId::from_index(j)) {
                    load[other.index()] -= v;
                }
            }
        }
    }

    Ok(DecisionVector::from_bools(x.iter().map(|&v| v == 1.0).collect()))
}

/// Everything the pipeline computed on the way to its decision.
#[derive(Debug, Clone, PartialEq)]
pub struct OptRejectOutcome {
    pub decision: DecisionVector,
    /// LP optimum on the original instance: papers fixed by the reduction
    /// plus the LP objective of the reduced instance.
    pub lp_objective: f64,
    /// Number of papers left after reduction.
    pub reduced_m: usize,
    pub fractional_count: usize,
    pub simplex: SimplexStats,
}

pub fn opt_reject(inst: &AuthorshipInstance, b: u32) -> Result<DecisionVector, SolverError> {
    opt_reject_detailed(inst, b, &SolveOptions::default()).map(|o| o.decision)
}

pub fn opt_reject_detailed(
    inst: &AuthorshipInstance,
    b: u32,
    opts: &SolveOptions,
) -> Result<OptRejectOutcome, SolverError> {
    let red = reduce_instance(inst, b);
    let model = build_lp(&red.inner, b);
    let (frac, simplex) = solve_lp_with_stats(&model, opts)?;
    let inner_x = max_rounding(&frac, &red.inner, b)?;
    let decision = lift_decision(&red, &inner_x)?;
    debug_assert!(check_feasible(inst, b, &decision).unwrap_or(false));
    Ok(OptRejectOutcome {
        decision,
        lp_objective: red.fixed_accepted.len() as f64 + frac.objective,
        reduced_m: red.inner.m(),
        fractional_count: frac.fractional_set.len(),
        simplex,
    })
}
