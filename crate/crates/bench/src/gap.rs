//! LP bound, exact optimum and OptReject on one small instance.

use std::fmt;

use capopt_core::lp::SolveOptions;
use capopt_core::opt_reject::opt_reject_detailed;
use capopt_core::oracle::{exact_optimum, OracleLimits};
use capopt_core::{AuthorshipInstance, OracleError};

use crate::error::BenchError;

#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub m: usize,
    pub b: u32,
    pub lp_objective: f64,
    pub exact: usize,
    /// False when the search budget ran out; `exact` is then a lower bound.
    pub certified: bool,
    pub opt_reject: usize,
}

impl GapReport {
    pub fn lp_gap(&self) -> f64 {
        self.lp_objective - self.exact as f64
    }

    pub fn rounding_gap(&self) -> i64 {
        self.exact as i64 - self.opt_reject as i64
    }
}

impl fmt::Display for GapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "papers: {}", self.m)?;
        writeln!(f, "limit: {}", self.b)?;
        writeln!(f, "lp_objective: {:.6}", self.lp_objective)?;
        let note = if self.certified { "" } else { " (not certified)" };
        writeln!(f, "exact_accepted: {}{note}", self.exact)?;
        writeln!(f, "opt_reject_accepted: {}", self.opt_reject)?;
        writeln!(f, "lp_gap: {:.6}", self.lp_gap())?;
        write!(f, "rounding_gap: {}", self.rounding_gap())
    }
}

pub fn oracle_gap(inst: &AuthorshipInstance, b: u32, limits: &OracleLimits) -> Result<GapReport, BenchError> {
    let exact = match exact_optimum(inst, b, limits) {
        Ok(sol) => sol,
        Err(OracleError::BudgetExceeded { best }) => best,
        Err(e) => return Err(e.into()),
    };
    let ours = opt_reject_detailed(inst, b, &SolveOptions::default())?;
    Ok(GapReport {
        m: inst.m(),
        b,
        lp_objective: ours.lp_objective,
        exact: exact.accepted,
        certified: exact.certified,
        opt_reject: ours.decision.accepted_count(),
    })
}
