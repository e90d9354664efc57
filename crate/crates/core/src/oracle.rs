//! Exact maximum desk-acceptance on small instances.
//!
//! [`exact_optimum`] is a depth-first branch-and-bound over paper variables
//! of the reduced instance, bounding each node by the LP relaxation of what
//! is left. Among optimal decisions it returns the lexicographically largest
//! (earlier submissions accepted first). [`brute_force_optimum`] enumerates
//! every decision and is the reference the search is checked against.

use thiserror::Error;

use crate::error::SolverError;
use crate::lp::{solve_lp, LpModel, LpRow, SolveOptions};
use crate::model::{AuthorshipInstance, DecisionVector, PaperId};
use crate::policy::forward_reject;
use crate::reduce::{lift_decision, reduce_instance};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;
pub const DEFAULT_MAX_PAPERS: usize = 40;
pub const BRUTE_FORCE_MAX_PAPERS: usize = 22;

const BOUND_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub node_budget: u64,
    /// Cap on the number of papers left after safe-author reduction.
    pub max_papers: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            node_budget: DEFAULT_NODE_BUDGET,
            max_papers: DEFAULT_MAX_PAPERS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub decision: DecisionVector,
    pub accepted: usize,
    /// False when the node budget ran out before optimality was proven.
    pub certified: bool,
    pub nodes: u64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("instance has {m} papers to decide, above the cap of {cap}")]
    TooLarge { m: usize, cap: usize },

    #[error("node budget exhausted; best incumbent accepts {} papers", best.accepted)]
    BudgetExceeded { best: ExactSolution },

    #[error(transparent)]
    Solver(#[from] SolverError),
}

struct BudgetHit;

struct Search<'a> {
    inst: &'a AuthorshipInstance,
    b: u32,
    budget: u64,
    nodes: u64,
    opts: SolveOptions,
}

enum Outcome {
    /// Best completion found in the subtree, if any beat the target.
    Done(Option<Vec<bool>>),
    Budget(Option<Vec<bool>>),
}

impl<'a> Search<'a> {
    /// LP bound and solution for the residual problem under `fixed`.
    fn relax(&self, fixed: &[Option<bool>]) -> Result<Option<(f64, Vec<f64>)>, SolverError> {
        let inst = self.inst;
        let m = inst.m();
        let mut local = vec![usize::MAX; m];
        let mut free = Vec::new();
        for j in 0..m {
            if fixed[j].is_none() {
                local[j] = free.len();
                free.push(j);
            }
        }
        let mut rows = Vec::new();
        for a in inst.authors() {
            let papers = inst.papers_of(a);
            let taken = papers.iter().filter(|p| fixed[p.index()] == Some(true)).count();
            if taken > self.b as usize {
                return Ok(None);
            }
            let cap = self.b as usize - taken;
            let vars: Vec<usize> = papers
                .iter()
                .map(|p| p.index())
                .filter(|&j| fixed[j].is_none())
                .map(|j| local[j])
                .collect();
            if vars.len() > cap {
                rows.push(LpRow {
                    author: Some(a),
                    vars,
                    rhs: cap as f64,
                });
            }
        }
        let sol = solve_lp(&LpModel::new(free.len(), rows), &self.opts)?;
        let mut values: Vec<f64> = fixed
            .iter()
            .map(|f| if *f == Some(true) { 1.0 } else { 0.0 })
            .collect();
        for (k, &j) in free.iter().enumerate() {
            values[j] = sol.values[k];
        }
        let bound = values.iter().sum();
        Ok(Some((bound, values)))
    }

    /// Depth-first search for a completion of `fixed` accepting at least
    /// `target` papers. With `first_hit` the search stops at the first one;
    /// otherwise it raises the target past every completion it finds.
    fn run(
        &mut self,
        fixed: &mut Vec<Option<bool>>,
        mut target: usize,
        first_hit: bool,
    ) -> Result<Outcome, SolverError> {
        let mut best = None;
        match self.dfs(fixed, &mut target, first_hit, &mut best)? {
            Ok(()) => Ok(Outcome::Done(best)),
            Err(BudgetHit) => Ok(Outcome::Budget(best)),
        }
    }

    fn dfs(
        &mut self,
        fixed: &mut Vec<Option<bool>>,
        target: &mut usize,
        first_hit: bool,
        best: &mut Option<Vec<bool>>,
    ) -> Result<Result<(), BudgetHit>, SolverError> {
        if self.nodes >= self.budget {
            return Ok(Err(BudgetHit));
        }
        self.nodes += 1;

        let Some((bound, values)) = self.relax(fixed)? else {
            return Ok(Ok(()));
        };
        if ((bound + BOUND_EPS).floor() as usize) < *target {
            return Ok(Ok(()));
        }

        // Branch on the fractional variable with the largest value.
        let branch = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0 && v < 1.0)
            .fold(None, |acc: Option<(usize, f64)>, (j, &v)| match acc {
                Some((_, bv)) if bv >= v => acc,
                _ => Some((j, v)),
            });

        let Some((j, _)) = branch else {
            let x: Vec<bool> = values.iter().map(|&v| v == 1.0).collect();
            let count = x.iter().filter(|&&v| v).count();
            if count >= *target {
                *best = Some(x);
                *target = if first_hit { usize::MAX } else { count + 1 };
            }
            return Ok(Ok(()));
        };

        for choice in [true, false] {
            fixed[j] = Some(choice);
            let res = self.dfs(fixed, target, first_hit, best)?;
            fixed[j] = None;
            if res.is_err() {
                return Ok(res);
            }
            if first_hit && best.is_some() {
                break;
            }
        }
        Ok(Ok(()))
    }
}

/// Maximum number of papers that can be accepted within limit `b`, and the
/// lexicographically largest decision attaining it.
pub fn exact_optimum(
    inst: &AuthorshipInstance,
    b: u32,
    limits: &OracleLimits,
) -> Result<ExactSolution, OracleError> {
    let red = reduce_instance(inst, b);
    let inner = &red.inner;
    if inner.m() > limits.max_papers {
        return Err(OracleError::TooLarge {
            m: inner.m(),
            cap: limits.max_papers,
        });
    }

    let mut search = Search {
        inst: inner,
        b,
        budget: limits.node_budget,
        nodes: 0,
        opts: SolveOptions::default(),
    };
    let finish = |x: Vec<bool>, certified: bool, nodes: u64| -> Result<ExactSolution, OracleError> {
        let decision = lift_decision(&red, &DecisionVector::from_bools(x)).map_err(SolverError::from)?;
        Ok(ExactSolution {
            accepted: decision.accepted_count(),
            decision,
            certified,
            nodes,
        })
    };

    let greedy = forward_reject(inner, b);
    let mut witness: Vec<bool> = greedy.as_slice().to_vec();
    let mut fixed = vec![None; inner.m()];

    // Optimum value.
    let start = greedy.accepted_count() + 1;
    match search.run(&mut fixed, start, false)? {
        Outcome::Done(found) => {
            if let Some(x) = found {
                witness = x;
            }
        }
        Outcome::Budget(found) => {
            let nodes = search.nodes;
            let best = finish(found.unwrap_or(witness), false, nodes)?;
            return Err(OracleError::BudgetExceeded { best });
        }
    }
    let optimum = witness.iter().filter(|&&v| v).count();

    // Lexicographically largest optimal decision: accept each paper in turn
    // whenever the optimum stays reachable.
    for j in 0..inner.m() {
        if witness[j] {
            fixed[j] = Some(true);
            continue;
        }
        fixed[j] = Some(true);
        match search.run(&mut fixed, optimum, true)? {
            Outcome::Done(Some(x)) => witness = x,
            Outcome::Done(None) => fixed[j] = Some(false),
            Outcome::Budget(_) => {
                let nodes = search.nodes;
                let best = finish(witness, false, nodes)?;
                return Err(OracleError::BudgetExceeded { best });
            }
        }
    }

    let nodes = search.nodes;
    finish(witness, true, nodes)
}

/// Exhaustive search over all `2^m` decisions. Returns the optimum count.
pub fn brute_force_optimum(inst: &AuthorshipInstance, b: u32) -> Result<usize, OracleError> {
    brute_force_solution(inst, b).map(|(count, _)| count)
}

/// Like [`brute_force_optimum`], also returning the lexicographically
/// largest optimal decision.
pub fn brute_force_solution(
    inst: &AuthorshipInstance,
    b: u32,
) -> Result<(usize, DecisionVector), OracleError> {
    let m = inst.m();
    if m > BRUTE_FORCE_MAX_PAPERS {
        return Err(OracleError::TooLarge {
            m,
            cap: BRUTE_FORCE_MAX_PAPERS,
        });
    }
    // Paper 1 is the most significant bit, so a larger mask is a
    // lexicographically larger decision.
    let bit = |p: PaperId| 1u32 << (m - 1 - p.index());
    let masks: Vec<u32> = inst
        .authors()
        .map(|a| inst.papers_of(a).iter().fold(0, |acc, &p| acc | bit(p)))
        .collect();
    let mut best = (0u32, 0u32);
    for x in 0..(1u32 << m) {
        let count = x.count_ones();
        if (count, x) <= best {
            continue;
        }
        if masks.iter().all(|&mask| (x & mask).count_ones() <= b) {
            best = (count, x);
        }
    }
    let decision = DecisionVector::from_bools(inst.papers().map(|p| best.1 & bit(p) != 0).collect());
    Ok((best.0 as usize, decision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{triangle, two_authors_overlap};
    use crate::model::{build_instance, check_feasible};

    #[test]
    fn overlap_fixture() {
        let inst = two_authors_overlap();
        assert_eq!(brute_force_optimum(&inst, 2).unwrap(), 4);
        let sol = exact_optimum(&inst, 2, &OracleLimits::default()).unwrap();
        assert_eq!(sol.accepted, 4);
        assert!(sol.certified);
        assert_eq!(sol.decision.to_bits(), vec![1, 1, 0, 1, 1]);
    }

    #[test]
    fn triangle_fixture() {
        let inst = triangle();
        assert_eq!(brute_force_optimum(&inst, 1).unwrap(), 1);
        let sol = exact_optimum(&inst, 1, &OracleLimits::default()).unwrap();
        assert_eq!(sol.accepted, 1);
        assert_eq!(sol.decision.to_bits(), vec![1, 0, 0]);
    }

    #[test]
    fn loose_limit_accepts_all() {
        let inst = two_authors_overlap();
        let sol = exact_optimum(&inst, 3, &OracleLimits::default()).unwrap();
        assert_eq!(sol.accepted, 5);
        assert_eq!(brute_force_optimum(&inst, 3).unwrap(), 5);
    }

    #[test]
    fn empty_instance() {
        let inst = build_instance::<Vec<&str>, &str>(&[]).unwrap();
        assert_eq!(brute_force_optimum(&inst, 1).unwrap(), 0);
        assert_eq!(exact_optimum(&inst, 1, &OracleLimits::default()).unwrap().accepted, 0);
    }

    #[test]
    fn caps() {
        let lists: Vec<Vec<&str>> = (0..23).map(|_| vec!["a"]).collect();
        let inst = build_instance(&lists).unwrap();
        assert!(matches!(brute_force_optimum(&inst, 1), Err(OracleError::TooLarge { m: 23, .. })));
        let limits = OracleLimits {
            max_papers: 10,
            ..OracleLimits::default()
        };
        assert!(matches!(exact_optimum(&inst, 1, &limits), Err(OracleError::TooLarge { .. })));
        // Single author: LP is integral, so one node suffices.
        assert_eq!(exact_optimum(&inst, 5, &OracleLimits::default()).unwrap().accepted, 5);
    }

    #[test]
    fn budget_exhaustion_returns_incumbent() {
        let inst = triangle();
        let limits = OracleLimits {
            node_budget: 1,
            ..OracleLimits::default()
        };
        match exact_optimum(&inst, 1, &limits) {
            Err(OracleError::BudgetExceeded { best }) => {
                assert!(!best.certified);
                assert!(check_feasible(&inst, 1, &best.decision).unwrap());
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
