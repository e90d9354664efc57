//! LP relaxation of the maximum desk-acceptance problem:
//!
//! ```text
//! maximize    sum_j x_j
//! subject to  sum_{j in P_i} x_j <= b   for every constrained author i
//!             0 <= x_j <= 1
//! ```
//!
//! Every coefficient is 0 or 1, so a model is just a list of column-index
//! rows with a right-hand side. Solving splits the model into independent
//! blocks (rows connected through shared columns) and runs a bounded-variable
//! primal simplex on each.

mod simplex;

use std::fmt;

use crate::error::SolverError;
use crate::model::{AuthorId, AuthorshipInstance};

pub use simplex::SimplexStats;

/// `sum_{j in vars} x_j <= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub author: Option<AuthorId>,
    /// 0-based variable indices, ascending, no duplicates.
    pub vars: Vec<usize>,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    num_vars: usize,
    rows: Vec<LpRow>,
}

impl LpModel {
    /// Panics if a row references a variable `>= num_vars`.
    pub fn new(num_vars: usize, rows: Vec<LpRow>) -> Self {
        for row in &rows {
            assert!(
                row.vars.iter().all(|&v| v < num_vars),
                "row references a variable out of range"
            );
        }
        LpModel { num_vars, rows }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[LpRow] {
        &self.rows
    }

    /// Maximum violation of any row (and of the `[0, 1]` box) by `values`.
    pub fn max_violation(&self, values: &[f64]) -> f64 {
        let rows = self
            .rows
            .iter()
            .map(|r| r.vars.iter().map(|&v| values[v]).sum::<f64>() - r.rhs);
        let bounds = values.iter().map(|&v| (-v).max(v - 1.0));
        rows.chain(bounds).fold(0.0, f64::max)
    }
}

/// One constraint per line, e.g. `x1 + x2 + x3 <= 2`. Variables are 1-based.
impl fmt::Display for LpModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "maximize sum of x1..x{} with 0 <= x <= 1", self.num_vars)?;
        for row in &self.rows {
            let lhs: Vec<String> = row.vars.iter().map(|v| format!("x{}", v + 1)).collect();
            let lhs = if lhs.is_empty() { "0".to_owned() } else { lhs.join(" + ") };
            write!(f, "{lhs} <= {}", row.rhs)?;
            if let Some(a) = row.author {
                write!(f, "    # author {a}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Transcribes the instance into an LP, omitting rows of authors with at most
/// `b` papers since those rows cannot bind.
pub fn build_lp(inst: &AuthorshipInstance, b: u32) -> LpModel {
    build_rows(inst, b, true)
}

/// Like [`build_lp`] but keeps a row for every author.
pub fn build_lp_all_rows(inst: &AuthorshipInstance, b: u32) -> LpModel {
    build_rows(inst, b, false)
}

fn build_rows(inst: &AuthorshipInstance, b: u32, drop_redundant: bool) -> LpModel {
    let rows = inst
        .authors()
        .filter(|&a| !drop_redundant || inst.papers_of(a).len() > b as usize)
        .map(|a| LpRow {
            author: Some(a),
            vars: inst.papers_of(a).iter().map(|p| p.index()).collect(),
            rhs: f64::from(b),
        })
        .collect();
    LpModel::new(inst.m(), rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Pivoting and optimality tolerance.
    pub pivot_tol: f64,
    /// Values this close to 0 or 1 are snapped.
    pub snap_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            pivot_tol: 1e-9,
            snap_tol: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    /// One value in `[0, 1]` per variable.
    pub values: Vec<f64>,
    pub objective: f64,
    /// 0-based indices whose value is strictly between 0 and 1 after snapping.
    pub fractional_set: Vec<usize>,
}

impl FractionalSolution {
    /// Snaps values near 0 or 1, clamps into `[0, 1]` and fills in the
    /// objective and fractional set.
    pub fn from_values(mut values: Vec<f64>, snap_tol: f64) -> Self {
        for v in values.iter_mut() {
            if *v <= snap_tol {
                *v = 0.0;
            } else if *v >= 1.0 - snap_tol {
                *v = 1.0;
            }
        }
        let fractional_set = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0 && v < 1.0)
            .map(|(j, _)| j)
            .collect();
        let objective = values.iter().sum();
        FractionalSolution {
            values,
            objective,
            fractional_set,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.fractional_set.is_empty()
    }
}

pub fn solve_lp(model: &LpModel, opts: &SolveOptions) -> Result<FractionalSolution, SolverError> {
    solve_lp_with_stats(model, opts).map(|(sol, _)| sol)
}

/// Solves `model` and also reports pivot counts summed over blocks.
pub fn solve_lp_with_stats(
    model: &LpModel,
    opts: &SolveOptions,
) -> Result<(FractionalSolution, SimplexStats), SolverError> {
    let mut values = vec![1.0; model.num_vars];
    let mut stats = SimplexStats::default();

    for (row, r) in model.rows.iter().enumerate() {
        if r.rhs < -opts.pivot_tol && r.vars.is_empty() {
            return Err(SolverError::InfeasibleInput {
                row,
                load: 0.0,
                limit: r.rhs,
            });
        }
    }

    let mut local_of = vec![usize::MAX; model.num_vars];
    for block in blocks(model) {
        for (k, &v) in block.vars.iter().enumerate() {
            local_of[v] = k;
        }
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); block.vars.len()];
        let mut rhs = Vec::with_capacity(block.rows.len());
        for (local_row, &row) in block.rows.iter().enumerate() {
            let r = &model.rows[row];
            if r.rhs < 0.0 {
                return Err(SolverError::InfeasibleInput {
                    row,
                    load: 0.0,
                    limit: r.rhs,
                });
            }
            for &v in &r.vars {
                cols[local_of[v]].push(local_row);
            }
            rhs.push(r.rhs);
        }
        let (local_values, block_stats) = simplex::solve_block(&cols, &rhs, opts.pivot_tol)?;
        stats.absorb(block_stats);
        for (k, &v) in block.vars.iter().enumerate() {
            values[v] = local_values[k];
        }
    }

    Ok((FractionalSolution::from_values(values, opts.snap_tol), stats))
}

struct Block {
    rows: Vec<usize>,
    vars: Vec<usize>,
}

/// Connected components of the row/column incidence, restricted to
/// non-empty rows. Columns touched by no row are left out: their optimum is 1.
fn blocks(model: &LpModel) -> Vec<Block> {
    let mut parent: Vec<usize> = (0..model.rows.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    let mut owner = vec![usize::MAX; model.num_vars];
    for (row, r) in model.rows.iter().enumerate() {
        for &v in &r.vars {
            if owner[v] == usize::MAX {
                owner[v] = row;
            } else {
                let (ra, rb) = (find(&mut parent, owner[v]), find(&mut parent, row));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }

    let mut block_of_root = vec![usize::MAX; model.rows.len()];
    let mut out: Vec<Block> = Vec::new();
    for row in 0..model.rows.len() {
        if model.rows[row].vars.is_empty() {
            continue;
        }
        let root = find(&mut parent, row);
        if block_of_root[root] == usize::MAX {
            block_of_root[root] = out.len();
            out.push(Block {
                rows: Vec::new(),
                vars: Vec::new(),
            });
        }
        out[block_of_root[root]].rows.push(row);
    }
    for (v, &row) in owner.iter().enumerate() {
        if row != usize::MAX {
            let root = find(&mut parent, row);
            out[block_of_root[root]].vars.push(v);
        }
    }
    out
}
