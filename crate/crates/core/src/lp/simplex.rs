//! Bounded-variable primal simplex for `max 1'x, Ax <= rhs, 0 <= x <= 1`
//! with a 0/1 matrix `A` given by columns.
//!
//! Structural variables are `0..p` with bounds `[0, 1]`; slack `i` is
//! variable `p + i` with bounds `[0, inf)`. The run starts from the slack
//! basis at `x = 0` and keeps an explicit dense inverse of the basis,
//! updated by one elimination step per basis change. Entering variables that
//! reach their opposite bound before any basic variable blocks are flipped
//! without a basis change.
//!
//! Pricing is Dantzig's rule (largest reduced cost, ties to the smallest
//! index). After `STALL_THRESHOLD` consecutive degenerate pivots the solver
//! switches to Bland's rule until a pivot makes progress.

use crate::error::SolverError;

const STALL_THRESHOLD: usize = 50;
const REFRESH_EVERY: usize = 64;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimplexStats {
    pub blocks: usize,
    pub largest_block_rows: usize,
    pub pivots: usize,
    pub bound_flips: usize,
    pub degenerate_pivots: usize,
}

impl SimplexStats {
    pub(crate) fn absorb(&mut self, other: SimplexStats) {
        self.blocks += other.blocks;
        self.largest_block_rows = self.largest_block_rows.max(other.largest_block_rows);
        self.pivots += other.pivots;
        self.bound_flips += other.bound_flips;
        self.degenerate_pivots += other.degenerate_pivots;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarState {
    Basic(usize),
    AtLower,
    AtUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Dantzig,
    Bland,
}

struct Tableau<'a> {
    cols: &'a [Vec<usize>],
    rhs: &'a [f64],
    p: usize,
    r: usize,
    tol: f64,
    state: Vec<VarState>,
    /// `basic[k]` is the variable basic in row `k`.
    basic: Vec<usize>,
    /// Basic variable values, by basis row.
    x_basic: Vec<f64>,
    /// Row-major `r x r` inverse of the basis matrix.
    binv: Vec<f64>,
    /// Simplex multipliers `c_B' B^-1`.
    y: Vec<f64>,
}

impl<'a> Tableau<'a> {
    fn new(cols: &'a [Vec<usize>], rhs: &'a [f64], tol: f64) -> Self {
        let p = cols.len();
        let r = rhs.len();
        let mut state = vec![VarState::AtLower; p + r];
        for (i, s) in state[p..].iter_mut().enumerate() {
            *s = VarState::Basic(i);
        }
        let mut binv = vec![0.0; r * r];
        for i in 0..r {
            binv[i * r + i] = 1.0;
        }
        Tableau {
            cols,
            rhs,
            p,
            r,
            tol,
            state,
            basic: (p..p + r).collect(),
            x_basic: rhs.to_vec(),
            binv,
            y: vec![0.0; r],
        }
    }

    fn upper(&self, var: usize) -> f64 {
        if var < self.p {
            1.0
        } else {
            f64::INFINITY
        }
    }

    fn cost(&self, var: usize) -> f64 {
        if var < self.p {
            1.0
        } else {
            0.0
        }
    }

    fn reduced_cost(&self, var: usize) -> f64 {
        if var < self.p {
            1.0 - self.cols[var].iter().map(|&i| self.y[i]).sum::<f64>()
        } else {
            -self.y[var - self.p]
        }
    }

    /// Picks the entering variable and its reduced cost, or `None` at optimality.
    fn price(&self, rule: Rule) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for var in 0..self.p + self.r {
            let score = match self.state[var] {
                VarState::Basic(_) => continue,
                VarState::AtLower => self.reduced_cost(var),
                VarState::AtUpper => -self.reduced_cost(var),
            };
            if score > self.tol {
                match rule {
                    Rule::Bland => return Some((var, self.reduced_cost(var))),
                    Rule::Dantzig => {
                        if best.is_none_or(|(_, s)| score > s) {
                            best = Some((var, score));
                        }
                    }
                }
            }
        }
        best.map(|(var, _)| (var, self.reduced_cost(var)))
    }

    /// `B^-1 a_var`.
    fn column(&self, var: usize, out: &mut [f64]) {
        let r = self.r;
        if var < self.p {
            let rows = &self.cols[var];
            for (k, o) in out.iter_mut().enumerate() {
                let row = &self.binv[k * r..(k + 1) * r];
                *o = rows.iter().map(|&i| row[i]).sum();
            }
        } else {
            let i = var - self.p;
            for (k, o) in out.iter_mut().enumerate() {
                *o = self.binv[k * r + i];
            }
        }
    }

    /// Recomputes basic values and multipliers from the current inverse.
    fn refresh(&mut self) {
        let r = self.r;
        let mut resid = self.rhs.to_vec();
        for var in 0..self.p {
            if self.state[var] == VarState::AtUpper {
                for &i in &self.cols[var] {
                    resid[i] -= 1.0;
                }
            }
        }
        for k in 0..r {
            let row = &self.binv[k * r..(k + 1) * r];
            self.x_basic[k] = row.iter().zip(&resid).map(|(a, b)| a * b).sum();
        }
        self.y.iter_mut().for_each(|v| *v = 0.0);
        for k in 0..r {
            let c = self.cost(self.basic[k]);
            if c != 0.0 {
                let row = &self.binv[k * r..(k + 1) * r];
                for (y, a) in self.y.iter_mut().zip(row) {
                    *y += c * a;
                }
            }
        }
    }

    fn pivot(&mut self, leave_row: usize, alpha: &[f64], d_enter: f64) {
        let r = self.r;
        let piv = alpha[leave_row];
        let (before, rest) = self.binv.split_at_mut(leave_row * r);
        let (pivot_row, after) = rest.split_at_mut(r);

        let scale = d_enter / piv;
        for (y, a) in self.y.iter_mut().zip(pivot_row.iter()) {
            *y += scale * *a;
        }

        pivot_row.iter_mut().for_each(|v| *v /= piv);
        for (k, chunk) in before.chunks_exact_mut(r).enumerate() {
            eliminate(chunk, pivot_row, alpha[k]);
        }
        for (k, chunk) in after.chunks_exact_mut(r).enumerate() {
            eliminate(chunk, pivot_row, alpha[leave_row + 1 + k]);
        }
    }

    fn values(&self) -> Vec<f64> {
        (0..self.p)
            .map(|var| match self.state[var] {
                VarState::Basic(k) => self.x_basic[k].clamp(0.0, 1.0),
                VarState::AtLower => 0.0,
                VarState::AtUpper => 1.0,
            })
            .collect()
    }
}

fn eliminate(row: &mut [f64], pivot_row: &[f64], factor: f64) {
    if factor != 0.0 {
        for (v, p) in row.iter_mut().zip(pivot_row) {
            *v -= factor * p;
        }
    }
}

/// Solves one block. `cols[j]` lists the rows containing structural `j`;
/// every `rhs` entry must be non-negative.
pub(crate) fn solve_block(
    cols: &[Vec<usize>],
    rhs: &[f64],
    tol: f64,
) -> Result<(Vec<f64>, SimplexStats), SolverError> {
    let mut t = Tableau::new(cols, rhs, tol);
    let mut stats = SimplexStats {
        blocks: 1,
        largest_block_rows: t.r,
        ..SimplexStats::default()
    };
    let limit = 50 * (t.p + t.r) + 10_000;
    let mut alpha = vec![0.0; t.r];
    let mut rule = Rule::Dantzig;
    let mut stalled = 0usize;
    let mut since_refresh = 0usize;

    for _ in 0..limit {
        let Some((enter, d_enter)) = t.price(rule) else {
            t.refresh();
            // Drift can leave a reduced cost just past tolerance; re-price once.
            if t.price(rule).is_none() {
                return Ok((t.values(), stats));
            }
            continue;
        };

        let dir = if t.state[enter] == VarState::AtLower { 1.0 } else { -1.0 };
        t.column(enter, &mut alpha);

        // Ratio test: basic values move by -dir * step * alpha. The first pass
        // finds the shortest step, the second picks the leaving row among
        // near-ties.
        let ratio_of = |k: usize| -> Option<(f64, bool)> {
            let a = dir * alpha[k];
            if a > tol {
                Some((t.x_basic[k].max(0.0) / a, false))
            } else if a < -tol {
                let ub = t.upper(t.basic[k]);
                ub.is_finite()
                    .then(|| ((ub - t.x_basic[k]).max(0.0) / -a, true))
            } else {
                None
            }
        };
        let min_ratio = (0..t.r)
            .filter_map(|k| ratio_of(k).map(|(ratio, _)| ratio))
            .fold(f64::INFINITY, f64::min);
        let flip = t.upper(enter);
        let (step, leave) = if flip <= min_ratio {
            (flip, None)
        } else {
            let mut leave: Option<(usize, bool)> = None;
            for k in 0..t.r {
                let Some((ratio, to_upper)) = ratio_of(k) else { continue };
                if ratio > min_ratio + tol {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some((prev, _)) => match rule {
                        Rule::Dantzig => alpha[k].abs() > alpha[prev].abs(),
                        Rule::Bland => t.basic[k] < t.basic[prev],
                    },
                };
                if better {
                    leave = Some((k, to_upper));
                }
            }
            (min_ratio, leave)
        };

        if step.is_infinite() {
            return Err(SolverError::Unbounded { var: enter });
        }

        for (xk, &ak) in t.x_basic.iter_mut().zip(&alpha) {
            *xk -= dir * step * ak;
        }

        match leave {
            None => {
                t.state[enter] = if dir > 0.0 { VarState::AtUpper } else { VarState::AtLower };
                stats.bound_flips += 1;
            }
            Some((k, to_upper)) => {
                let out = t.basic[k];
                let start = if dir > 0.0 { 0.0 } else { 1.0 };
                t.pivot(k, &alpha, d_enter);
                t.state[out] = if to_upper { VarState::AtUpper } else { VarState::AtLower };
                t.state[enter] = VarState::Basic(k);
                t.basic[k] = enter;
                t.x_basic[k] = start + dir * step;
                stats.pivots += 1;
                since_refresh += 1;
                if since_refresh >= REFRESH_EVERY {
                    t.refresh();
                    since_refresh = 0;
                }
            }
        }

        if step <= tol {
            stats.degenerate_pivots += 1;
            stalled += 1;
            if stalled >= STALL_THRESHOLD {
                rule = Rule::Bland;
            }
        } else {
            stalled = 0;
            rule = Rule::Dantzig;
        }
    }

    Err(SolverError::IterationLimitExceeded { limit })
}
