#![allow(dead_code)]

use capopt_core::{build_instance, AuthorshipInstance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random author lists: `m` papers over at most `n` authors, each paper with
/// 1..=max_k distinct authors.
pub fn random_lists(rng: &mut impl Rng, n: usize, m: usize, max_k: usize) -> Vec<Vec<String>> {
    let pool: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
    (0..m)
        .map(|_| {
            let k = rng.gen_range(1..=max_k.min(n));
            pool.choose_multiple(rng, k).cloned().collect()
        })
        .collect()
}

pub fn random_instance(rng: &mut impl Rng, max_n: usize, max_m: usize) -> AuthorshipInstance {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    build_instance(&random_lists(rng, n, m, 4)).unwrap()
}

/// Exact LP optimum by vertex enumeration: every vertex of
/// `{x in [0,1]^m : Ax <= rhs}` is the unique solution of `m` tight
/// constraints. Only for tiny `m`.
pub fn lp_optimum_by_vertices(m: usize, rows: &[(Vec<usize>, f64)]) -> f64 {
    // Constraint list as (coefficients, rhs) for a.x <= rhs, plus -x_j <= 0, x_j <= 1.
    let mut cons: Vec<(Vec<f64>, f64)> = rows
        .iter()
        .map(|(vars, rhs)| {
            let mut a = vec![0.0; m];
            for &v in vars {
                a[v] = 1.0;
            }
            (a, *rhs)
        })
        .collect();
    for j in 0..m {
        let mut lo = vec![0.0; m];
        lo[j] = -1.0;
        cons.push((lo, 0.0));
        let mut hi = vec![0.0; m];
        hi[j] = 1.0;
        cons.push((hi, 1.0));
    }
    if m == 0 {
        return 0.0;
    }
    let mut best = f64::NEG_INFINITY;
    let mut pick = Vec::with_capacity(m);
    choose(&cons, m, 0, &mut pick, &mut best);
    best
}

fn choose(cons: &[(Vec<f64>, f64)], m: usize, from: usize, pick: &mut Vec<usize>, best: &mut f64) {
    if pick.len() == m {
        if let Some(x) = solve_square(cons, pick, m) {
            let feasible = cons
                .iter()
                .all(|(a, r)| a.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>() <= r + 1e-9);
            if feasible {
                *best = best.max(x.iter().sum());
            }
        }
        return;
    }
    for k in from..cons.len() {
        pick.push(k);
        choose(cons, m, k + 1, pick, best);
        pick.pop();
    }
}

fn solve_square(cons: &[(Vec<f64>, f64)], pick: &[usize], m: usize) -> Option<Vec<f64>> {
    let mut a: Vec<Vec<f64>> = pick
        .iter()
        .map(|&k| {
            let mut row = cons[k].0.clone();
            row.push(cons[k].1);
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        for i in 0..m {
            if i != col {
                let f = a[i][col] / a[col][col];
                for c in col..=m {
                    a[i][c] -= f * a[col][c];
                }
            }
        }
    }
    Some((0..m).map(|i| a[i][m] / a[i][i]).collect())
}
