//! Synthetic authorship instances with power-law author productivity.
//!
//! Each author draws a paper budget from a discrete power law on
//! `1..=max_papers_per_author`. Each paper draws its size from a truncated
//! geometric distribution and fills its slots by sampling authors without
//! replacement, weighted by remaining budget. Authors left without a paper
//! are attached to a random one, so the realized author count is exact.

use capopt_ingest::PaperRecord;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric, Zipf};

use crate::error::BenchError;

pub const DEFAULT_MAX_AUTHORS_PER_PAPER: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub n_authors: usize,
    pub m_papers: usize,
    /// Power-law exponent of per-author paper counts.
    pub alpha: f64,
    /// Mean paper size; defaults to total author budget over `m_papers`.
    pub mean_authors_per_paper: Option<f64>,
    pub max_authors_per_paper: usize,
    /// Truncation of the power law; defaults to `m_papers`.
    pub max_papers_per_author: Option<usize>,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(n_authors: usize, m_papers: usize, alpha: f64, seed: u64) -> Self {
        GeneratorConfig {
            n_authors,
            m_papers,
            alpha,
            mean_authors_per_paper: None,
            max_authors_per_paper: DEFAULT_MAX_AUTHORS_PER_PAPER,
            max_papers_per_author: None,
            seed,
        }
    }

    fn paper_cap(&self) -> usize {
        self.max_papers_per_author.unwrap_or(self.m_papers).min(self.m_papers)
    }

    fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg: String| Err(BenchError::Config(msg));
        if self.m_papers == 0 {
            return bad("number of papers must be positive".into());
        }
        if self.n_authors == 0 {
            return bad("number of authors must be positive".into());
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return bad(format!("alpha must be a positive number, got {}", self.alpha));
        }
        if let Some(mu) = self.mean_authors_per_paper {
            if !(mu.is_finite() && mu >= 1.0) {
                return bad(format!("mean authors per paper must be at least 1, got {mu}"));
            }
        }
        if self.max_authors_per_paper == 0 {
            return bad("max authors per paper must be positive".into());
        }
        if self.max_papers_per_author == Some(0) {
            return bad("max papers per author must be positive".into());
        }
        Ok(())
    }
}

/// Mean of the power law `P(k) ∝ k^-alpha` on `1..=cap`.
pub fn expected_papers_per_author(alpha: f64, cap: usize) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for k in 1..=cap.max(1) {
        let w = (k as f64).powf(-alpha);
        num += k as f64 * w;
        den += w;
    }
    num / den
}

/// Exponent whose truncated power law has the given mean, by bisection.
pub fn alpha_for_mean(target: f64, cap: usize) -> Result<f64, BenchError> {
    let (mut lo, mut hi) = (0.05, 30.0);
    let (max_mean, min_mean) = (expected_papers_per_author(lo, cap), expected_papers_per_author(hi, cap));
    if !(target > min_mean && target < max_mean) {
        return Err(BenchError::Config(format!(
            "mean papers per author {target} is outside the reachable range ({min_mean:.4}, {max_mean:.4})"
        )));
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if expected_papers_per_author(mid, cap) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Prefix sums over non-negative weights with weighted lookup.
struct Fenwick {
    tree: Vec<u64>,
    total: u64,
}

impl Fenwick {
    fn new(weights: &[u64]) -> Self {
        let n = weights.len();
        let mut tree = vec![0u64; n + 1];
        for (i, &w) in weights.iter().enumerate() {
            tree[i + 1] += w;
            let parent = (i + 1) + ((i + 1) & (i + 1).wrapping_neg());
            if parent <= n {
                tree[parent] += tree[i + 1];
            }
        }
        Fenwick {
            tree,
            total: weights.iter().sum(),
        }
    }

    fn add(&mut self, index: usize, delta: i64) {
        self.total = self.total.wrapping_add_signed(delta);
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] = self.tree[i].wrapping_add_signed(delta);
            i += i & i.wrapping_neg();
        }
    }

    /// Smallest index whose inclusive prefix sum exceeds `r`.
    fn find(&self, mut r: u64) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = n.checked_next_power_of_two().unwrap_or(0).max(1);
        while step > 0 {
            if pos + step <= n && self.tree[pos + step] <= r {
                pos += step;
                r -= self.tree[pos];
            }
            step >>= 1;
        }
        pos
    }
}

/// Generates papers `p1..pm` over authors `a1..an`.
pub fn generate(config: &GeneratorConfig) -> Result<Vec<PaperRecord>, BenchError> {
    config.validate()?;
    let n = config.n_authors;
    let m = config.m_papers;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let zipf = Zipf::new(config.paper_cap() as u64, config.alpha)
        .map_err(|e| BenchError::Config(format!("power law: {e}")))?;
    let mut budget: Vec<u64> = (0..n).map(|_| zipf.sample(&mut rng) as u64).collect();
    let total: u64 = budget.iter().sum();

    let max_size = config.max_authors_per_paper.min(n);
    let mean = config
        .mean_authors_per_paper
        .unwrap_or(total as f64 / m as f64)
        .clamp(1.0, max_size as f64);
    let sizes: Vec<usize> = if mean <= 1.0 || max_size == 1 {
        vec![1; m]
    } else {
        let geo = Geometric::new(1.0 / mean).map_err(|e| BenchError::Config(format!("paper size: {e}")))?;
        (0..m)
            .map(|_| loop {
                let s = geo.sample(&mut rng) as usize + 1;
                if s <= max_size {
                    break s;
                }
            })
            .collect()
    };

    let mut weights = Fenwick::new(&budget);
    let mut used = vec![false; n];
    let mut papers: Vec<Vec<usize>> = Vec::with_capacity(m);
    for &size in &sizes {
        let mut chosen: Vec<usize> = Vec::with_capacity(size);
        while chosen.len() < size && weights.total > 0 {
            let i = weights.find(rng.gen_range(0..weights.total));
            weights.add(i, -(budget[i] as i64));
            chosen.push(i);
        }
        for &i in &chosen {
            budget[i] -= 1;
            weights.add(i, budget[i] as i64);
        }
        while chosen.len() < size {
            let i = rng.gen_range(0..n);
            if !chosen.contains(&i) {
                chosen.push(i);
            }
        }
        for &i in &chosen {
            used[i] = true;
        }
        papers.push(chosen);
    }
    for (i, _) in used.iter().enumerate().filter(|(_, &u)| !u) {
        let j = rng.gen_range(0..m);
        papers[j].push(i);
    }
    papers.shuffle(&mut rng);

    Ok(papers
        .into_iter()
        .enumerate()
        .map(|(j, mut authors)| {
            authors.sort_unstable();
            PaperRecord::new(
                format!("p{}", j + 1),
                authors.into_iter().map(|i| format!("a{}", i + 1)).collect(),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fenwick_lookup() {
        let mut f = Fenwick::new(&[2, 0, 3, 1]);
        assert_eq!(f.total, 6);
        let hits: Vec<usize> = (0..6).map(|r| f.find(r)).collect();
        assert_eq!(hits, vec![0, 0, 2, 2, 2, 3]);
        f.add(2, -3);
        assert_eq!(f.total, 3);
        assert_eq!((0..3).map(|r| f.find(r)).collect::<Vec<_>>(), vec![0, 0, 3]);
    }

    #[test]
    fn power_law_mean() {
        assert!((expected_papers_per_author(2.0, 1) - 1.0).abs() < 1e-12);
        // 1 * 1 + 2 * 1/4 over 1 + 1/4.
        assert!((expected_papers_per_author(2.0, 2) - 1.2).abs() < 1e-12);
        let a = alpha_for_mean(1.61, 11672).unwrap();
        assert!((expected_papers_per_author(a, 11672) - 1.61).abs() < 1e-9);
        assert!(alpha_for_mean(0.5, 100).is_err());
    }

    #[test]
    fn rejects_bad_configs() {
        let ok = GeneratorConfig::new(10, 5, 2.0, 1);
        assert!(generate(&ok).is_ok());
        for bad in [
            GeneratorConfig { m_papers: 0, ..ok.clone() },
            GeneratorConfig { n_authors: 0, ..ok.clone() },
            GeneratorConfig { alpha: f64::NAN, ..ok.clone() },
            GeneratorConfig { mean_authors_per_paper: Some(0.5), ..ok.clone() },
        ] {
            assert!(matches!(generate(&bad), Err(BenchError::Config(_))), "{bad:?}");
        }
    }

    #[test]
    fn every_author_and_paper_used() {
        let recs = generate(&GeneratorConfig::new(300, 120, 2.2, 3)).unwrap();
        assert_eq!(recs.len(), 120);
        assert!(recs.iter().all(|r| !r.authors.is_empty()));
        let mut seen: Vec<&str> = recs.iter().flat_map(|r| r.authors.iter().map(String::as_str)).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 300);
    }
}
