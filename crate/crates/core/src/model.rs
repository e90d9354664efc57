//! Authorship instances: the sparse 0/1 matrix linking authors to papers,
//! binary accept/reject decisions over papers, and summary statistics.
//!
//! Both directions of the incidence are stored in compressed form, so
//! per-author and per-paper lookups are slices.

use std::collections::HashMap;
use std::fmt;

use crate::error::ModelError;

/// 1-based paper ordinal. Smaller ordinals are earlier submissions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PaperId(u32);

/// 1-based author ordinal, assigned by first appearance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AuthorId(u32);

macro_rules! ordinal_impl {
    ($ty:ident) => {
        impl $ty {
            /// Builds an id from a 0-based index.
            pub fn from_index(index: usize) -> Self {
                $ty(u32::try_from(index + 1).expect("ordinal overflows u32"))
            }

            /// Builds an id from a 1-based ordinal. Panics on zero.
            pub fn from_ordinal(ordinal: u32) -> Self {
                assert!(ordinal >= 1, "ordinals are 1-based");
                $ty(ordinal)
            }

            pub fn ordinal(self) -> u32 {
                self.0
            }

            pub fn index(self) -> usize {
                (self.0 - 1) as usize
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

ordinal_impl!(PaperId);
ordinal_impl!(AuthorId);

/// Compressed adjacency lists: `items[offsets[k]..offsets[k + 1]]` are the
/// neighbours of row `k`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Adjacency<T> {
    offsets: Vec<usize>,
    items: Vec<T>,
}

impl<T> Adjacency<T> {
    fn row(&self, k: usize) -> &[T] {
        &self.items[self.offsets[k]..self.offsets[k + 1]]
    }

    fn rows(&self) -> usize {
        self.offsets.len() - 1
    }
}

/// Immutable author–paper incidence (the authorship matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthorshipInstance {
    authors_of: Adjacency<AuthorId>,
    papers_of: Adjacency<PaperId>,
    labels: Vec<String>,
}

impl AuthorshipInstance {
    /// Number of authors `n`.
    pub fn n(&self) -> usize {
        self.papers_of.rows()
    }

    /// Number of papers `m`.
    pub fn m(&self) -> usize {
        self.authors_of.rows()
    }

    pub fn nnz(&self) -> usize {
        self.authors_of.items.len()
    }

    /// Authors of `paper`, ascending by ordinal.
    pub fn authors_of(&self, paper: PaperId) -> &[AuthorId] {
        self.authors_of.row(paper.index())
    }

    /// Papers of `author`, ascending by ordinal.
    pub fn papers_of(&self, author: AuthorId) -> &[PaperId] {
        self.papers_of.row(author.index())
    }

    pub fn label(&self, author: AuthorId) -> &str {
        &self.labels[author.index()]
    }

    pub fn papers(&self) -> impl DoubleEndedIterator<Item = PaperId> + ExactSizeIterator {
        (0..self.m()).map(PaperId::from_index)
    }

    pub fn authors(&self) -> impl DoubleEndedIterator<Item = AuthorId> + ExactSizeIterator {
        (0..self.n()).map(AuthorId::from_index)
    }

    /// Per-paper author label lists, in paper order. Inverse of [`build_instance`]
    /// up to deduplication and label ordering inside a paper.
    pub fn to_author_lists(&self) -> Vec<Vec<String>> {
        self.papers()
            .map(|p| {
                self.authors_of(p)
                    .iter()
                    .map(|&a| self.label(a).to_owned())
                    .collect()
            })
            .collect()
    }

    /// Builds an instance from per-paper author ordinal lists. Author labels
    /// are taken from `labels`; every list must be non-empty, sorted and
    /// duplicate-free with ordinals in `1..=labels.len()`.
    pub(crate) fn from_sorted_lists(lists: &[Vec<AuthorId>], labels: Vec<String>) -> Self {
        let n = labels.len();
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut items = Vec::new();
        let mut degree = vec![0usize; n];
        for list in lists {
            debug_assert!(!list.is_empty());
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
            for &a in list {
                degree[a.index()] += 1;
            }
            items.extend_from_slice(list);
            offsets.push(items.len());
        }

        let mut p_offsets = Vec::with_capacity(n + 1);
        p_offsets.push(0);
        for d in &degree {
            p_offsets.push(p_offsets.last().unwrap() + d);
        }
        let mut cursor = p_offsets[..n].to_vec();
        let mut p_items = vec![PaperId(1); items.len()];
        // Papers are visited in ascending order, so each author's row comes out sorted.
        for (j, list) in lists.iter().enumerate() {
            for &a in list {
                p_items[cursor[a.index()]] = PaperId::from_index(j);
                cursor[a.index()] += 1;
            }
        }

        AuthorshipInstance {
            authors_of: Adjacency { offsets, items },
            papers_of: Adjacency {
                offsets: p_offsets,
                items: p_items,
            },
            labels,
        }
    }
}

/// Builds an instance from per-paper author label lists. Authors are numbered
/// by first appearance and papers follow input order. Duplicate labels within
/// one paper are collapsed.
pub fn build_instance<L, S>(lists: &[L]) -> Result<AuthorshipInstance, ModelError>
where
    L: AsRef<[S]>,
    S: AsRef<str>,
{
    let (inst, dropped) = build_inner(lists, false)?;
    debug_assert!(dropped.is_empty());
    Ok(inst)
}

/// Like [`build_instance`] but silently drops papers with no authors and
/// returns their 0-based input positions alongside the instance.
pub fn build_instance_dropping_empty<L, S>(lists: &[L]) -> (AuthorshipInstance, Vec<usize>)
where
    L: AsRef<[S]>,
    S: AsRef<str>,
{
    build_inner(lists, true).expect("dropping mode does not fail")
}

fn build_inner<L, S>(lists: &[L], drop_empty: bool) -> Result<(AuthorshipInstance, Vec<usize>), ModelError>
where
    L: AsRef<[S]>,
    S: AsRef<str>,
{
    let mut ordinal_of: HashMap<&str, AuthorId> = HashMap::new();
    let mut labels = Vec::new();
    let mut papers = Vec::with_capacity(lists.len());
    let mut dropped = Vec::new();
    for (index, list) in lists.iter().enumerate() {
        let list = list.as_ref();
        if list.is_empty() {
            if drop_empty {
                dropped.push(index);
                continue;
            }
            return Err(ModelError::EmptyPaper { index });
        }
        let mut ids: Vec<AuthorId> = list
            .iter()
            .map(|label| {
                let label = label.as_ref();
                *ordinal_of.entry(label).or_insert_with(|| {
                    labels.push(label.to_owned());
                    AuthorId::from_index(labels.len() - 1)
                })
            })
            .collect();
        ids.sort_unstable();
        ids.dedup();
        papers.push(ids);
    }
    Ok((AuthorshipInstance::from_sorted_lists(&papers, labels), dropped))
}

/// Binary accept (`true`) / reject (`false`) assignment over papers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecisionVector(Vec<bool>);

impl DecisionVector {
    pub fn all_accepted(m: usize) -> Self {
        DecisionVector(vec![true; m])
    }

    pub fn all_rejected(m: usize) -> Self {
        DecisionVector(vec![false; m])
    }

    pub fn from_bools(values: Vec<bool>) -> Self {
        DecisionVector(values)
    }

    /// Parses 0/1 integers; any nonzero entry counts as accepted.
    pub fn from_bits(bits: &[u8]) -> Self {
        DecisionVector(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.0.iter().map(|&b| u8::from(b)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_accepted(&self, paper: PaperId) -> bool {
        self.0[paper.index()]
    }

    pub fn set(&mut self, paper: PaperId, accepted: bool) {
        self.0[paper.index()] = accepted;
    }

    pub fn accepted_count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn rejected_count(&self) -> usize {
        self.len() - self.accepted_count()
    }

    pub fn accepted(&self) -> impl Iterator<Item = PaperId> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| PaperId::from_index(j))
    }

    pub fn rejected(&self) -> impl Iterator<Item = PaperId> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| !b)
            .map(|(j, _)| PaperId::from_index(j))
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

/// Summary statistics of an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceStats {
    pub n: usize,
    pub m: usize,
    pub nnz: usize,
    /// Maximum papers per author (MSPA).
    pub k1: usize,
    /// Maximum authors per paper.
    pub k2: usize,
    /// Mean papers per author, `nnz / n`.
    pub mean_papers_per_author: f64,
}

pub fn compute_stats(inst: &AuthorshipInstance) -> InstanceStats {
    let k1 = inst.authors().map(|a| inst.papers_of(a).len()).max().unwrap_or(0);
    let k2 = inst.papers().map(|p| inst.authors_of(p).len()).max().unwrap_or(0);
    let n = inst.n();
    InstanceStats {
        n,
        m: inst.m(),
        nnz: inst.nnz(),
        k1,
        k2,
        mean_papers_per_author: if n == 0 { 0.0 } else { inst.nnz() as f64 / n as f64 },
    }
}

/// Accepted-paper count of every author under `x`.
pub fn author_loads(inst: &AuthorshipInstance, x: &DecisionVector) -> Result<Vec<usize>, ModelError> {
    if x.len() != inst.m() {
        return Err(ModelError::LengthMismatch {
            expected: inst.m(),
            actual: x.len(),
        });
    }
    Ok(inst
        .authors()
        .map(|a| inst.papers_of(a).iter().filter(|&&p| x.is_accepted(p)).count())
        .collect())
}

/// True iff no author has more than `b` accepted papers under `x`.
pub fn check_feasible(inst: &AuthorshipInstance, b: u32, x: &DecisionVector) -> Result<bool, ModelError> {
    Ok(author_loads(inst, x)?.into_iter().all(|load| load <= b as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn t1() -> AuthorshipInstance {
        build_instance(&[
            vec!["A"],
            vec!["A"],
            vec!["A", "B"],
            vec!["B"],
            vec!["B"],
        ])
        .unwrap()
    }

    #[test]
    fn builds_triangle() {
        let inst = build_instance(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        assert_eq!((inst.n(), inst.m(), inst.nnz()), (3, 3, 6));
        let a = AuthorId::from_ordinal(1);
        assert_eq!(inst.label(a), "a");
        assert_eq!(
            inst.papers_of(a),
            &[PaperId::from_ordinal(1), PaperId::from_ordinal(3)]
        );
    }

    #[test]
    fn singleton() {
        let inst = build_instance(&[vec!["a"]]).unwrap();
        assert_eq!((inst.n(), inst.m(), inst.nnz()), (1, 1, 1));
        let s = compute_stats(&inst);
        assert_eq!((s.k1, s.k2), (1, 1));
    }

    #[test]
    fn duplicate_author_collapsed() {
        let inst = build_instance(&[vec!["a", "a", "b"]]).unwrap();
        assert_eq!(inst.nnz(), 2);
        assert_eq!(inst.to_author_lists(), vec![vec!["a".to_owned(), "b".to_owned()]]);
    }

    #[test]
    fn empty_paper_is_error_or_dropped() {
        let lists: Vec<Vec<&str>> = vec![vec!["a"], vec![], vec!["b"]];
        assert_eq!(build_instance(&lists), Err(ModelError::EmptyPaper { index: 1 }));
        let (inst, dropped) = build_instance_dropping_empty(&lists);
        assert_eq!(dropped, vec![1]);
        assert_eq!(inst.m(), 2);
    }

    #[test]
    fn t1_stats() {
        let s = compute_stats(&t1());
        assert_eq!((s.n, s.m, s.nnz, s.k1, s.k2), (2, 5, 6, 3, 2));
        assert_eq!(s.mean_papers_per_author, 3.0);
    }

    #[test]
    fn t1_feasibility() {
        let inst = t1();
        assert!(check_feasible(&inst, 2, &DecisionVector::from_bits(&[1, 1, 0, 1, 1])).unwrap());
        assert!(!check_feasible(&inst, 2, &DecisionVector::all_accepted(5)).unwrap());
        assert!(check_feasible(&inst, 3, &DecisionVector::all_accepted(5)).unwrap());
        assert!(check_feasible(&inst, 0, &DecisionVector::all_rejected(5)).unwrap());
        assert_eq!(
            check_feasible(&inst, 2, &DecisionVector::all_accepted(4)),
            Err(ModelError::LengthMismatch { expected: 5, actual: 4 })
        );
    }
}
