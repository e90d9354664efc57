//! Safe-author elimination.
//!
//! An author with at most `b` papers can never violate the limit, so their
//! row is dropped. A paper none of whose authors is over the limit is
//! accepted outright. What remains is a smaller instance over the at-risk
//! papers and the over-limit authors, plus the map back to the original.

use crate::error::ModelError;
use crate::model::{AuthorId, AuthorshipInstance, DecisionVector, PaperId};

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedInstance {
    /// At-risk papers and over-limit authors only.
    pub inner: AuthorshipInstance,
    /// `paper_map[k]` is the original id of inner paper `k + 1`. Ascending.
    pub paper_map: Vec<PaperId>,
    /// Original papers with no over-limit author. Ascending.
    pub fixed_accepted: Vec<PaperId>,
    pub original_m: usize,
    pub b: u32,
}

impl ReducedInstance {
    pub fn original_paper(&self, inner: PaperId) -> PaperId {
        self.paper_map[inner.index()]
    }
}

pub fn reduce_instance(inst: &AuthorshipInstance, b: u32) -> ReducedInstance {
    let over: Vec<bool> = inst
        .authors()
        .map(|a| inst.papers_of(a).len() > b as usize)
        .collect();

    // Inner author ordinals follow original ordinals among the over-limit ones.
    let mut inner_author = vec![None; inst.n()];
    let mut labels = Vec::new();
    for a in inst.authors() {
        if over[a.index()] {
            labels.push(inst.label(a).to_owned());
            inner_author[a.index()] = Some(AuthorId::from_index(labels.len() - 1));
        }
    }

    let mut lists = Vec::new();
    let mut paper_map = Vec::new();
    let mut fixed_accepted = Vec::new();
    for p in inst.papers() {
        let list: Vec<AuthorId> = inst
            .authors_of(p)
            .iter()
            .filter_map(|a| inner_author[a.index()])
            .collect();
        if list.is_empty() {
            fixed_accepted.push(p);
        } else {
            lists.push(list);
            paper_map.push(p);
        }
    }

    ReducedInstance {
        inner: AuthorshipInstance::from_sorted_lists(&lists, labels),
        paper_map,
        fixed_accepted,
        original_m: inst.m(),
        b,
    }
}

/// Maps a decision on the reduced instance back to the original papers.
/// Papers outside the reduced instance are accepted.
pub fn lift_decision(red: &ReducedInstance, inner_x: &DecisionVector) -> Result<DecisionVector, ModelError> {
    if inner_x.len() != red.inner.m() {
        return Err(ModelError::LengthMismatch {
            expected: red.inner.m(),
            actual: inner_x.len(),
        });
    }
    let mut x = DecisionVector::all_accepted(red.original_m);
    for (k, &orig) in red.paper_map.iter().enumerate() {
        x.set(orig, inner_x.is_accepted(PaperId::from_index(k)));
    }
    Ok(x)
}
