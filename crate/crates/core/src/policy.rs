//! Desk-rejection policies conferences use today.
//!
//! All three honour the convention of keeping the smallest submission ids.

use std::fmt;
use std::str::FromStr;

use crate::model::{AuthorshipInstance, DecisionVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolicyKind {
    AllReject,
    ForwardReject,
    BackwardReject,
    OptReject,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 4] = [
        PolicyKind::AllReject,
        PolicyKind::ForwardReject,
        PolicyKind::BackwardReject,
        PolicyKind::OptReject,
    ];

    pub fn is_baseline(self) -> bool {
        self != PolicyKind::OptReject
    }

    /// Snake-case name used in reports.
    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::AllReject => "all_reject",
            PolicyKind::ForwardReject => "forward_reject",
            PolicyKind::BackwardReject => "backward_reject",
            PolicyKind::OptReject => "opt_reject",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownPolicy(pub String);

impl fmt::Display for UnknownPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown policy `{}` (expected all, forward, backward or opt)",
            self.0
        )
    }
}

impl std::error::Error for UnknownPolicy {}

impl FromStr for PolicyKind {
    type Err = UnknownPolicy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "all" | "all_reject" | "allreject" => Ok(PolicyKind::AllReject),
            "forward" | "forward_reject" | "forwardreject" | "fwd" => Ok(PolicyKind::ForwardReject),
            "backward" | "backward_reject" | "backwardreject" | "bwd" => Ok(PolicyKind::BackwardReject),
            "opt" | "opt_reject" | "optreject" | "ours" => Ok(PolicyKind::OptReject),
            _ => Err(UnknownPolicy(s.to_owned())),
        }
    }
}

/// Every author over the limit loses their `|P_i| - b` latest papers; the
/// per-author reject sets are unioned.
pub fn all_reject(inst: &AuthorshipInstance, b: u32) -> DecisionVector {
    let mut x = DecisionVector::all_accepted(inst.m());
    let b = b as usize;
    for a in inst.authors() {
        let papers = inst.papers_of(a);
        if papers.len() > b {
            for &p in &papers[b..] {
                x.set(p, false);
            }
        }
    }
    x
}

/// Scans papers in submission order, accepting a paper iff all of its
/// authors are still below the limit.
pub fn forward_reject(inst: &AuthorshipInstance, b: u32) -> DecisionVector {
    let mut load = vec![0u32; inst.n()];
    let mut x = DecisionVector::all_rejected(inst.m());
    for p in inst.papers() {
        let authors = inst.authors_of(p);
        if authors.iter().all(|a| load[a.index()] < b) {
            for a in authors {
                load[a.index()] += 1;
            }
            x.set(p, true);
        }
    }
    x
}

/// Starts from every paper accepted and scans in reverse submission order,
/// rejecting a paper iff one of its authors currently holds more than `b`.
pub fn backward_reject(inst: &AuthorshipInstance, b: u32) -> DecisionVector {
    let mut load: Vec<usize> = inst.authors().map(|a| inst.papers_of(a).len()).collect();
    let mut x = DecisionVector::all_accepted(inst.m());
    for p in inst.papers().rev() {
        let authors = inst.authors_of(p);
        if authors.iter().any(|a| load[a.index()] > b as usize) {
            for a in authors {
                load[a.index()] -= 1;
            }
            x.set(p, false);
        }
    }
    x
}

/// Runs one of the three baselines. Returns `None` for [`PolicyKind::OptReject`],
/// which needs the LP pipeline in [`crate::opt_reject`].
pub fn run_baseline(kind: PolicyKind, inst: &AuthorshipInstance, b: u32) -> Option<DecisionVector> {
    match kind {
        PolicyKind::AllReject => Some(all_reject(inst, b)),
        PolicyKind::ForwardReject => Some(forward_reject(inst, b)),
        PolicyKind::BackwardReject => Some(backward_reject(inst, b)),
        PolicyKind::OptReject => None,
    }
}
