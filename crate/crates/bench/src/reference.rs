//! Published ICLR snapshot statistics and rejection counts, and a comparison
//! of local sweeps against them.

use capopt_core::{InstanceStats, PolicyKind};

use crate::report::SweepRow;

/// Limits of the published rejection table.
pub const REFERENCE_LIMITS: [u32; 8] = [4, 7, 10, 13, 16, 19, 22, 25];
/// Allowed difference in OptReject counts; LP ties can round differently.
pub const OPT_TOLERANCE: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YearStats {
    pub year: i32,
    pub n: usize,
    pub m: usize,
    pub nnz: usize,
    pub max_papers_per_author: usize,
}

pub const YEAR_STATS: [YearStats; 11] = [
    YearStats { year: 2013, n: 161, m: 67, nnz: 190, max_papers_per_author: 7 },
    YearStats { year: 2014, n: 187, m: 69, nnz: 217, max_papers_per_author: 7 },
    YearStats { year: 2017, n: 1474, m: 490, nnz: 1825, max_papers_per_author: 8 },
    YearStats { year: 2018, n: 2820, m: 935, nnz: 3512, max_papers_per_author: 12 },
    YearStats { year: 2019, n: 4388, m: 1419, nnz: 5619, max_papers_per_author: 23 },
    YearStats { year: 2020, n: 6963, m: 2213, nnz: 9117, max_papers_per_author: 26 },
    YearStats { year: 2021, n: 7964, m: 2594, nnz: 10854, max_papers_per_author: 30 },
    YearStats { year: 2022, n: 8507, m: 2617, nnz: 11572, max_papers_per_author: 23 },
    YearStats { year: 2023, n: 12451, m: 3793, nnz: 17375, max_papers_per_author: 24 },
    YearStats { year: 2024, n: 23382, m: 7404, nnz: 35912, max_papers_per_author: 35 },
    YearStats { year: 2025, n: 38495, m: 11672, nnz: 61992, max_papers_per_author: 42 },
];

/// Rejections at [`REFERENCE_LIMITS`]: `(year, all_reject, forward_reject, opt_reject)`.
#[allow(clippy::type_complexity)]
pub const REJECTIONS: [(i32, [usize; 8], [usize; 8], [usize; 8]); 8] = [
    (2018, [56, 18, 5, 0, 0, 0, 0, 0], [53, 18, 5, 0, 0, 0, 0, 0], [51, 17, 5, 0, 0, 0, 0, 0]),
    (2019, [127, 43, 18, 11, 7, 4, 1, 0], [115, 39, 18, 11, 7, 4, 1, 0], [106, 37, 18, 11, 7, 4, 1, 0]),
    (2020, [206, 62, 33, 21, 14, 8, 4, 1], [189, 60, 33, 21, 14, 8, 4, 1], [177, 56, 29, 18, 11, 7, 4, 1]),
    (2021, [363, 140, 70, 37, 21, 13, 8, 5], [328, 129, 65, 35, 21, 13, 8, 5], [303, 120, 65, 35, 21, 13, 8, 5]),
    (2022, [363, 141, 61, 24, 13, 7, 1, 0], [326, 132, 59, 24, 13, 7, 1, 0], [296, 124, 56, 23, 13, 7, 1, 0]),
    (2023, [572, 196, 98, 50, 27, 11, 2, 0], [506, 181, 91, 45, 22, 8, 2, 0], [460, 166, 84, 43, 20, 8, 2, 0]),
    (
        2024,
        [1797, 811, 384, 186, 104, 58, 30, 16],
        [1553, 720, 342, 170, 95, 53, 26, 13],
        [1393, 637, 303, 149, 83, 44, 21, 12],
    ),
    (
        2025,
        [3464, 1807, 995, 554, 294, 158, 89, 51],
        [2984, 1577, 889, 499, 273, 151, 83, 47],
        [2668, 1379, 773, 438, 238, 132, 74, 43],
    ),
];

pub fn year_stats(year: i32) -> Option<&'static YearStats> {
    YEAR_STATS.iter().find(|s| s.year == year)
}

/// Published rejection count for a policy, year and limit.
pub fn reference_rejections(year: i32, policy: PolicyKind, b: u32) -> Option<usize> {
    let col = REFERENCE_LIMITS.iter().position(|&l| l == b)?;
    let (_, all, fwd, ours) = REJECTIONS.iter().find(|r| r.0 == year)?;
    match policy {
        PolicyKind::AllReject => Some(all[col]),
        PolicyKind::ForwardReject => Some(fwd[col]),
        PolicyKind::OptReject => Some(ours[col]),
        PolicyKind::BackwardReject => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountCheck {
    pub b: u32,
    pub policy: PolicyKind,
    pub expected: usize,
    pub actual: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub year: i32,
    /// Whether the local snapshot has the published `(n, m, nnz)`.
    pub stats_match: bool,
    pub stats_note: String,
    pub checks: Vec<CountCheck>,
}

impl Comparison {
    /// True when counts agree, or when the snapshot differs and disagreement
    /// is only flagged.
    pub fn passed(&self) -> bool {
        !self.stats_match || self.checks.iter().all(|c| c.ok)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CountCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

pub fn compare(year: i32, stats: &InstanceStats, rows: &[SweepRow]) -> Option<Comparison> {
    let want = year_stats(year)?;
    let stats_match = (stats.n, stats.m, stats.nnz) == (want.n, want.m, want.nnz);
    let stats_note = format!(
        "local n={} m={} nnz={}; published n={} m={} nnz={}",
        stats.n, stats.m, stats.nnz, want.n, want.m, want.nnz
    );
    let mut checks = Vec::new();
    for row in rows {
        for (&policy, &actual) in &row.rejections {
            let Some(expected) = reference_rejections(year, policy, row.b) else {
                continue;
            };
            let ok = if policy == PolicyKind::OptReject {
                actual.abs_diff(expected) <= OPT_TOLERANCE
            } else {
                actual == expected
            };
            checks.push(CountCheck {
                b: row.b,
                policy,
                expected,
                actual,
                ok,
            });
        }
    }
    Some(Comparison {
        year,
        stats_match,
        stats_note,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::relative_improvement;
    use std::collections::BTreeMap;

    #[test]
    fn published_improvements_follow_from_counts() {
        // Spot values printed alongside the counts.
        let cases = [(2024, 22, "19.23"), (2025, 7, "12.56"), (2018, 4, "3.77"), (2020, 16, "21.43")];
        for (year, b, want) in cases {
            let all = reference_rejections(year, PolicyKind::AllReject, b).unwrap();
            let fwd = reference_rejections(year, PolicyKind::ForwardReject, b).unwrap();
            let ours = reference_rejections(year, PolicyKind::OptReject, b).unwrap();
            let got = relative_improvement(&[all, fwd], ours).unwrap();
            assert_eq!(format!("{got:.2}"), want);
        }
    }

    #[test]
    fn drifted_snapshot_is_flagged_not_failed() {
        let stats = InstanceStats {
            n: 10,
            m: 935,
            nnz: 3000,
            k1: 12,
            k2: 5,
            mean_papers_per_author: 300.0,
        };
        let row = SweepRow {
            dataset: "x".into(),
            b: 4,
            rejections: BTreeMap::from([(PolicyKind::AllReject, 50), (PolicyKind::OptReject, 52)]),
            relative_improvement_pct: None,
            runtime: BTreeMap::new(),
        };
        let c = compare(2018, &stats, &[row]).unwrap();
        assert!(!c.stats_match);
        assert_eq!(c.mismatches().count(), 1);
        assert!(c.passed());
        assert!(compare(2016, &stats, &[]).is_none());
    }
}
