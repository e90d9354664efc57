//! Turns fetched submissions into per-paper author label lists.

use capopt_core::{build_instance, AuthorshipInstance, ModelError};

use crate::format::PaperRecord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSubmission {
    pub external_id: String,
    pub submission_ordinal: u64,
    /// Profile ids (`~First_Last1`) where available, otherwise emails.
    pub author_labels: Vec<String>,
    pub year: i32,
}

/// Counts of lossy normalization steps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizeReport {
    pub dropped_no_authors: usize,
    pub duplicate_labels: usize,
    pub empty_labels: usize,
    pub rewritten_labels: usize,
}

/// Canonical form of one author label: trimmed, emails lowercased, inner
/// whitespace replaced by `_`. `None` for an empty label.
pub fn canonical_label(label: &str) -> Option<String> {
    let label = label.trim();
    if label.is_empty() {
        return None;
    }
    let label = if !label.starts_with('~') && label.contains('@') {
        label.to_lowercase()
    } else {
        label.to_owned()
    };
    Some(label.split_whitespace().collect::<Vec<_>>().join("_"))
}

/// Sorts by submission ordinal (stable), canonicalizes labels, collapses
/// duplicate authors within a paper and drops papers left with no authors.
pub fn normalize(raws: &[RawSubmission]) -> (Vec<PaperRecord>, NormalizeReport) {
    let mut report = NormalizeReport::default();
    let mut order: Vec<&RawSubmission> = raws.iter().collect();
    order.sort_by_key(|r| r.submission_ordinal);

    let mut records = Vec::with_capacity(order.len());
    for raw in order {
        let mut authors: Vec<String> = Vec::with_capacity(raw.author_labels.len());
        for label in &raw.author_labels {
            let Some(canon) = canonical_label(label) else {
                report.empty_labels += 1;
                continue;
            };
            if canon != label.as_str() {
                report.rewritten_labels += 1;
            }
            if authors.contains(&canon) {
                report.duplicate_labels += 1;
            } else {
                authors.push(canon);
            }
        }
        if authors.is_empty() {
            report.dropped_no_authors += 1;
            continue;
        }
        let external_id = raw.external_id.split_whitespace().collect::<Vec<_>>().join("_");
        records.push(PaperRecord::new(external_id, authors));
    }
    (records, report)
}

/// Inverse view of [`normalize`] output: records as raws with ordinals `1..`.
pub fn records_to_raws(records: &[PaperRecord], year: i32) -> Vec<RawSubmission> {
    records
        .iter()
        .enumerate()
        .map(|(j, r)| RawSubmission {
            external_id: r.external_id.clone(),
            submission_ordinal: j as u64 + 1,
            author_labels: r.authors.clone(),
            year,
        })
        .collect()
}

pub fn build_from_records(records: &[PaperRecord]) -> Result<AuthorshipInstance, ModelError> {
    let lists: Vec<&[String]> = records.iter().map(|r| r.authors.as_slice()).collect();
    build_instance(&lists)
}
