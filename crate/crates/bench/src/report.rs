//! Timed policy runs, limit sweeps and their CSV form.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use capopt_core::policy::run_baseline;
use capopt_core::{check_feasible, opt_reject, AuthorshipInstance, DecisionVector, PolicyKind};
use capopt_ingest::PaperRecord;
use serde::Serialize;

use crate::error::BenchError;

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyRun {
    pub policy: PolicyKind,
    pub b: u32,
    pub decision: DecisionVector,
    pub rejections: usize,
    /// Wall-clock seconds spent inside the policy call.
    pub seconds: f64,
}

/// Runs one policy and re-checks the limit before returning.
pub fn run_policy(inst: &AuthorshipInstance, policy: PolicyKind, b: u32) -> Result<PolicyRun, BenchError> {
    let start = Instant::now();
    let decision = match run_baseline(policy, inst, b) {
        Some(d) => d,
        None => opt_reject(inst, b)?,
    };
    let seconds = start.elapsed().as_secs_f64();
    if !check_feasible(inst, b, &decision)? {
        return Err(BenchError::InfeasibleOutput { policy, b });
    }
    Ok(PolicyRun {
        policy,
        b,
        rejections: decision.rejected_count(),
        decision,
        seconds,
    })
}

/// Percent fewer rejections than the strongest baseline. `None` when the
/// strongest baseline rejects nothing.
pub fn relative_improvement(baselines: &[usize], ours: usize) -> Option<f64> {
    let best = *baselines.iter().min()?;
    if best == 0 {
        return None;
    }
    Some(100.0 * (best as f64 - ours as f64) / best as f64)
}

pub fn format_improvement(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.2}"),
        None => "N/A".to_owned(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub dataset: String,
    pub b: u32,
    pub rejections: BTreeMap<PolicyKind, usize>,
    pub relative_improvement_pct: Option<f64>,
    pub runtime: BTreeMap<PolicyKind, f64>,
}

/// Parses `A..B`, `A..B,STEP` (inclusive) or a comma-separated list.
pub fn parse_limits(text: &str) -> Result<Vec<u32>, BenchError> {
    let bad = || BenchError::Config(format!("cannot read limits `{text}`; expected A..B[,STEP] or a list"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let limits = match text.split_once("..") {
        Some((a, rest)) => {
            let (b, step) = match rest.split_once(',') {
                Some((b, s)) => (num(b)?, num(s)?),
                None => (num(rest)?, 1),
            };
            let a = num(a)?;
            if step == 0 || a > b {
                return Err(bad());
            }
            (a..=b).step_by(step as usize).collect()
        }
        None => text.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
    };
    if limits.is_empty() {
        return Err(bad());
    }
    Ok(limits)
}

pub fn parse_policies(text: &str) -> Result<Vec<PolicyKind>, BenchError> {
    let mut out: Vec<PolicyKind> = Vec::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let p: PolicyKind = name.parse().map_err(|e| BenchError::Config(format!("{e}")))?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    if out.is_empty() {
        return Err(BenchError::Config("no policies given".into()));
    }
    out.sort();
    Ok(out)
}

/// One row per limit, in the order given.
pub fn sweep(
    dataset: &str,
    inst: &AuthorshipInstance,
    limits: &[u32],
    policies: &[PolicyKind],
) -> Result<Vec<SweepRow>, BenchError> {
    if limits.is_empty() {
        return Err(BenchError::Config("empty list of limits".into()));
    }
    limits
        .iter()
        .map(|&b| {
            let mut rejections = BTreeMap::new();
            let mut runtime = BTreeMap::new();
            for &p in policies {
                let run = run_policy(inst, p, b)?;
                rejections.insert(p, run.rejections);
                runtime.insert(p, run.seconds);
            }
            let baselines: Vec<usize> = rejections
                .iter()
                .filter(|(p, _)| p.is_baseline())
                .map(|(_, &r)| r)
                .collect();
            let relative_improvement_pct = rejections
                .get(&PolicyKind::OptReject)
                .and_then(|&ours| relative_improvement(&baselines, ours));
            Ok(SweepRow {
                dataset: dataset.to_owned(),
                b,
                rejections,
                relative_improvement_pct,
                runtime,
            })
        })
        .collect()
}

/// Writes the sweep table. Without runtimes the output depends only on the
/// inputs.
pub fn write_sweep_csv<W: Write>(
    out: W,
    rows: &[SweepRow],
    policies: &[PolicyKind],
    with_runtimes: bool,
) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["dataset".to_owned(), "b".to_owned()];
    header.extend(policies.iter().map(|p| p.name().to_owned()));
    header.push("relative_improvement_pct".to_owned());
    if with_runtimes {
        header.extend(policies.iter().map(|p| format!("{}_runtime_s", p.name())));
    }
    w.write_record(&header)?;
    for row in rows {
        let mut rec = vec![row.dataset.clone(), row.b.to_string()];
        rec.extend(policies.iter().map(|p| row.rejections[p].to_string()));
        rec.push(format_improvement(row.relative_improvement_pct));
        if with_runtimes {
            rec.extend(policies.iter().map(|p| format!("{:.2}", row.runtime[p])));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct TimingEntry {
    b: u32,
    runtime_s: BTreeMap<&'static str, f64>,
}

#[derive(Debug, Serialize)]
pub struct SweepMetadata {
    pub generated_unix_s: u64,
    pub dataset: String,
    timings: Vec<TimingEntry>,
}

impl SweepMetadata {
    pub fn new(dataset: &str, rows: &[SweepRow]) -> Self {
        let generated_unix_s = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        SweepMetadata {
            generated_unix_s,
            dataset: dataset.to_owned(),
            timings: rows
                .iter()
                .map(|r| TimingEntry {
                    b: r.b,
                    runtime_s: r.runtime.iter().map(|(p, &s)| (p.name(), s)).collect(),
                })
                .collect(),
        }
    }
}

/// Decision file: `externalId<TAB>1` for accepted papers, `0` for rejected.
pub fn write_decisions<W: Write>(mut out: W, records: &[PaperRecord], x: &DecisionVector) -> std::io::Result<()> {
    for (rec, &accepted) in records.iter().zip(x.as_slice()) {
        writeln!(out, "{}\t{}", rec.external_id, u8::from(accepted))?;
    }
    out.flush()
}
