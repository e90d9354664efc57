//! Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Criterion 7 needs network access; set `CAPOPT_REPRO_YEAR` (and optionally
//! `CAPOPT_REPRO_INSTANCE` to reuse a downloaded snapshot) to run it.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use capopt_bench::reference::{compare, REFERENCE_LIMITS};
use capopt_bench::report::{format_improvement, relative_improvement, sweep};
use capopt_core::fixtures::{triangle, two_authors_overlap};
use capopt_core::lp::SolveOptions;
use capopt_core::opt_reject::opt_reject_detailed;
use capopt_core::oracle::{brute_force_optimum, exact_optimum, OracleLimits};
use capopt_core::{
    all_reject, backward_reject, build_instance, compute_stats, forward_reject, opt_reject, AuthorshipInstance,
    DecisionVector, PaperId, PolicyKind,
};
use capopt_ingest::openreview::{fetch_year, ApiVersion, FetchConfig};
use capopt_ingest::{build_from_records, normalize, read_instance};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SUITE_SIZE: u64 = 500;
const SUITE_SECONDS: f64 = 120.0;
const LP_TOL: f64 = 1e-6;
const NON_INFERIORITY: f64 = 0.98;
const OPT_SECONDS: f64 = 60.0;
const BASELINE_SECONDS: f64 = 1.0;
const NNZ_TOLERANCE: f64 = 0.10;
const ICLR_2025: (usize, usize, usize) = (38_495, 11_672, 61_992);

struct Verdict {
    id: u32,
    name: &'static str,
    /// `None` when skipped.
    pass: Option<bool>,
    detail: String,
}

fn verdict(id: u32, name: &'static str, pass: bool, detail: String) -> Verdict {
    Verdict {
        id,
        name,
        pass: Some(pass),
        detail,
    }
}

struct Case {
    inst: AuthorshipInstance,
    b: u32,
}

fn suite() -> Vec<Case> {
    (0..SUITE_SIZE)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0000 + seed);
            let n = rng.gen_range(1..=10usize);
            let m = rng.gen_range(1..=16usize);
            let lists: Vec<Vec<String>> = (0..m)
                .map(|_| {
                    let k = rng.gen_range(1..=n.min(4));
                    sample(&mut rng, n, k).into_iter().map(|i| format!("u{i}")).collect()
                })
                .collect();
            Case {
                inst: build_instance(&lists).unwrap(),
                b: rng.gen_range(1..=4),
            }
        })
        .collect()
}

/// Limit check with integer loads, independent of the library's checker.
fn within_limit(inst: &AuthorshipInstance, b: u32, x: &DecisionVector) -> bool {
    inst.authors().all(|a| {
        let load: u32 = inst.papers_of(a).iter().map(|&p| u32::from(x.is_accepted(p))).sum();
        load <= b
    })
}

fn oracle_suite(cases: &[Case]) -> Vec<Verdict> {
    let limits = OracleLimits::default();
    let start = Instant::now();
    let mut disagree = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        let exact = exact_optimum(&c.inst, c.b, &limits).expect("suite instances fit the oracle");
        let brute = brute_force_optimum(&c.inst, c.b).unwrap();
        if exact.accepted != brute || !exact.certified {
            disagree.push(i);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let c1 = verdict(
        1,
        "oracle equivalence",
        disagree.is_empty() && elapsed < SUITE_SECONDS,
        format!(
            "{}/{} instances agree, {elapsed:.2} s (limit {SUITE_SECONDS} s){}",
            cases.len() - disagree.len(),
            cases.len(),
            if disagree.is_empty() { String::new() } else { format!("; disagree at {disagree:?}") }
        ),
    );

    let mut sandwich_broken = Vec::new();
    let mut violations = 0usize;
    let (mut ours_total, mut best_total) = (0usize, 0usize);
    let mut worse = Vec::new();
    let mut strictly_better = 0usize;
    for (i, c) in cases.iter().enumerate() {
        let (inst, b) = (&c.inst, c.b);
        let exact = exact_optimum(inst, b, &limits).unwrap().accepted;
        let ours = opt_reject_detailed(inst, b, &SolveOptions::default()).unwrap();
        let accepted = ours.decision.accepted_count();
        if !(accepted <= exact && exact as f64 <= ours.lp_objective + LP_TOL) {
            sandwich_broken.push(i);
        }
        let baselines = [all_reject(inst, b), forward_reject(inst, b), backward_reject(inst, b)];
        for x in baselines.iter().chain([&ours.decision]) {
            if !within_limit(inst, b, x) {
                violations += 1;
            }
        }
        let best = baselines.iter().map(DecisionVector::accepted_count).max().unwrap();
        ours_total += accepted;
        best_total += best;
        if accepted < best {
            worse.push((i, accepted, best));
        } else if accepted > best {
            strictly_better += 1;
        }
    }
    let c2 = verdict(
        2,
        "sandwich and feasibility",
        sandwich_broken.is_empty() && violations == 0,
        format!(
            "sandwich holds on {}/{}; {violations} feasibility violations over 4 policies (LP tolerance {LP_TOL})",
            cases.len() - sandwich_broken.len(),
            cases.len()
        ),
    );
    for (i, ours, best) in &worse {
        println!("  note: instance {i}: OptReject accepts {ours}, best baseline {best}");
    }
    let ratio = ours_total as f64 / best_total.max(1) as f64;
    let c3 = verdict(
        3,
        "non-inferiority",
        ours_total as f64 >= NON_INFERIORITY * best_total as f64,
        format!(
            "OptReject accepts {ours_total}, best baselines {best_total} (ratio {ratio:.4}, need >= {NON_INFERIORITY}); \
             strictly better on {strictly_better}, worse on {}",
            worse.len()
        ),
    );
    vec![c1, c2, c3]
}

fn divergence() -> Verdict {
    let inst = two_authors_overlap();
    let ids = |x: &DecisionVector| x.accepted().map(PaperId::ordinal).collect::<Vec<_>>();
    let fwd = ids(&forward_reject(&inst, 2));
    let bwd = ids(&backward_reject(&inst, 2));
    verdict(
        4,
        "forward/backward divergence",
        fwd == [1, 2, 4, 5] && bwd == [1, 2, 4],
        format!("forward accepts {fwd:?}, backward accepts {bwd:?}"),
    )
}

fn metric() -> Verdict {
    let a = format_improvement(relative_improvement(&[30, 26], 21));
    let b = format_improvement(relative_improvement(&[1807, 1577], 1379));
    verdict(
        5,
        "relative improvement metric",
        a == "19.23" && b == "12.56",
        format!("(30, 26, 21) -> {a}%, (1807, 1577, 1379) -> {b}%"),
    )
}

fn cli(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_capopt")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "capopt {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}\t")))
        .unwrap_or_default()
        .to_owned()
}

fn scale(path: &Path) -> (Verdict, AuthorshipInstance) {
    let (n, m, nnz) = ICLR_2025;
    let gen = cli(&[
        "gen",
        "--authors",
        &n.to_string(),
        "--papers",
        &m.to_string(),
        "--target-nnz",
        &nnz.to_string(),
        "--max-papers-per-author",
        "42",
        "--seed",
        "2025",
        "--out",
        path.to_str().unwrap(),
    ]);
    let inst = build_from_records(&read_instance(path).unwrap()).unwrap();
    let stats = compute_stats(&inst);
    let nnz_rel = (stats.nnz as f64 - nnz as f64).abs() / nnz as f64;
    let shape_ok = stats.n == n && stats.m == m && nnz_rel <= NNZ_TOLERANCE;

    let file = path.to_str().unwrap();
    let (mut opt_max, mut base_max) = (0.0f64, 0.0f64);
    let mut per_limit = Vec::new();
    for b in REFERENCE_LIMITS {
        let limit = b.to_string();
        let start = Instant::now();
        let out = cli(&["run", file, "--policy", "opt", "--limit", &limit]);
        let wall = start.elapsed().as_secs_f64();
        opt_max = opt_max.max(wall);
        per_limit.push(format!("b={b}: {wall:.2} s, {} rejected", field(&out, "rejected")));
        for policy in ["all", "forward", "backward"] {
            let out = cli(&["run", file, "--policy", policy, "--limit", &limit]);
            base_max = base_max.max(field(&out, "runtime_s").parse::<f64>().unwrap_or(f64::INFINITY));
        }
    }
    for line in &per_limit {
        println!("  opt {line}");
    }
    let v = verdict(
        6,
        "scale and runtime",
        shape_ok && opt_max < OPT_SECONDS && base_max < BASELINE_SECONDS,
        format!(
            "n={} m={} nnz={} ({:+.2}% vs {nnz}, alpha {}); slowest opt run {opt_max:.2} s wall (limit {OPT_SECONDS} s), \
             slowest baseline {base_max:.2} s (limit {BASELINE_SECONDS} s)",
            stats.n,
            stats.m,
            stats.nnz,
            100.0 * (stats.nnz as f64 - nnz as f64) / nnz as f64,
            field(&gen, "alpha"),
        ),
    );
    (v, inst)
}

fn reproduction() -> Verdict {
    let name = "published counts (network)";
    let Some(year) = std::env::var("CAPOPT_REPRO_YEAR").ok().and_then(|y| y.parse::<i32>().ok()) else {
        return Verdict {
            id: 7,
            name,
            pass: None,
            detail: "set CAPOPT_REPRO_YEAR to run".into(),
        };
    };
    let records = match std::env::var("CAPOPT_REPRO_INSTANCE") {
        Ok(path) => read_instance(Path::new(&path)).map_err(|e| e.to_string()),
        Err(_) => ApiVersion::for_year(year)
            .ok_or_else(|| format!("no source for {year}"))
            .and_then(|api| fetch_year(year, api, &FetchConfig::default()).map_err(|e| e.to_string()))
            .map(|f| normalize(&f.submissions).0),
    };
    let records = match records {
        Ok(r) => r,
        Err(e) => return verdict(7, name, false, format!("could not load ICLR {year}: {e}")),
    };
    let inst = build_from_records(&records).unwrap();
    let policies = [PolicyKind::AllReject, PolicyKind::ForwardReject, PolicyKind::OptReject];
    let rows = sweep(&format!("ICLR {year}"), &inst, &REFERENCE_LIMITS, &policies).unwrap();
    let Some(cmp) = compare(year, &compute_stats(&inst), &rows) else {
        return verdict(7, name, false, format!("no published counts for {year}"));
    };
    for c in cmp.mismatches() {
        println!("  mismatch: b={} {} expected {} got {}", c.b, c.policy, c.expected, c.actual);
    }
    let flag = if cmp.stats_match { "" } else { "; snapshot statistics differ, mismatches flagged only" };
    verdict(
        7,
        name,
        cmp.passed(),
        format!("{}; {} of {} counts differ{flag}", cmp.stats_note, cmp.mismatches().count(), cmp.checks.len()),
    )
}

fn trivial_limit(cases: &[Case], big: &AuthorshipInstance) -> Verdict {
    let mut fixtures: Vec<&AuthorshipInstance> = cases.iter().map(|c| &c.inst).collect();
    let (t1, tri) = (two_authors_overlap(), triangle());
    fixtures.extend([&t1, &tri, big]);
    let mut bad = 0usize;
    let mut checked = 0usize;
    for inst in fixtures {
        let k1 = compute_stats(inst).k1 as u32;
        for b in [k1, k1 + 1] {
            let decisions = [
                all_reject(inst, b),
                forward_reject(inst, b),
                backward_reject(inst, b),
                opt_reject(inst, b).unwrap(),
            ];
            checked += decisions.len();
            bad += decisions.iter().filter(|x| x.rejected_count() != 0).count();
        }
    }
    verdict(
        8,
        "trivial limit",
        bad == 0,
        format!("{checked} policy runs at b >= max papers per author, {bad} with rejections"),
    )
}

fn main() {
    // Accept and ignore libtest flags such as `--nocapture` or filters.
    let _ = std::env::args().skip(1).count();
    let dir = tempfile::tempdir().unwrap();
    let big_path: PathBuf = dir.path().join("iclr2025-scale.txt");

    let cases = suite();
    let mut verdicts = oracle_suite(&cases);
    verdicts.push(divergence());
    verdicts.push(metric());
    let (v6, big) = scale(&big_path);
    verdicts.push(v6);
    verdicts.push(reproduction());
    verdicts.push(trivial_limit(&cases, &big));

    let mut failed = 0;
    for v in &verdicts {
        let status = match v.pass {
            Some(true) => "PASS",
            Some(false) => {
                failed += 1;
                "FAIL"
            }
            None => "SKIP",
        };
        println!("criterion {} ({}): {status}: {}", v.id, v.name, v.detail);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
