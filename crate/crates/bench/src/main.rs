use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use capopt_bench::gap::oracle_gap;
use capopt_bench::generator::{alpha_for_mean, generate, GeneratorConfig, DEFAULT_MAX_AUTHORS_PER_PAPER};
use capopt_bench::hist::{frequency_table, render_svg, write_table_csv};
use capopt_bench::reference::{compare, REFERENCE_LIMITS};
use capopt_bench::report::{
    format_improvement, parse_limits, parse_policies, run_policy, sweep, write_decisions, write_sweep_csv,
    SweepMetadata,
};
use capopt_bench::{load, BenchError};
use capopt_core::oracle::{OracleLimits, DEFAULT_MAX_PAPERS, DEFAULT_NODE_BUDGET};
use capopt_core::{compute_stats, AuthorshipInstance, InstanceStats, PolicyKind};
use capopt_ingest::openreview::{fetch_year, ApiVersion, FetchConfig};
use capopt_ingest::{build_from_records, normalize, write_instance, PaperRecord};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "capopt", version, about = "Desk-rejection policies under per-author submission limits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Download one ICLR year from OpenReview into an instance file.
    Ingest {
        #[arg(long)]
        year: i32,
        /// API version; defaults to the one serving the year.
        #[arg(long)]
        api: Option<ApiVersion>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1000)]
        page_size: usize,
    },
    /// Print instance statistics.
    Stats { file: PathBuf },
    /// Run one policy at one limit.
    Run {
        file: PathBuf,
        #[arg(long)]
        policy: PolicyKind,
        #[arg(long)]
        limit: u32,
        /// Write `externalId<TAB>0|1` per paper.
        #[arg(long)]
        decisions: Option<PathBuf>,
    },
    /// Run policies over a range of limits and write a CSV table.
    Sweep {
        file: PathBuf,
        /// `A..B`, `A..B,STEP` or `A,B,C`.
        #[arg(long)]
        limits: String,
        #[arg(long, default_value = "all,forward,backward,opt")]
        policies: String,
        /// CSV output; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        dataset: Option<String>,
        /// Leave runtime columns out of the CSV so it is reproducible byte for
        /// byte; runtimes still go to the metadata file.
        #[arg(long)]
        no_runtimes: bool,
    },
    /// Authors per submission count, as CSV, with an optional SVG chart.
    Hist {
        file: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Generate a synthetic instance.
    Gen {
        #[arg(long)]
        authors: usize,
        #[arg(long)]
        papers: usize,
        /// Power-law exponent of papers per author.
        #[arg(long, conflicts_with = "target_nnz")]
        alpha: Option<f64>,
        /// Pick the exponent so the expected number of authorships is this.
        #[arg(long)]
        target_nnz: Option<usize>,
        #[arg(long)]
        mean_authors_per_paper: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_MAX_AUTHORS_PER_PAPER)]
        max_authors_per_paper: usize,
        #[arg(long)]
        max_papers_per_author: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the LP bound, the exact optimum and OptReject.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        limit: u32,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_PAPERS)]
        max_papers: usize,
    },
    /// Sweep an ICLR year at the published limits and compare with the
    /// published counts.
    Reproduce {
        #[arg(long)]
        year: i32,
        /// Use a local instance file instead of downloading.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, BenchError> {
    Ok(BufWriter::new(File::create(path)?))
}

fn print_stats(s: &InstanceStats) {
    println!("authors\t{}", s.n);
    println!("papers\t{}", s.m);
    println!("nnz\t{}", s.nnz);
    println!("max_papers_per_author\t{}", s.k1);
    println!("max_authors_per_paper\t{}", s.k2);
    println!("mean_papers_per_author\t{:.2}", s.mean_papers_per_author);
}

fn dataset_name(path: &Path) -> String {
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = name.strip_suffix(".gz").unwrap_or(&name);
    name.rsplit_once('.').map_or(name, |(stem, _)| stem).to_owned()
}

fn fetch(year: i32, api: Option<ApiVersion>, page_size: usize) -> Result<(Vec<PaperRecord>, AuthorshipInstance), BenchError> {
    let api = api
        .or_else(|| ApiVersion::for_year(year))
        .ok_or_else(|| BenchError::Config(format!("no OpenReview source for ICLR {year}")))?;
    let config = FetchConfig {
        page_size,
        ..FetchConfig::default()
    };
    let fetched = fetch_year(year, api, &config)?;
    let (records, report) = normalize(&fetched.submissions);
    if fetched.dropped_no_authors + report.dropped_no_authors > 0 {
        eprintln!(
            "dropped {} submissions without authors",
            fetched.dropped_no_authors + report.dropped_no_authors
        );
    }
    let inst = build_from_records(&records)?;
    Ok((records, inst))
}

fn run(command: Command) -> Result<(), BenchError> {
    match command {
        Command::Ingest {
            year,
            api,
            out,
            page_size,
        } => {
            let (records, inst) = fetch(year, api, page_size)?;
            write_instance(&out, &records)?;
            print_stats(&compute_stats(&inst));
        }
        Command::Stats { file } => {
            let (_, inst) = load(&file)?;
            print_stats(&compute_stats(&inst));
        }
        Command::Run {
            file,
            policy,
            limit,
            decisions,
        } => {
            let (records, inst) = load(&file)?;
            let r = run_policy(&inst, policy, limit)?;
            if let Some(path) = decisions {
                write_decisions(create(&path)?, &records, &r.decision)?;
            }
            println!("policy\t{}", policy);
            println!("limit\t{limit}");
            println!("papers\t{}", inst.m());
            println!("accepted\t{}", inst.m() - r.rejections);
            println!("rejected\t{}", r.rejections);
            println!("runtime_s\t{:.2}", r.seconds);
        }
        Command::Sweep {
            file,
            limits,
            policies,
            csv,
            dataset,
            no_runtimes,
        } => {
            let limits = parse_limits(&limits)?;
            let policies = parse_policies(&policies)?;
            let (_, inst) = load(&file)?;
            let dataset = dataset.unwrap_or_else(|| dataset_name(&file));
            let rows = sweep(&dataset, &inst, &limits, &policies)?;
            match csv {
                Some(path) => {
                    write_sweep_csv(create(&path)?, &rows, &policies, !no_runtimes)?;
                    let mut meta_path = path.into_os_string();
                    meta_path.push(".meta.json");
                    let meta = SweepMetadata::new(&dataset, &rows);
                    serde_json::to_writer_pretty(create(Path::new(&meta_path))?, &meta)?;
                }
                None => write_sweep_csv(io::stdout().lock(), &rows, &policies, !no_runtimes)?,
            }
        }
        Command::Hist { file, svg, csv } => {
            let (_, inst) = load(&file)?;
            let rows = frequency_table(&inst);
            match csv {
                Some(path) => write_table_csv(create(&path)?, &rows)?,
                None => write_table_csv(io::stdout().lock(), &rows)?,
            }
            if let Some(path) = svg {
                let mut w = create(&path)?;
                w.write_all(render_svg(&rows, &dataset_name(&file)).as_bytes())?;
                w.flush()?;
            }
        }
        Command::Gen {
            authors,
            papers,
            alpha,
            target_nnz,
            mean_authors_per_paper,
            max_authors_per_paper,
            max_papers_per_author,
            seed,
            out,
        } => {
            let cap = max_papers_per_author.unwrap_or(papers).min(papers).max(1);
            let alpha = match (alpha, target_nnz) {
                (Some(a), _) => a,
                (None, Some(t)) if authors > 0 => alpha_for_mean(t as f64 / authors as f64, cap)?,
                (None, Some(_)) => return Err(BenchError::Config("number of authors must be positive".into())),
                (None, None) => 2.0,
            };
            let config = GeneratorConfig {
                mean_authors_per_paper,
                max_authors_per_paper,
                max_papers_per_author,
                ..GeneratorConfig::new(authors, papers, alpha, seed)
            };
            let records = generate(&config)?;
            write_instance(&out, &records)?;
            println!("alpha\t{alpha:.6}");
            print_stats(&compute_stats(&build_from_records(&records)?));
        }
        Command::Oracle {
            file,
            limit,
            node_budget,
            max_papers,
        } => {
            let (_, inst) = load(&file)?;
            let limits = OracleLimits { node_budget, max_papers };
            println!("{}", oracle_gap(&inst, limit, &limits)?);
        }
        Command::Reproduce { year, instance } => {
            let (_, inst) = match instance {
                Some(path) => load(&path)?,
                None => fetch(year, None, 1000)?,
            };
            let stats = compute_stats(&inst);
            let policies = [PolicyKind::AllReject, PolicyKind::ForwardReject, PolicyKind::OptReject];
            let rows = sweep(&format!("ICLR {year}"), &inst, &REFERENCE_LIMITS, &policies)?;
            write_sweep_csv(io::stdout().lock(), &rows, &policies, false)?;
            let Some(cmp) = compare(year, &stats, &rows) else {
                println!("no published counts for {year}");
                return Ok(());
            };
            println!("{}", cmp.stats_note);
            if !cmp.stats_match {
                println!("snapshot differs from the published statistics; differences below are informational");
            }
            for c in cmp.mismatches() {
                println!(
                    "MISMATCH b={} {}: expected {}, got {}",
                    c.b, c.policy, c.expected, c.actual
                );
            }
            println!(
                "{}",
                if cmp.passed() { "reproduction: ok" } else { "reproduction: counts differ" }
            );
            for row in &rows {
                log::info!("b={} improvement {}", row.b, format_improvement(row.relative_improvement_pct));
            }
        }
    }
    Ok(())
}
