//! Benchmark harness for the desk-rejection policies: timed runs, limit
//! sweeps, oracle gap reports, synthetic instances and histograms.

pub mod error;
pub mod gap;
pub mod generator;
pub mod hist;
pub mod reference;
pub mod report;

use std::path::Path;

use capopt_core::AuthorshipInstance;
use capopt_ingest::{build_from_records, read_instance, PaperRecord};

pub use error::BenchError;
pub use generator::{generate, GeneratorConfig};
pub use report::{relative_improvement, run_policy, sweep, SweepRow};

/// Reads an instance file and keeps the records for their external ids.
pub fn load(path: &Path) -> Result<(Vec<PaperRecord>, AuthorshipInstance), BenchError> {
    let records = read_instance(path)?;
    let inst = build_from_records(&records)?;
    Ok((records, inst))
}
