use capopt_core::{ModelError, OracleError, PolicyKind, SolverError};
use capopt_ingest::IngestError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Ingest(#[from] IngestError),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Solver(#[from] SolverError),

    #[error(transparent)]
    Oracle(#[from] OracleError),

    /// A policy produced a decision that breaks the limit. Always a bug.
    #[error("{policy} produced an infeasible decision at b = {b}")]
    InfeasibleOutput { policy: PolicyKind, b: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl BenchError {
    /// Process exit code: 2 parse/config, 3 infeasible output, 4 network, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) | BenchError::Model(_) => 2,
            BenchError::Ingest(e) if e.is_network() => 4,
            BenchError::Ingest(IngestError::Io(_)) => 1,
            BenchError::Ingest(_) => 2,
            BenchError::Oracle(OracleError::TooLarge { .. }) => 2,
            BenchError::InfeasibleOutput { .. } => 3,
            _ => 1,
        }
    }
}
