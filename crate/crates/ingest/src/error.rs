use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("cannot write instance: {0}")]
    InvalidRecord(String),

    #[error("ICLR {year} is not available through OpenReview API {api}")]
    UnsupportedYear { year: i32, api: &'static str },

    #[error("HTTP status {status} from {url}")]
    Http { status: u16, url: String },

    #[error("pagination stalled at offset {offset}: the service returned the same page twice")]
    PaginationStall { offset: usize },

    #[error("network error: {0}")]
    Network(String),

    #[error("malformed response: {0}")]
    Response(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl IngestError {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        IngestError::Parse {
            line,
            reason: reason.into(),
        }
    }

    /// True for failures talking to the remote service.
    pub fn is_network(&self) -> bool {
        matches!(
            self,
            IngestError::Http { .. }
                | IngestError::PaginationStall { .. }
                | IngestError::Network(_)
                | IngestError::Response(_)
        )
    }
}
