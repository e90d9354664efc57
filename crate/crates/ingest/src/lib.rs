//! Getting submission data in and out: the canonical instance file,
//! normalization of raw submission records, and an OpenReview client.

pub mod error;
pub mod format;
pub mod normalize;
pub mod openreview;

pub use error::IngestError;
pub use format::{read_instance, write_instance, PaperRecord};
pub use normalize::{build_from_records, normalize, RawSubmission};
pub use openreview::{fetch_year, invitation, ApiVersion, FetchConfig};
