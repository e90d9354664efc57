//! Paged retrieval of ICLR submissions from the public OpenReview API.
//!
//! Requests are `GET {base}/notes?invitation=..&offset=..&limit=..`, spaced
//! at least [`MIN_REQUEST_INTERVAL`] apart, with exponential backoff on
//! HTTP 429. Set `CAPOPT_OPENREVIEW_URL` to point at a different host.

use std::fmt;
use std::str::FromStr;
use std::thread::sleep;
use std::time::{Duration, Instant};

use log::{debug, warn};
use serde_json::Value;

use crate::error::IngestError;
use crate::normalize::RawSubmission;

pub const BASE_URL_ENV: &str = "CAPOPT_OPENREVIEW_URL";
pub const V1_BASE_URL: &str = "https://api.openreview.net";
pub const V2_BASE_URL: &str = "https://api2.openreview.net";
pub const MIN_REQUEST_INTERVAL: Duration = Duration::from_millis(200);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApiVersion {
    V1,
    V2,
}

impl ApiVersion {
    pub fn name(self) -> &'static str {
        match self {
            ApiVersion::V1 => "v1",
            ApiVersion::V2 => "v2",
        }
    }

    /// The API version that serves `year`, if any.
    pub fn for_year(year: i32) -> Option<ApiVersion> {
        match year {
            2013 | 2014 | 2017..=2023 => Some(ApiVersion::V1),
            2024 | 2025 => Some(ApiVersion::V2),
            _ => None,
        }
    }

    fn default_base_url(self) -> &'static str {
        match self {
            ApiVersion::V1 => V1_BASE_URL,
            ApiVersion::V2 => V2_BASE_URL,
        }
    }
}

impl fmt::Display for ApiVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ApiVersion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "v1" | "1" => Ok(ApiVersion::V1),
            "v2" | "2" => Ok(ApiVersion::V2),
            other => Err(format!("unknown API version `{other}` (expected v1 or v2)")),
        }
    }
}

/// Submission invitation for an ICLR year on the given API version.
pub fn invitation(year: i32, api: ApiVersion) -> Result<String, IngestError> {
    let unsupported = IngestError::UnsupportedYear {
        year,
        api: api.name(),
    };
    match (year, api) {
        (2013 | 2014, ApiVersion::V1) => Ok(format!("ICLR.cc/{year}/conference/-/submission")),
        (2017..=2023, ApiVersion::V1) => Ok(format!("ICLR.cc/{year}/Conference/-/Blind_Submission")),
        (2024 | 2025, ApiVersion::V2) => Ok(format!("ICLR.cc/{year}/Conference/-/Submission")),
        _ => Err(unsupported),
    }
}

#[derive(Debug, Clone)]
pub struct FetchConfig {
    /// Overrides both the environment variable and the per-version default.
    pub base_url: Option<String>,
    pub page_size: usize,
    pub max_retries: u32,
    pub initial_backoff: Duration,
    pub timeout: Duration,
}

impl Default for FetchConfig {
    fn default() -> Self {
        FetchConfig {
            base_url: None,
            page_size: 1000,
            max_retries: 5,
            initial_backoff: Duration::from_secs(1),
            timeout: Duration::from_secs(60),
        }
    }
}

impl FetchConfig {
    fn base_url(&self, api: ApiVersion) -> String {
        let base = self
            .base_url
            .clone()
            .or_else(|| std::env::var(BASE_URL_ENV).ok().filter(|s| !s.is_empty()))
            .unwrap_or_else(|| api.default_base_url().to_owned());
        base.trim_end_matches('/').to_owned()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FetchOutcome {
    pub submissions: Vec<RawSubmission>,
    /// Notes skipped because they list no authors.
    pub dropped_no_authors: usize,
    pub pages: usize,
}

/// Reads a note field that is either a bare value (v1) or `{"value": ..}` (v2).
fn field<'a>(content: &'a Value, key: &str) -> Option<&'a Value> {
    let v = content.get(key)?;
    match v.get("value") {
        Some(inner) if v.is_object() => Some(inner),
        _ => Some(v),
    }
}

fn strings(v: Option<&Value>) -> Vec<String> {
    v.and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_str).map(str::to_owned).collect())
        .unwrap_or_default()
}

struct Note {
    id: String,
    number: Option<u64>,
    authors: Vec<String>,
}

fn parse_note(note: &Value) -> Result<Note, IngestError> {
    let id = note
        .get("id")
        .and_then(Value::as_str)
        .ok_or_else(|| IngestError::Response("note without an id".into()))?
        .to_owned();
    let number = note.get("number").and_then(Value::as_u64);
    let content = note.get("content").unwrap_or(&Value::Null);
    let authors = strings(field(content, "authorids"))
        .into_iter()
        .filter(|s| !s.trim().is_empty())
        .collect();
    Ok(Note { id, number, authors })
}

/// Fetches every submission of an ICLR year. Notes are ordered by their
/// venue submission number when present (fetch order otherwise) and given
/// ordinals `1..`.
pub fn fetch_year(year: i32, api: ApiVersion, config: &FetchConfig) -> Result<FetchOutcome, IngestError> {
    let invitation = invitation(year, api)?;
    let base = config.base_url(api);
    let client = reqwest::blocking::Client::builder()
        .timeout(config.timeout)
        .user_agent(concat!("capopt/", env!("CARGO_PKG_VERSION")))
        .build()
        .map_err(|e| IngestError::Network(e.to_string()))?;

    let page_size = config.page_size.max(1);
    let mut notes: Vec<Note> = Vec::new();
    let mut offset = 0usize;
    let mut pages = 0usize;
    let mut last_first_id: Option<String> = None;
    let mut last_request: Option<Instant> = None;

    loop {
        let url = format!("{base}/notes");
        let query = [
            ("invitation", invitation.clone()),
            ("offset", offset.to_string()),
            ("limit", page_size.to_string()),
        ];
        let body = get_with_backoff(&client, &url, &query, config, &mut last_request)?;
        pages += 1;

        let page = body
            .get("notes")
            .and_then(Value::as_array)
            .ok_or_else(|| IngestError::Response("response has no `notes` array".into()))?;
        let total = body.get("count").and_then(Value::as_u64).map(|c| c as usize);
        debug!("page {pages}: offset {offset}, {} notes, count {total:?}", page.len());
        if page.is_empty() {
            break;
        }
        let page: Vec<Note> = page.iter().map(parse_note).collect::<Result<_, _>>()?;
        if last_first_id.as_deref() == Some(page[0].id.as_str()) {
            return Err(IngestError::PaginationStall { offset });
        }
        last_first_id = Some(page[0].id.clone());
        let got = page.len();
        notes.extend(page);
        offset += got;
        if got < page_size || total.is_some_and(|t| offset >= t) {
            break;
        }
    }

    // Stable sort: notes without a number keep their fetch order, after numbered ones.
    notes.sort_by_key(|n| n.number.unwrap_or(u64::MAX));

    let mut dropped = 0;
    let mut submissions = Vec::with_capacity(notes.len());
    for note in notes {
        if note.authors.is_empty() {
            dropped += 1;
            continue;
        }
        submissions.push(RawSubmission {
            external_id: note.id,
            submission_ordinal: submissions.len() as u64 + 1,
            author_labels: note.authors,
            year,
        });
    }
    if dropped > 0 {
        warn!("ICLR {year}: dropped {dropped} submissions without author ids");
    }
    Ok(FetchOutcome {
        submissions,
        dropped_no_authors: dropped,
        pages,
    })
}

fn get_with_backoff(
    client: &reqwest::blocking::Client,
    url: &str,
    query: &[(&str, String)],
    config: &FetchConfig,
    last_request: &mut Option<Instant>,
) -> Result<Value, IngestError> {
    let mut backoff = config.initial_backoff;
    let mut attempt = 0;
    loop {
        if let Some(t) = *last_request {
            let elapsed = t.elapsed();
            if elapsed < MIN_REQUEST_INTERVAL {
                sleep(MIN_REQUEST_INTERVAL - elapsed);
            }
        }
        *last_request = Some(Instant::now());
        let resp = client
            .get(url)
            .query(query)
            .send()
            .map_err(|e| IngestError::Network(e.to_string()))?;
        let status = resp.status();
        if status.as_u16() == 429 && attempt < config.max_retries {
            attempt += 1;
            warn!("rate limited by {url}; retrying in {backoff:?}");
            sleep(backoff);
            backoff *= 2;
            continue;
        }
        if !status.is_success() {
            return Err(IngestError::Http {
                status: status.as_u16(),
                url: url.to_owned(),
            });
        }
        return resp.json().map_err(|e| IngestError::Response(e.to_string()));
    }
}
