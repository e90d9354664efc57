//! Canonical on-disk instance format.
//!
//! ```text
//! capopt-instance 1 <m>
//! <external id>\t<label> <label> ...
//! ```
//!
//! One line per paper in submission order, UTF-8, `\n` line endings and a
//! trailing newline. External ids may not contain tabs or newlines; labels
//! may not contain whitespace. Files ending in `.gz` are gzip-compressed.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;

use crate::error::IngestError;

pub const MAGIC: &str = "capopt-instance";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub external_id: String,
    pub authors: Vec<String>,
}

impl PaperRecord {
    pub fn new(external_id: impl Into<String>, authors: Vec<String>) -> Self {
        PaperRecord {
            external_id: external_id.into(),
            authors,
        }
    }
}

/// Author lists only, in record order, ready for `build_instance`.
pub fn author_lists(records: &[PaperRecord]) -> Vec<Vec<String>> {
    records.iter().map(|r| r.authors.clone()).collect()
}

/// Records with sequential ids `p1, p2, ...`.
pub fn records_from_lists(lists: &[Vec<String>]) -> Vec<PaperRecord> {
    lists
        .iter()
        .enumerate()
        .map(|(j, l)| PaperRecord::new(format!("p{}", j + 1), l.clone()))
        .collect()
}

pub fn to_canonical_string(records: &[PaperRecord]) -> Result<String, IngestError> {
    if records.is_empty() {
        return Err(IngestError::InvalidRecord("an instance needs at least one paper".into()));
    }
    let mut out = format!("{MAGIC} {FORMAT_VERSION} {}\n", records.len());
    for (j, r) in records.iter().enumerate() {
        if r.external_id.is_empty() || r.external_id.contains(['\t', '\n', '\r']) {
            return Err(IngestError::InvalidRecord(format!(
                "paper {}: external id {:?} is empty or contains a tab or newline",
                j + 1,
                r.external_id
            )));
        }
        if r.authors.is_empty() {
            return Err(IngestError::InvalidRecord(format!("paper {} has no authors", j + 1)));
        }
        if let Some(bad) = r
            .authors
            .iter()
            .find(|a| a.is_empty() || a.chars().any(char::is_whitespace))
        {
            return Err(IngestError::InvalidRecord(format!(
                "paper {}: author label {bad:?} is empty or contains whitespace",
                j + 1
            )));
        }
        out.push_str(&r.external_id);
        out.push('\t');
        out.push_str(&r.authors.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_instance(text: &str) -> Result<Vec<PaperRecord>, IngestError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| IngestError::parse(1, "empty file"))?;
    let fields: Vec<&str> = header.split(' ').collect();
    let m: usize = match fields.as_slice() {
        [magic, version, m] if *magic == MAGIC => {
            if version.parse() != Ok(FORMAT_VERSION) {
                return Err(IngestError::parse(1, format!("unsupported format version {version:?}")));
            }
            m.parse()
                .map_err(|_| IngestError::parse(1, format!("bad paper count {m:?}")))?
        }
        _ => {
            return Err(IngestError::parse(
                1,
                format!("expected header `{MAGIC} {FORMAT_VERSION} <m>`"),
            ))
        }
    };
    if m == 0 {
        return Err(IngestError::parse(1, "an instance needs at least one paper"));
    }

    let mut records = Vec::with_capacity(m);
    for (line, body) in lines {
        if records.len() == m {
            return Err(IngestError::parse(line, format!("more than the {m} papers declared")));
        }
        let (id, authors) = body
            .split_once('\t')
            .ok_or_else(|| IngestError::parse(line, "missing tab after external id"))?;
        if id.is_empty() {
            return Err(IngestError::parse(line, "empty external id"));
        }
        let authors: Vec<String> = authors.split(' ').map(str::to_owned).collect();
        if authors.iter().any(|a| a.is_empty() || a.contains('\t')) {
            return Err(IngestError::parse(
                line,
                "author labels must be non-empty and separated by single spaces",
            ));
        }
        records.push(PaperRecord::new(id, authors));
    }
    if records.len() != m {
        return Err(IngestError::parse(
            records.len() + 2,
            format!("header declares {m} papers but {} found", records.len()),
        ));
    }
    Ok(records)
}

fn is_gzip(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gz")
}

pub fn write_instance(path: &Path, records: &[PaperRecord]) -> Result<(), IngestError> {
    let text = to_canonical_string(records)?;
    let file = BufWriter::new(File::create(path)?);
    if is_gzip(path) {
        let mut enc = GzEncoder::new(file, Compression::default());
        enc.write_all(text.as_bytes())?;
        enc.finish()?.flush()?;
    } else {
        let mut file = file;
        file.write_all(text.as_bytes())?;
        file.flush()?;
    }
    Ok(())
}

pub fn read_instance(path: &Path) -> Result<Vec<PaperRecord>, IngestError> {
    let file = BufReader::new(File::open(path)?);
    let mut text = String::new();
    let read = if is_gzip(path) {
        GzDecoder::new(file).read_to_string(&mut text)
    } else {
        let mut file = file;
        file.read_to_string(&mut text)
    };
    read.map_err(|e| match e.kind() {
        std::io::ErrorKind::InvalidData => IngestError::parse(0, format!("not valid UTF-8 or gzip: {e}")),
        _ => IngestError::Io(e),
    })?;
    parse_instance(&text)
}
