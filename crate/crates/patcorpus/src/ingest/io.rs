//! File-level readers: decompression, character decoding, and per-file
//! record parsing.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use flate2::read::MultiGzDecoder;

use crate::error::{Error, Result};

use super::types::{PatentDocument, PriorityRecord};
use super::xml::{parse_documents, XmlOptions};

/// Per-run ingest configuration.
#[derive(Debug, Clone, Default)]
pub struct IngestOptions {
    /// Decode input files as Shift_JIS instead of UTF-8.
    pub shift_jis: bool,
    pub xml: XmlOptions,
}

/// Read a whole file into a string, transparently gunzipping paths ending in
/// ".gz" and decoding Shift_JIS when requested.
pub fn read_text_file(path: &Path, shift_jis: bool) -> Result<String> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut bytes = Vec::new();
    if path.extension().is_some_and(|ext| ext == "gz") {
        MultiGzDecoder::new(file)
            .read_to_end(&mut bytes)
            .map_err(|e| Error::io(path, e))?;
    } else {
        let mut file = file;
        file.read_to_end(&mut bytes).map_err(|e| Error::io(path, e))?;
    }
    decode(bytes, shift_jis, path)
}

fn decode(bytes: Vec<u8>, shift_jis: bool, path: &Path) -> Result<String> {
    if shift_jis {
        let (text, _, had_errors) = encoding_rs::SHIFT_JIS.decode(&bytes);
        if had_errors {
            return Err(Error::malformed(format!(
                "{}: invalid Shift_JIS",
                path.display()
            )));
        }
        Ok(text.into_owned())
    } else {
        String::from_utf8(bytes)
            .map_err(|_| Error::malformed(format!("{}: invalid UTF-8", path.display())))
    }
}

/// Parse every jp-official-gazette record in a file (one or many records).
pub fn parse_jpo_file(path: &Path, opts: &IngestOptions) -> Result<Vec<PatentDocument>> {
    let text = read_text_file(path, opts.shift_jis)?;
    let roots = parse_documents(&text, &opts.xml)?;
    roots.iter().map(super::jpo::parse_jpo).collect()
}

/// Parse every us-patent-application record in a file.
pub fn parse_uspto_file(path: &Path, opts: &IngestOptions) -> Result<Vec<PatentDocument>> {
    let text = read_text_file(path, opts.shift_jis)?;
    let roots = parse_documents(&text, &opts.xml)?;
    roots.iter().map(super::uspto::parse_uspto).collect()
}

/// Parse every exchange-document record in a file.
pub fn parse_docdb_file(path: &Path, opts: &IngestOptions) -> Result<Vec<PriorityRecord>> {
    let text = read_text_file(path, opts.shift_jis)?;
    let roots = parse_documents(&text, &opts.xml)?;
    roots.iter().map(super::docdb::parse_docdb).collect()
}
