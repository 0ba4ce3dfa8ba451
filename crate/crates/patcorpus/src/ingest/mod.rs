//! Record ingestion: XML reading and the three office parsers.
//!
//! The accepted element/attribute subset of each source format is documented
//! in docs/formats.md. Parsers are pure functions over parsed element trees;
//! the `io` helpers add file reading (gzip, Shift_JIS) on top.

pub mod docdb;
pub mod jpo;
pub mod text;
pub mod types;
pub mod uspto;
pub mod xml;

mod ids;
mod io;

pub use docdb::parse_docdb;
pub use io::{parse_docdb_file, parse_jpo_file, parse_uspto_file, read_text_file, IngestOptions};
pub use jpo::parse_jpo;
pub use text::{clean_text, extract_text_parts};
pub use types::{
    is_valid_ipc, normalize_ipc, parse_compact_date, CountryCode, DocumentIdentifier,
    DocumentParts, GazetteKind, Office, PatentDocument, PriorityRecord,
};
pub use uspto::parse_uspto;
