//! Patent bitext mining toolkit.
//!
//! The pipeline mines Japanese–English parallel text from patent
//! publications in four stages:
//!
//! 1. **ingest** — parse JPO gazette, USPTO application full-text, and DOCDB
//!    exchange records into domain types.
//! 2. **family** — pair JP and US documents that belong to the same patent
//!    family, via priority claims (Paris routes) or shared PCT application
//!    numbers (PCT route).
//! 3. **segment** — split each document into parts, paragraphs, and
//!    sentences with stable sentence identifiers.
//! 4. **align** — align the two sides sentence-by-sentence, either with a
//!    bilingual dictionary or with translations of the Japanese side.
//!
//! `corpusio` defines the on-disk corpus layout and statistics, and
//! `fixtures` generates synthetic bilingual corpora for tests and benchmarks.

pub mod align;
pub mod corpusio;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod ingest;
pub mod segment;

pub use error::{Error, Result};
