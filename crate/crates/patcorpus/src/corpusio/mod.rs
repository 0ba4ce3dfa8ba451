//! On-disk corpus layout, readers, writers, and statistics.
//!
//! A corpus root holds a `FORMAT_VERSION` stamp, corpus-level `pairs.tsv`
//! and `ipc.tsv`, and per-pair files (`<pair_id>.ja.txt`, `<pair_id>.en.txt`,
//! `<pair_id>.align`) sharded into two 2-character directory levels derived
//! from a hash of the pair id. All writers emit UTF-8 with LF line endings
//! and a final newline, and are byte-deterministic for identical inputs.

mod extract;
mod readers;
mod stats;
mod writers;

pub use extract::{extract_subcorpus, ExtractSummary, SubcorpusFilter};
pub use readers::{
    read_alignment, read_ipc, read_lexicon, read_pair_text, read_pairs, read_translations,
};
pub use stats::{extraction_rate, yearly_stats, ExtractionReport, RateInput, RateRow, StatsRow, YearlyStats};
pub use writers::{
    ipc_union, write_alignment, write_format_version, write_ipc, write_pair_text, write_pairs,
};

use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::family::{DocumentPair, RouteLabel};

/// Version stamp written to `FORMAT_VERSION` at the corpus root. Bump when
/// any file format changes shape.
pub const FORMAT_VERSION: &str = "1";

/// Where corpus files live under a root directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusLayout {
    root: PathBuf,
    gzip: bool,
}

impl CorpusLayout {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        CorpusLayout {
            root: root.into(),
            gzip: false,
        }
    }

    /// Gzip-compress per-pair files (corpus-level TSVs stay plain).
    pub fn with_gzip(mut self, gzip: bool) -> Self {
        self.gzip = gzip;
        self
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn gzip(&self) -> bool {
        self.gzip
    }

    /// Shard directory for a pair: the first 4 hex characters of a stable
    /// 64-bit hash of the pair id, as two 2-character levels.
    pub fn pair_dir(&self, pair_id: &str) -> PathBuf {
        let hex = format!("{:016x}", fnv1a64(pair_id.as_bytes()));
        self.root.join(&hex[0..2]).join(&hex[2..4])
    }

    pub fn ja_text_path(&self, pair_id: &str) -> PathBuf {
        self.pair_file(pair_id, "ja.txt")
    }

    pub fn en_text_path(&self, pair_id: &str) -> PathBuf {
        self.pair_file(pair_id, "en.txt")
    }

    pub fn alignment_path(&self, pair_id: &str) -> PathBuf {
        self.pair_file(pair_id, "align")
    }

    fn pair_file(&self, pair_id: &str, ext: &str) -> PathBuf {
        let gz = if self.gzip { ".gz" } else { "" };
        self.pair_dir(pair_id).join(format!("{pair_id}.{ext}{gz}"))
    }

    pub fn pairs_path(&self) -> PathBuf {
        self.root.join("pairs.tsv")
    }

    pub fn ipc_path(&self) -> PathBuf {
        self.root.join("ipc.tsv")
    }

    pub fn format_version_path(&self) -> PathBuf {
        self.root.join("FORMAT_VERSION")
    }
}

/// FNV-1a, 64-bit: stable across platforms and runs, unlike `DefaultHasher`.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// One `pairs.tsv` row: the document pair's identity, route, the anchor
/// application that justified it, and both publication dates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub pair_id: String,
    pub route: RouteLabel,
    pub anchor_country: String,
    pub anchor_number: String,
    pub jp_pub_date: Option<NaiveDate>,
    pub us_pub_date: Option<NaiveDate>,
}

impl From<&DocumentPair> for PairRow {
    fn from(pair: &DocumentPair) -> Self {
        PairRow {
            pair_id: pair.pair_id.clone(),
            route: pair.route,
            anchor_country: pair.anchor.country.to_string(),
            anchor_number: pair.anchor.doc_number.clone(),
            jp_pub_date: pair.jp_publication.date,
            us_pub_date: pair.us_publication.date,
        }
    }
}

impl PairRow {
    /// Publication year of the Japanese document, the row key for
    /// [`yearly_stats`].
    pub fn jp_year(&self) -> Option<i32> {
        use chrono::Datelike;
        self.jp_pub_date.map(|d| d.year())
    }
}

pub(crate) fn format_date(date: Option<NaiveDate>) -> String {
    match date {
        Some(d) => d.format("%Y%m%d").to_string(),
        None => "-".to_string(),
    }
}

pub(crate) fn parse_date_field(s: &str) -> Option<NaiveDate> {
    if s == "-" {
        return None;
    }
    crate::ingest::parse_compact_date(s).ok()
}
