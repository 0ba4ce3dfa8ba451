//! Corpus file writers. Every writer sorts its rows, formats floats with a
//! fixed precision, and emits LF-terminated UTF-8 so identical inputs give
//! byte-identical files.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;

use flate2::write::GzEncoder;
use flate2::Compression;

use super::{format_date, CorpusLayout, PairRow, FORMAT_VERSION};
use crate::align::{validate_links, AlignmentLink};
use crate::error::{Error, Result};
use crate::segment::SentenceRecord;

/// Write `contents` to `path`, gzip-compressing when the file name ends in
/// `.gz`, creating parent directories as needed.
fn write_text(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    if path.extension().is_some_and(|e| e == "gz") {
        let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut encoder = GzEncoder::new(file, Compression::default());
        encoder
            .write_all(contents.as_bytes())
            .and_then(|()| encoder.finish().map(drop))
            .map_err(|e| Error::io(path, e))
    } else {
        fs::write(path, contents).map_err(|e| Error::io(path, e))
    }
}

/// Stamp the corpus root with the current format version.
pub fn write_format_version(layout: &CorpusLayout) -> Result<()> {
    write_text(&layout.format_version_path(), &format!("{FORMAT_VERSION}\n"))
}

/// Write both sides of a pair as `<sentence_id>\t<text>` lines in document
/// order.
pub fn write_pair_text(
    layout: &CorpusLayout,
    pair_id: &str,
    ja_records: &[SentenceRecord],
    en_records: &[SentenceRecord],
) -> Result<()> {
    let render = |records: &[SentenceRecord]| {
        let mut s = String::new();
        for r in records {
            s.push_str(&r.sentence_id);
            s.push('\t');
            s.push_str(&r.text);
            s.push('\n');
        }
        s
    };
    write_text(&layout.ja_text_path(pair_id), &render(ja_records))?;
    write_text(&layout.en_text_path(pair_id), &render(en_records))
}

/// Write a pair's alignment: per link, comma-joined ascending Japanese
/// sentence numbers, a tab, the English numbers, a tab, and the score to 4
/// decimals (dropped under `paper_compat`). Links are sorted by their first
/// Japanese number; a non-monotone link set is a caller bug and is refused.
pub fn write_alignment(
    layout: &CorpusLayout,
    pair_id: &str,
    links: &[AlignmentLink],
    paper_compat: bool,
) -> Result<()> {
    let mut sorted = links.to_vec();
    sorted.sort_by_key(|l| l.ja_sents.first().copied());
    validate_links(&sorted)?;
    let mut out = String::new();
    for link in &sorted {
        out.push_str(&join_numbers(&link.ja_sents));
        out.push('\t');
        out.push_str(&join_numbers(&link.en_sents));
        if !paper_compat {
            out.push('\t');
            out.push_str(&format!("{:.4}", link.score));
        }
        out.push('\n');
    }
    write_text(&layout.alignment_path(pair_id), &out)
}

fn join_numbers(nums: &[u32]) -> String {
    nums.iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Union of the two documents' IPC codes, for one `ipc.tsv` row.
pub fn ipc_union(jp_codes: &[String], us_codes: &[String]) -> BTreeSet<String> {
    jp_codes.iter().chain(us_codes).cloned().collect()
}

/// Write the corpus-level `ipc.tsv`: `<pair_id>\t<comma-joined sorted
/// codes>`, sorted by pair id.
pub fn write_ipc(layout: &CorpusLayout, entries: &[(String, BTreeSet<String>)]) -> Result<()> {
    let mut sorted: Vec<&(String, BTreeSet<String>)> = entries.iter().collect();
    sorted.sort_by_key(|(pair_id, _)| pair_id.as_str());
    let mut out = String::new();
    for (pair_id, codes) in sorted {
        out.push_str(pair_id);
        out.push('\t');
        out.push_str(&codes.iter().cloned().collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    write_text(&layout.ipc_path(), &out)
}

/// Write the corpus-level `pairs.tsv`: pair id, route, anchor country,
/// anchor number, JP and US publication dates (compact, `-` when absent),
/// sorted by pair id.
pub fn write_pairs(layout: &CorpusLayout, rows: &[PairRow]) -> Result<()> {
    let mut sorted: Vec<&PairRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.pair_id.as_str());
    let mut out = String::new();
    for row in sorted {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            row.pair_id,
            row.route,
            row.anchor_country,
            row.anchor_number,
            format_date(row.jp_pub_date),
            format_date(row.us_pub_date),
        ));
    }
    write_text(&layout.pairs_path(), &out)
}
