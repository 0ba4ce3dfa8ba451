//! Subcorpus extraction: stream sentence pairs matching a filter out of a
//! corpus tree as plain `ja<TAB>en` lines.

use std::collections::BTreeMap;
use std::io::Write;

use super::{read_alignment, read_ipc, read_pair_text, read_pairs, CorpusLayout};
use crate::align::AlignMethod;
use crate::error::{Error, Result};
use crate::family::RouteLabel;
use crate::segment::Part;

/// Which pairs and links to keep. Empty filter keeps everything.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SubcorpusFilter {
    /// Keep only links whose sentences belong to this part.
    pub part: Option<Part>,
    /// Keep only pairs with at least one IPC code starting with this prefix.
    pub ipc_prefix: Option<String>,
    /// Keep only pairs whose JP publication year lies in this inclusive range.
    pub year_range: Option<(i32, i32)>,
    /// Keep only pairs matched by this route.
    pub route: Option<RouteLabel>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtractSummary {
    pub pairs_scanned: u64,
    pub pairs_matched: u64,
    pub lines: u64,
}

/// Stream `ja<TAB>en` sentence-pair lines for every link matching the
/// filter. Many-to-many links join their sentences with single spaces per
/// side. Pairs are visited in `pairs.tsv` order (sorted by pair id), links
/// in document order.
pub fn extract_subcorpus<W: Write>(
    layout: &CorpusLayout,
    filter: &SubcorpusFilter,
    out: &mut W,
) -> Result<ExtractSummary> {
    let pairs = read_pairs(&layout.pairs_path())?;
    let ipc: BTreeMap<String, Vec<String>> = if filter.ipc_prefix.is_some() {
        read_ipc(&layout.ipc_path())?.into_iter().collect()
    } else {
        BTreeMap::new()
    };
    let mut summary = ExtractSummary::default();
    for pair in &pairs {
        summary.pairs_scanned += 1;
        if let Some(route) = filter.route {
            if pair.route != route {
                continue;
            }
        }
        if let Some((lo, hi)) = filter.year_range {
            match pair.jp_year() {
                Some(year) if (lo..=hi).contains(&year) => {}
                _ => continue,
            }
        }
        if let Some(prefix) = &filter.ipc_prefix {
            let codes = ipc.get(&pair.pair_id);
            if !codes.is_some_and(|codes| codes.iter().any(|c| c.starts_with(prefix.as_str()))) {
                continue;
            }
        }
        summary.pairs_matched += 1;
        summary.lines += emit_pair(layout, &pair.pair_id, filter, out)?;
    }
    Ok(summary)
}

fn emit_pair<W: Write>(
    layout: &CorpusLayout,
    pair_id: &str,
    filter: &SubcorpusFilter,
    out: &mut W,
) -> Result<u64> {
    let ja: BTreeMap<u32, (Part, String)> = read_pair_text(&layout.ja_text_path(pair_id))?
        .into_iter()
        .map(|r| (r.sent_in_doc, (r.part, r.text)))
        .collect();
    let en: BTreeMap<u32, (Part, String)> = read_pair_text(&layout.en_text_path(pair_id))?
        .into_iter()
        .map(|r| (r.sent_in_doc, (r.part, r.text)))
        .collect();
    let links = read_alignment(&layout.alignment_path(pair_id), AlignMethod::Dict)?;
    let mut lines = 0;
    for link in &links {
        let first_ja = link.ja_sents.first().copied().unwrap_or(0);
        if let Some(part) = filter.part {
            match ja.get(&first_ja) {
                Some((p, _)) if *p == part => {}
                _ => continue,
            }
        }
        let join = |nums: &[u32], side: &BTreeMap<u32, (Part, String)>| -> Result<String> {
            let texts: Option<Vec<&str>> =
                nums.iter().map(|n| side.get(n).map(|(_, t)| t.as_str())).collect();
            texts.map(|t| t.join(" ")).ok_or_else(|| {
                Error::MalformedRecord(format!(
                    "{pair_id}: alignment references a sentence missing from the text files"
                ))
            })
        };
        let ja_text = join(&link.ja_sents, &ja)?;
        let en_text = join(&link.en_sents, &en)?;
        writeln!(out, "{ja_text}\t{en_text}").map_err(|e| Error::io(layout.root(), e))?;
        lines += 1;
    }
    Ok(lines)
}
