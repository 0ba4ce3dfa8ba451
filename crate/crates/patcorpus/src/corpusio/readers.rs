//! Corpus file readers. Side inputs (lexicon, translations) tolerate
//! malformed lines and report them as warnings; the toolkit's own formats
//! are read strictly.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::{parse_date_field, PairRow};
use crate::align::{AlignMethod, AlignmentLink, BilingualLexicon};
use crate::error::{Error, Result, Warnings};
use crate::ingest::read_text_file;
use crate::segment::{parse_sentence_id, tokenize_en, SentenceRecord};

/// Pick the on-disk variant of a path: the path itself, or its `.gz`
/// counterpart (added or removed) when only that exists.
fn resolve(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    let s = path.to_string_lossy();
    let alt = match s.strip_suffix(".gz") {
        Some(stripped) => PathBuf::from(stripped),
        None => PathBuf::from(format!("{s}.gz")),
    };
    if alt.exists() {
        alt
    } else {
        path.to_path_buf()
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text = read_text_file(&resolve(path), false)?;
    Ok(text.lines().map(|l| l.trim_end_matches('\r').to_string()).collect())
}

/// Read a bilingual lexicon: one `japanese<TAB>english` entry per line,
/// `#` comment lines and blank lines ignored. Lines without exactly two
/// fields are skipped and counted as warnings.
pub fn read_lexicon(path: &Path) -> Result<(BilingualLexicon, Warnings)> {
    let mut lexicon = BilingualLexicon::new();
    let mut warnings = Warnings::default();
    for (no, line) in read_lines(path)?.iter().enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            [ja, en] if !ja.trim().is_empty() && !en.trim().is_empty() => {
                lexicon.insert(ja, en);
            }
            _ => warnings.push(format!(
                "{}:{}: malformed lexicon line, expected 2 fields",
                path.display(),
                no + 1
            )),
        }
    }
    Ok((lexicon, warnings))
}

/// Read machine translations: `sentence_id<TAB>english text` per line, the
/// text tokenized with [`tokenize_en`] on load. A duplicated sentence id
/// keeps the last entry and warns.
pub fn read_translations(path: &Path) -> Result<(BTreeMap<String, Vec<String>>, Warnings)> {
    let mut map = BTreeMap::new();
    let mut warnings = Warnings::default();
    for (no, line) in read_lines(path)?.iter().enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('\t') {
            Some((id, text)) if !id.is_empty() && !text.contains('\t') => {
                if map.insert(id.to_string(), tokenize_en(text)).is_some() {
                    warnings.push(format!(
                        "{}:{}: duplicate translation for {id}, keeping the last",
                        path.display(),
                        no + 1
                    ));
                }
            }
            _ => warnings.push(format!(
                "{}:{}: malformed translation line, expected 2 fields",
                path.display(),
                no + 1
            )),
        }
    }
    Ok((map, warnings))
}

/// Read one side of a pair back into sentence records (tokens left empty).
pub fn read_pair_text(path: &Path) -> Result<Vec<SentenceRecord>> {
    let mut records = Vec::new();
    for (no, line) in read_lines(path)?.iter().enumerate() {
        let (id, text) = line.split_once('\t').ok_or_else(|| {
            Error::MalformedRecord(format!("{}:{}: expected id<TAB>text", path.display(), no + 1))
        })?;
        let (pair_id, part, paragraph_no, sent_in_para, sent_in_doc) = parse_sentence_id(id)?;
        records.push(SentenceRecord {
            sentence_id: id.to_string(),
            pair_id,
            part,
            paragraph_no,
            sent_in_para,
            sent_in_doc,
            text: text.to_string(),
            tokens: Vec::new(),
        });
    }
    Ok(records)
}

/// Read an alignment file. The format does not record which aligner
/// produced it, so the caller supplies the method; files written with the
/// score column dropped read back with score 0.
pub fn read_alignment(path: &Path, method: AlignMethod) -> Result<Vec<AlignmentLink>> {
    let mut links = Vec::new();
    for (no, line) in read_lines(path)?.iter().enumerate() {
        let fields: Vec<&str> = line.split('\t').collect();
        let (ja, en, score) = match fields.as_slice() {
            [ja, en] => (*ja, *en, 0.0),
            [ja, en, score] => (
                *ja,
                *en,
                score.parse::<f64>().map_err(|_| malformed(path, no, "bad score"))?,
            ),
            _ => return Err(malformed(path, no, "expected 2 or 3 fields")),
        };
        links.push(AlignmentLink::new(
            parse_numbers(ja).ok_or_else(|| malformed(path, no, "bad sentence numbers"))?,
            parse_numbers(en).ok_or_else(|| malformed(path, no, "bad sentence numbers"))?,
            score,
            method,
        ));
    }
    Ok(links)
}

fn parse_numbers(s: &str) -> Option<Vec<u32>> {
    s.split(',').map(|n| n.parse::<u32>().ok()).collect()
}

fn malformed(path: &Path, line_index: usize, what: &str) -> Error {
    Error::MalformedRecord(format!("{}:{}: {what}", path.display(), line_index + 1))
}

/// Read `ipc.tsv` into (pair_id, codes) rows.
pub fn read_ipc(path: &Path) -> Result<Vec<(String, Vec<String>)>> {
    let mut rows = Vec::new();
    for (no, line) in read_lines(path)?.iter().enumerate() {
        let (pair_id, codes) = line
            .split_once('\t')
            .ok_or_else(|| malformed(path, no, "expected pair_id<TAB>codes"))?;
        let codes: Vec<String> = codes
            .split(',')
            .filter(|c| !c.is_empty())
            .map(str::to_string)
            .collect();
        rows.push((pair_id.to_string(), codes));
    }
    Ok(rows)
}

/// Read `pairs.tsv` back into rows.
pub fn read_pairs(path: &Path) -> Result<Vec<PairRow>> {
    let mut rows = Vec::new();
    for (no, line) in read_lines(path)?.iter().enumerate() {
        let fields: Vec<&str> = line.split('\t').collect();
        let [pair_id, route, country, number, jp_date, us_date] = fields.as_slice() else {
            return Err(malformed(path, no, "expected 6 fields"));
        };
        rows.push(PairRow {
            pair_id: pair_id.to_string(),
            route: route.parse()?,
            anchor_country: country.to_string(),
            anchor_number: number.to_string(),
            jp_pub_date: parse_date_field(jp_date),
            us_pub_date: parse_date_field(us_date),
        });
    }
    Ok(rows)
}
