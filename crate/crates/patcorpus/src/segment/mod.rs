//! Segmentation: document parts → paragraphs → sentences, with stable
//! hierarchical sentence identifiers.
//!
//! Sentence IDs read
//! `<pair_id>:<part>:p<paragraph>:s<sentence-in-paragraph>:n<sentence-in-document>`
//! with zero padding of 4/2/5 digits, e.g.
//! `JP2021000998-US20210139186:description:p0012:s02:n00147`.

mod en;
mod ja;

pub use en::{split_sentences_en, tokenize_en, NonbreakingPrefixes};
pub use ja::{split_sentences_ja, tokenize_ja};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::PatentDocument;

/// The four aligned parts of a patent document, in document order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Title,
    Abstract,
    Description,
    Claim,
}

impl Part {
    pub const ALL: [Part; 4] = [Part::Title, Part::Abstract, Part::Description, Part::Claim];

    pub fn as_str(self) -> &'static str {
        match self {
            Part::Title => "title",
            Part::Abstract => "abstract",
            Part::Description => "description",
            Part::Claim => "claim",
        }
    }
}

impl std::str::FromStr for Part {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "title" => Ok(Part::Title),
            "abstract" => Ok(Part::Abstract),
            "description" => Ok(Part::Description),
            "claim" => Ok(Part::Claim),
            other => Err(Error::InvalidParam(format!("unknown part {other:?}"))),
        }
    }
}

impl std::fmt::Display for Part {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One segmented sentence with its position in the document hierarchy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceRecord {
    pub sentence_id: String,
    pub pair_id: String,
    pub part: Part,
    /// 1-based paragraph number within the part.
    pub paragraph_no: u32,
    /// 1-based sentence number within the paragraph.
    pub sent_in_para: u32,
    /// 1-based sentence number within the whole document, contiguous.
    pub sent_in_doc: u32,
    pub text: String,
    /// Filled lazily by the aligner.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tokens: Vec<String>,
}

/// Render a sentence ID from its components.
pub fn format_sentence_id(
    pair_id: &str,
    part: Part,
    paragraph_no: u32,
    sent_in_para: u32,
    sent_in_doc: u32,
) -> String {
    format!("{pair_id}:{part}:p{paragraph_no:04}:s{sent_in_para:02}:n{sent_in_doc:05}")
}

/// Parse a sentence ID back into (pair_id, part, paragraph_no, sent_in_para,
/// sent_in_doc). Inverse of [`format_sentence_id`].
pub fn parse_sentence_id(id: &str) -> Result<(String, Part, u32, u32, u32)> {
    let bad = || Error::BadSentenceId(id.to_owned());
    let fields: Vec<&str> = id.rsplitn(5, ':').collect();
    if fields.len() != 5 {
        return Err(bad());
    }
    // rsplitn yields fields right-to-left.
    let (n_field, s_field, p_field, part_field, pair_id) =
        (fields[0], fields[1], fields[2], fields[3], fields[4]);
    let number = |field: &str, prefix: char, width: usize| -> Result<u32> {
        let digits = field
            .strip_prefix(prefix)
            .filter(|d| d.len() >= width && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(bad)?;
        digits.parse().map_err(|_| bad())
    };
    let part: Part = part_field.parse().map_err(|_| bad())?;
    let paragraph_no = number(p_field, 'p', 4)?;
    let sent_in_para = number(s_field, 's', 2)?;
    let sent_in_doc = number(n_field, 'n', 5)?;
    if pair_id.is_empty() {
        return Err(bad());
    }
    Ok((pair_id.to_owned(), part, paragraph_no, sent_in_para, sent_in_doc))
}

/// Split a pair ID "JP<number>-US<number>" into the two publication numbers.
pub fn parse_pair_id(pair_id: &str) -> Result<(String, String)> {
    let bad = || Error::BadPairId(pair_id.to_owned());
    let rest = pair_id.strip_prefix("JP").ok_or_else(bad)?;
    let (jp, us) = rest.split_once("-US").ok_or_else(bad)?;
    if jp.is_empty() || us.is_empty() || jp.contains(':') || us.contains(':') {
        return Err(bad());
    }
    Ok((jp.to_owned(), us.to_owned()))
}

/// The four part paragraph lists of a document, in alignment order. The
/// title becomes a one-paragraph part (empty titles yield an empty part).
pub fn split_parts(doc: &PatentDocument) -> Vec<(Part, Vec<String>)> {
    let title = if doc.parts.title.is_empty() {
        Vec::new()
    } else {
        vec![doc.parts.title.clone()]
    };
    vec![
        (Part::Title, title),
        (Part::Abstract, doc.parts.abstract_paras.clone()),
        (Part::Description, doc.parts.description.clone()),
        (Part::Claim, doc.parts.claims.clone()),
    ]
}

/// Split every paragraph into sentences and assign hierarchical IDs.
/// Paragraph and in-paragraph numbers restart per part; the document-level
/// number runs contiguously from 1 across all parts.
pub fn assign_ids<F>(pair_id: &str, parts: &[(Part, Vec<String>)], split: F) -> Vec<SentenceRecord>
where
    F: Fn(&str) -> Vec<String>,
{
    let mut records = Vec::new();
    let mut sent_in_doc = 0u32;
    for (part, paragraphs) in parts {
        for (p_idx, paragraph) in paragraphs.iter().enumerate() {
            for (s_idx, text) in split(paragraph).into_iter().enumerate() {
                sent_in_doc += 1;
                let paragraph_no = (p_idx + 1) as u32;
                let sent_in_para = (s_idx + 1) as u32;
                records.push(SentenceRecord {
                    sentence_id: format_sentence_id(
                        pair_id,
                        *part,
                        paragraph_no,
                        sent_in_para,
                        sent_in_doc,
                    ),
                    pair_id: pair_id.to_owned(),
                    part: *part,
                    paragraph_no,
                    sent_in_para,
                    sent_in_doc,
                    text,
                    tokens: Vec::new(),
                });
            }
        }
    }
    records
}

/// Which side of a pair a document is, selecting the sentence splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Ja,
    En,
}

/// Segment one document of a pair end to end.
pub fn segment_document(
    pair_id: &str,
    doc: &PatentDocument,
    side: Side,
    prefixes: &NonbreakingPrefixes,
) -> Vec<SentenceRecord> {
    let parts = split_parts(doc);
    match side {
        Side::Ja => assign_ids(pair_id, &parts, |p| split_sentences_ja(p)),
        Side::En => assign_ids(pair_id, &parts, |p| split_sentences_en(p, prefixes)),
    }
}
