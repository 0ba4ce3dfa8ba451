//! Sentence alignment.
//!
//! Two aligners share the link representation: `align_dict` scores beads
//! with bilingual-dictionary token matches and solves a dynamic program
//! over bead sequences; `align_mt` scores candidate links with sentence
//! BLEU against translations of the Japanese side, picks a chain of
//! high-confidence 1-1 anchors, and fills the gaps with merge beads.
//! `brute_force_align` is a small-instance exhaustive reference.

mod bleu;
mod dict;
mod lexicon;
mod mt;
mod oracle;

pub use bleu::sentence_bleu;
pub use dict::{align_dict, align_dict_scored, dict_similarity, span_similarity};
pub use lexicon::BilingualLexicon;
pub use mt::{align_mt, ScoreMatrix};
pub use oracle::brute_force_align;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which aligner produced a link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlignMethod {
    Dict,
    Mt,
}

/// One many-to-many alignment link between consecutive Japanese and English
/// sentences. Sentence numbers are 1-based and ascending; each side holds at
/// most 3 sentences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentLink {
    pub ja_sents: Vec<u32>,
    pub en_sents: Vec<u32>,
    /// Similarity (dict) or BLEU (mt) of the linked bead, in [0,1].
    pub score: f64,
    pub method: AlignMethod,
}

impl AlignmentLink {
    pub fn new(ja_sents: Vec<u32>, en_sents: Vec<u32>, score: f64, method: AlignMethod) -> Self {
        AlignmentLink {
            ja_sents,
            en_sents,
            score,
            method,
        }
    }
}

/// Check the link-list invariants: both sides nonempty and ascending, at
/// most 3 sentences per side, and consecutive links strictly monotone and
/// disjoint on both sides.
pub fn validate_links(links: &[AlignmentLink]) -> Result<()> {
    let ascending = |v: &[u32]| v.windows(2).all(|w| w[0] < w[1]);
    for (idx, link) in links.iter().enumerate() {
        if link.ja_sents.is_empty() || link.en_sents.is_empty() {
            return Err(Error::InvariantViolation(format!(
                "link {idx} has an empty side"
            )));
        }
        if link.ja_sents.len() > 3 || link.en_sents.len() > 3 {
            return Err(Error::InvariantViolation(format!(
                "link {idx} exceeds the 3-sentence bead cap"
            )));
        }
        if !ascending(&link.ja_sents) || !ascending(&link.en_sents) {
            return Err(Error::InvariantViolation(format!(
                "link {idx} has non-ascending sentence numbers"
            )));
        }
        if idx > 0 {
            let prev = &links[idx - 1];
            if prev.ja_sents.last() >= link.ja_sents.first()
                || prev.en_sents.last() >= link.en_sents.first()
            {
                return Err(Error::InvariantViolation(format!(
                    "links {} and {idx} overlap or cross",
                    idx - 1
                )));
            }
        }
    }
    Ok(())
}

/// A bead shape: how many consecutive sentences each side contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Bead {
    pub ja: usize,
    pub en: usize,
}

impl Bead {
    pub const fn new(ja: usize, en: usize) -> Self {
        Bead { ja, en }
    }

    /// Substantive beads link sentences; 1-0/0-1 beads skip one sentence.
    pub fn is_substantive(self) -> bool {
        self.ja > 0 && self.en > 0
    }
}

impl std::fmt::Display for Bead {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.ja, self.en)
    }
}

impl std::str::FromStr for Bead {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Option<(usize, usize)> = s
            .split_once('-')
            .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
        match parts {
            Some((ja, en)) => Ok(Bead { ja, en }),
            None => Err(Error::InvalidParam(format!("invalid bead {s:?}"))),
        }
    }
}

impl TryFrom<String> for Bead {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Bead> for String {
    fn from(b: Bead) -> String {
        b.to_string()
    }
}

/// The bead inventory the dynamic program may use.
pub const ALLOWED_BEADS: [Bead; 6] = [
    Bead::new(1, 1),
    Bead::new(1, 2),
    Bead::new(2, 1),
    Bead::new(2, 2),
    Bead::new(1, 0),
    Bead::new(0, 1),
];

pub const DEFAULT_SKIP_PENALTY: f64 = 0.05;
pub const DEFAULT_MERGE_PENALTY: f64 = 0.01;

/// Parameters for the dictionary aligner's dynamic program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DictParams {
    /// Bead shapes to consider; must be a subset of [`ALLOWED_BEADS`].
    pub beads: Vec<Bead>,
    /// Cost of leaving one sentence unaligned (a 1-0 or 0-1 bead).
    pub skip_penalty: f64,
    /// Cost subtracted from any bead linking more than two sentences total.
    pub merge_penalty: f64,
}

impl Default for DictParams {
    fn default() -> Self {
        DictParams {
            beads: ALLOWED_BEADS.to_vec(),
            skip_penalty: DEFAULT_SKIP_PENALTY,
            merge_penalty: DEFAULT_MERGE_PENALTY,
        }
    }
}

impl DictParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.skip_penalty.is_finite() && self.skip_penalty >= 0.0) {
            return Err(Error::InvalidParam(format!(
                "skip_penalty must be finite and >= 0, got {}",
                self.skip_penalty
            )));
        }
        if !(self.merge_penalty.is_finite() && self.merge_penalty >= 0.0) {
            return Err(Error::InvalidParam(format!(
                "merge_penalty must be finite and >= 0, got {}",
                self.merge_penalty
            )));
        }
        for bead in &self.beads {
            if !ALLOWED_BEADS.contains(bead) {
                return Err(Error::InvalidParam(format!("bead {bead} not allowed")));
            }
        }
        Ok(())
    }
}

pub const DEFAULT_ANCHOR_THRESHOLD: f64 = 0.0;
pub const DEFAULT_MAX_GAP_MERGE: usize = 2;
pub const DEFAULT_BLEU_ORDER: usize = 2;

/// Parameters for the translation-based aligner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MtParams {
    /// Minimum BLEU (strict) for a 1-1 anchor or an accepted gap bead.
    pub anchor_threshold: f64,
    /// Most sentences merged per side while filling gaps (1..=3).
    pub max_gap_merge: usize,
    /// BLEU n-gram order used for scoring.
    pub bleu_order: usize,
}

impl Default for MtParams {
    fn default() -> Self {
        MtParams {
            anchor_threshold: DEFAULT_ANCHOR_THRESHOLD,
            max_gap_merge: DEFAULT_MAX_GAP_MERGE,
            bleu_order: DEFAULT_BLEU_ORDER,
        }
    }
}

impl MtParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.anchor_threshold.is_finite() && self.anchor_threshold >= 0.0) {
            return Err(Error::InvalidParam(format!(
                "anchor_threshold must be finite and >= 0, got {}",
                self.anchor_threshold
            )));
        }
        if !(1..=3).contains(&self.max_gap_merge) {
            return Err(Error::InvalidParam(format!(
                "max_gap_merge must be in 1..=3, got {}",
                self.max_gap_merge
            )));
        }
        if !(1..=9).contains(&self.bleu_order) {
            return Err(Error::InvalidParam(format!(
                "bleu_order must be in 1..=9, got {}",
                self.bleu_order
            )));
        }
        Ok(())
    }
}
