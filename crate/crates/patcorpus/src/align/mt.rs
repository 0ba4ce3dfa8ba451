//! Translation-based sentence alignment.
//!
//! Japanese sentences arrive as machine translations into English; each
//! translation is scored against every English sentence with sentence BLEU.
//! A maximum-total-score chain of strictly monotone 1-1 anchors seeds the
//! alignment, anchors grow into merge beads when absorbing adjacent
//! unaligned sentences raises their BLEU, and leftover gaps are filled with
//! the best-scoring merge beads above the threshold.

use super::bleu::sentence_bleu;
use super::{AlignMethod, AlignmentLink, MtParams};
use crate::error::{Error, Result};

/// Dense Japanese x English sentence score matrix (0-based indexing).
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    n_ja: usize,
    n_en: usize,
    data: Vec<f64>,
}

impl ScoreMatrix {
    pub fn new(n_ja: usize, n_en: usize) -> Self {
        ScoreMatrix {
            n_ja,
            n_en,
            data: vec![0.0; n_ja * n_en],
        }
    }

    /// Score every translation against every English sentence with
    /// smoothed sentence BLEU of the given order.
    pub fn from_bleu(translations: &[Vec<String>], en_sentences: &[Vec<String>], order: usize) -> Self {
        let mut matrix = ScoreMatrix::new(translations.len(), en_sentences.len());
        for (i, cand) in translations.iter().enumerate() {
            for (j, reference) in en_sentences.iter().enumerate() {
                matrix.set(i, j, sentence_bleu(cand, reference, order, true));
            }
        }
        matrix
    }

    pub fn n_ja(&self) -> usize {
        self.n_ja
    }

    pub fn n_en(&self) -> usize {
        self.n_en
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n_en + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n_en + j] = value;
    }

    /// Every entry must be finite and in [0,1].
    pub fn validate(&self) -> Result<()> {
        for (k, &v) in self.data.iter().enumerate() {
            if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
                return Err(Error::InvariantViolation(format!(
                    "score at ({}, {}) out of range: {v}",
                    k / self.n_en,
                    k % self.n_en
                )));
            }
        }
        Ok(())
    }
}

/// Align `n_ja` Japanese sentences (given by their tokenized English
/// translations) to tokenized English sentences. Fails with
/// `LengthMismatch` when the translation count differs from `n_ja`.
pub fn align_mt(
    n_ja: usize,
    translations: &[Vec<String>],
    en_sentences: &[Vec<String>],
    params: &MtParams,
) -> Result<Vec<AlignmentLink>> {
    params.validate()?;
    if translations.len() != n_ja {
        return Err(Error::LengthMismatch {
            expected: n_ja,
            got: translations.len(),
        });
    }
    let scores = ScoreMatrix::from_bleu(translations, en_sentences, params.bleu_order);
    let chain = anchor_chain(&scores, params.anchor_threshold);

    // Grow each anchor into the largest-BLEU bead over windows that contain
    // it and stay clear of neighboring anchors and already-consumed
    // sentences. Strict improvement is required, so clean 1-1 anchors stay.
    let n = translations.len();
    let m = en_sentences.len();
    let g = params.max_gap_merge;
    let mut beads: Vec<(std::ops::Range<usize>, std::ops::Range<usize>, f64)> = Vec::new();
    let (mut done_ja, mut done_en) = (0usize, 0usize);
    for (k, &(ai, aj)) in chain.iter().enumerate() {
        let hi_ja = chain.get(k + 1).map_or(n, |&(i, _)| i);
        let hi_en = chain.get(k + 1).map_or(m, |&(_, j)| j);
        let mut best = (ai..ai + 1, aj..aj + 1, scores.get(ai, aj));
        for len_ja in 1..=g {
            for len_en in 1..=g {
                if len_ja == 1 && len_en == 1 {
                    continue;
                }
                for start_ja in done_ja.max(ai + 1 - len_ja.min(ai + 1))..=ai {
                    let end_ja = start_ja + len_ja;
                    if end_ja > hi_ja {
                        continue;
                    }
                    for start_en in done_en.max(aj + 1 - len_en.min(aj + 1))..=aj {
                        let end_en = start_en + len_en;
                        if end_en > hi_en {
                            continue;
                        }
                        let merged = merged_bleu(
                            translations,
                            en_sentences,
                            start_ja..end_ja,
                            start_en..end_en,
                            params.bleu_order,
                        );
                        if merged > best.2 {
                            best = (start_ja..end_ja, start_en..end_en, merged);
                        }
                    }
                }
            }
        }
        done_ja = best.0.end;
        done_en = best.1.end;
        beads.push(best);
    }

    // Fill the gaps between consecutive beads (and around the ends).
    let mut links: Vec<AlignmentLink> = Vec::new();
    let (mut gap_ja, mut gap_en) = (0usize, 0usize);
    for (ja, en, score) in beads.iter().cloned().chain(std::iter::once((n..n, m..m, 0.0))) {
        let mut filled = Vec::new();
        fill_gap(
            translations,
            en_sentences,
            gap_ja..ja.start,
            gap_en..en.start,
            params,
            &mut filled,
        );
        links.extend(filled);
        if !ja.is_empty() && !en.is_empty() {
            links.push(make_link(ja.clone(), en.clone(), score));
        }
        gap_ja = ja.end;
        gap_en = en.end;
    }
    Ok(links)
}

/// Maximum-total-score chain of strictly monotone anchor cells whose score
/// exceeds the threshold. Returns 0-based (ja, en) positions in order.
fn anchor_chain(scores: &ScoreMatrix, threshold: f64) -> Vec<(usize, usize)> {
    let n = scores.n_ja();
    let m = scores.n_en();
    if n == 0 || m == 0 {
        return Vec::new();
    }
    let mut best = vec![f64::NEG_INFINITY; n * m];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * m];
    // Best chain total over the rectangle [0..=i] x [0..=j], with its final
    // cell; (0.0, None) stands for the empty chain.
    let mut prefix: Vec<(f64, Option<(usize, usize)>)> = vec![(0.0, None); n * m];
    for i in 0..n {
        for j in 0..m {
            let s = scores.get(i, j);
            if s > threshold {
                let (p, cell) = if i > 0 && j > 0 {
                    prefix[(i - 1) * m + (j - 1)]
                } else {
                    (0.0, None)
                };
                best[i * m + j] = s + p;
                parent[i * m + j] = cell;
            }
            // Ties keep the earlier cell in row-major order.
            let mut px = (0.0, None);
            if i > 0 && prefix[(i - 1) * m + j].0 > px.0 {
                px = prefix[(i - 1) * m + j];
            }
            if j > 0 && prefix[i * m + (j - 1)].0 > px.0 {
                px = prefix[i * m + (j - 1)];
            }
            if best[i * m + j] > px.0 {
                px = (best[i * m + j], Some((i, j)));
            }
            prefix[i * m + j] = px;
        }
    }
    let mut end = prefix[n * m - 1].1;
    let mut chain = Vec::new();
    while let Some((i, j)) = end {
        chain.push((i, j));
        end = parent[i * m + j];
    }
    chain.reverse();
    chain
}

/// BLEU of concatenated translations against concatenated English sentences.
fn merged_bleu(
    translations: &[Vec<String>],
    en_sentences: &[Vec<String>],
    ja: std::ops::Range<usize>,
    en: std::ops::Range<usize>,
    order: usize,
) -> f64 {
    let cand: Vec<String> = translations[ja].iter().flatten().cloned().collect();
    let reference: Vec<String> = en_sentences[en].iter().flatten().cloned().collect();
    sentence_bleu(&cand, &reference, order, true)
}

/// Recursively place the best bead (up to `max_gap_merge` sentences per
/// side, merged BLEU strictly above the threshold) inside an anchor-free
/// region, then fill what remains on either side of it.
fn fill_gap(
    translations: &[Vec<String>],
    en_sentences: &[Vec<String>],
    ja: std::ops::Range<usize>,
    en: std::ops::Range<usize>,
    params: &MtParams,
    out: &mut Vec<AlignmentLink>,
) {
    if ja.is_empty() || en.is_empty() {
        return;
    }
    let g = params.max_gap_merge;
    let mut best: Option<(std::ops::Range<usize>, std::ops::Range<usize>, f64)> = None;
    for len_ja in 1..=g.min(ja.len()) {
        for len_en in 1..=g.min(en.len()) {
            for start_ja in ja.start..=ja.end - len_ja {
                for start_en in en.start..=en.end - len_en {
                    let score = merged_bleu(
                        translations,
                        en_sentences,
                        start_ja..start_ja + len_ja,
                        start_en..start_en + len_en,
                        params.bleu_order,
                    );
                    if score > params.anchor_threshold
                        && best.as_ref().is_none_or(|b| score > b.2)
                    {
                        best = Some((start_ja..start_ja + len_ja, start_en..start_en + len_en, score));
                    }
                }
            }
        }
    }
    let Some((bead_ja, bead_en, score)) = best else {
        return;
    };
    fill_gap(
        translations,
        en_sentences,
        ja.start..bead_ja.start,
        en.start..bead_en.start,
        params,
        out,
    );
    out.push(make_link(bead_ja.clone(), bead_en.clone(), score));
    fill_gap(
        translations,
        en_sentences,
        bead_ja.end..ja.end,
        bead_en.end..en.end,
        params,
        out,
    );
}

fn make_link(ja: std::ops::Range<usize>, en: std::ops::Range<usize>, score: f64) -> AlignmentLink {
    AlignmentLink::new(
        ja.map(|s| s as u32 + 1).collect(),
        en.map(|s| s as u32 + 1).collect(),
        score,
        AlignMethod::Mt,
    )
}
