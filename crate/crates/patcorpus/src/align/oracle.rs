//! Exhaustive reference aligner for validating the dynamic program.

use std::ops::Range;

use super::{AlignMethod, AlignmentLink, Bead, DictParams};
use crate::error::{Error, Result};

const MAX_SENTENCES: usize = 8;

/// Enumerate every bead sequence that tiles an `n_ja` x `n_en` instance and
/// return the best total score with its links. `score` gives the similarity
/// of a substantive bead over 0-based sentence ranges; penalties from
/// `params` are applied exactly as in [`super::align_dict`]. Ties on the
/// total prefer more 1-1 beads, then the lexicographically smallest link
/// sequence. Instances beyond 8 sentences per side are refused.
pub fn brute_force_align(
    score: &dyn Fn(Range<usize>, Range<usize>) -> f64,
    n_ja: usize,
    n_en: usize,
    params: &DictParams,
) -> Result<(f64, Vec<AlignmentLink>)> {
    if n_ja > MAX_SENTENCES || n_en > MAX_SENTENCES {
        return Err(Error::SizeLimit { n_ja, n_en });
    }
    let mut search = Search {
        score,
        n_ja,
        n_en,
        params,
        stack: Vec::new(),
        best: None,
    };
    search.recurse(0, 0, 0.0);
    match search.best {
        Some(best) => Ok((best.total, best.links)),
        None => Ok((f64::NEG_INFINITY, Vec::new())),
    }
}

struct Candidate {
    total: f64,
    one_to_one: usize,
    key: Vec<(Vec<u32>, Vec<u32>)>,
    links: Vec<AlignmentLink>,
}

struct Search<'a> {
    score: &'a dyn Fn(Range<usize>, Range<usize>) -> f64,
    n_ja: usize,
    n_en: usize,
    params: &'a DictParams,
    /// Substantive beads on the current path: (bead, i, j, similarity).
    stack: Vec<(Bead, usize, usize, f64)>,
    best: Option<Candidate>,
}

impl Search<'_> {
    fn recurse(&mut self, i: usize, j: usize, total: f64) {
        if i == self.n_ja && j == self.n_en {
            self.consider(total);
            return;
        }
        for idx in 0..self.params.beads.len() {
            let bead = self.params.beads[idx];
            if i + bead.ja > self.n_ja || j + bead.en > self.n_en {
                continue;
            }
            let step = if bead.is_substantive() {
                let sim = (self.score)(i..i + bead.ja, j..j + bead.en);
                self.stack.push((bead, i, j, sim));
                let penalized = if bead.ja + bead.en > 2 {
                    sim - self.params.merge_penalty
                } else {
                    sim
                };
                self.recurse(i + bead.ja, j + bead.en, total + penalized);
                self.stack.pop();
                continue;
            } else {
                -self.params.skip_penalty
            };
            self.recurse(i + bead.ja, j + bead.en, total + step);
        }
    }

    fn consider(&mut self, total: f64) {
        let one_to_one = self
            .stack
            .iter()
            .filter(|(bead, ..)| bead.ja == 1 && bead.en == 1)
            .count();
        let improves = match &self.best {
            None => true,
            Some(best) => {
                if total != best.total {
                    total > best.total
                } else if one_to_one != best.one_to_one {
                    one_to_one > best.one_to_one
                } else {
                    // Lexicographic comparison needs the key; build lazily below.
                    self.candidate_key() < best.key
                }
            }
        };
        if improves {
            let key = self.candidate_key();
            let links = self
                .stack
                .iter()
                .map(|&(bead, i, j, sim)| {
                    AlignmentLink::new(
                        (i + 1..=i + bead.ja).map(|s| s as u32).collect(),
                        (j + 1..=j + bead.en).map(|s| s as u32).collect(),
                        sim,
                        AlignMethod::Dict,
                    )
                })
                .collect();
            self.best = Some(Candidate {
                total,
                one_to_one,
                key,
                links,
            });
        }
    }

    fn candidate_key(&self) -> Vec<(Vec<u32>, Vec<u32>)> {
        self.stack
            .iter()
            .map(|&(bead, i, j, _)| {
                (
                    (i + 1..=i + bead.ja).map(|s| s as u32).collect(),
                    (j + 1..=j + bead.en).map(|s| s as u32).collect(),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::dict::{align_dict_scored, span_similarity};
    use super::super::BilingualLexicon;
    use super::*;

    #[test]
    fn refuses_oversized_instances() {
        let score = |_: Range<usize>, _: Range<usize>| 0.0;
        let err = brute_force_align(&score, 9, 2, &DictParams::default()).unwrap_err();
        assert!(matches!(err, Error::SizeLimit { n_ja: 9, n_en: 2 }));
    }

    #[test]
    fn agrees_with_dynamic_program_on_small_instances() {
        let mut lexicon = BilingualLexicon::new();
        for (ja, en) in [("水", "water"), ("火", "fire"), ("土", "earth"), ("風", "wind")] {
            lexicon.insert(ja, en);
        }
        let toks = |s: &str| -> Vec<String> { s.split_whitespace().map(str::to_string).collect() };
        let cases: Vec<(Vec<Vec<String>>, Vec<Vec<String>>)> = vec![
            (
                vec![toks("水 火"), toks("土")],
                vec![toks("water"), toks("fire earth"), toks("wind")],
            ),
            (
                vec![toks("水"), toks("火"), toks("風")],
                vec![toks("water fire"), toks("wind")],
            ),
            (vec![toks("水")], vec![]),
        ];
        let params = DictParams::default();
        for (ja, en) in cases {
            let (dp_total, dp_links) = align_dict_scored(&ja, &en, &lexicon, &params);
            let score = |jr: Range<usize>, er: Range<usize>| span_similarity(&ja, &en, jr, er, &lexicon);
            let (bf_total, _) = brute_force_align(&score, ja.len(), en.len(), &params).unwrap();
            assert_eq!(dp_total, bf_total, "objectives diverge on {ja:?} / {en:?}");
            super::super::validate_links(&dp_links).unwrap();
        }
    }

    #[test]
    fn tie_prefers_more_one_to_one_beads() {
        // A 2-2 bead and two 1-1 beads tie at 1.0 total with zero penalties.
        let score = |jr: Range<usize>, er: Range<usize>| match (jr.start, jr.end, er.start, er.end) {
            (0, 1, 0, 1) | (1, 2, 1, 2) => 0.5,
            (0, 2, 0, 2) => 1.0,
            _ => 0.0,
        };
        let params = DictParams {
            beads: vec![Bead::new(1, 1), Bead::new(2, 2)],
            skip_penalty: 0.0,
            merge_penalty: 0.0,
        };
        let (total, links) = brute_force_align(&score, 2, 2, &params).unwrap();
        assert_eq!(total, 1.0);
        assert_eq!(links.len(), 2);
        assert_eq!(links[0].ja_sents, vec![1]);
    }

    #[test]
    fn tie_prefers_lexicographically_smallest_links() {
        // Skipping ja 2 or ja 1 gives the same total; the link on ja 1 wins.
        let score = |_: Range<usize>, _: Range<usize>| 0.5;
        let params = DictParams {
            beads: vec![Bead::new(1, 1), Bead::new(1, 0)],
            skip_penalty: 0.25,
            merge_penalty: 0.0,
        };
        let (total, links) = brute_force_align(&score, 2, 1, &params).unwrap();
        assert_eq!(total, 0.25);
        assert_eq!(links.len(), 1);
        assert_eq!(links[0].ja_sents, vec![1]);
        assert_eq!(links[0].en_sents, vec![1]);
    }

    #[test]
    fn uncoverable_instance_reports_no_sequence() {
        let score = |_: Range<usize>, _: Range<usize>| 1.0;
        let params = DictParams {
            beads: vec![Bead::new(1, 1)],
            ..DictParams::default()
        };
        let (total, links) = brute_force_align(&score, 2, 1, &params).unwrap();
        assert_eq!(total, f64::NEG_INFINITY);
        assert!(links.is_empty());
    }
}
