//! Dictionary-based sentence alignment.

use std::borrow::Cow;
use std::ops::Range;

use super::lexicon::BilingualLexicon;
use super::{AlignMethod, AlignmentLink, Bead, DictParams};

/// Similarity of two token lists under a bilingual lexicon: tokens are
/// matched greedily one-to-one (each Japanese token, scanned left to right,
/// takes the earliest unmatched English token listed as its translation) and
/// the match count m is normalized to `2m / (|ja| + |en|)`. Returns 0 when
/// both lists are empty. English comparison is case-insensitive.
pub fn dict_similarity(ja_tokens: &[String], en_tokens: &[String], lexicon: &BilingualLexicon) -> f64 {
    let ja: Vec<Vec<String>> = vec![ja_tokens.to_vec()];
    let en: Vec<Vec<String>> = vec![en_tokens.to_vec()];
    span_similarity(&ja, &en, 0..1, 0..1, lexicon)
}

/// [`dict_similarity`] over concatenations of consecutive sentences,
/// without materializing the concatenated token lists. Both aligners and
/// the brute-force reference score beads through this one function so their
/// objectives agree bit for bit.
pub fn span_similarity(
    ja_sentences: &[Vec<String>],
    en_sentences: &[Vec<String>],
    ja_span: Range<usize>,
    en_span: Range<usize>,
    lexicon: &BilingualLexicon,
) -> f64 {
    let en_tokens: Vec<Cow<'_, str>> = en_sentences[en_span]
        .iter()
        .flatten()
        .map(|t| {
            if t.bytes().any(|b| b.is_ascii_uppercase()) {
                Cow::Owned(t.to_lowercase())
            } else {
                Cow::Borrowed(t.as_str())
            }
        })
        .collect();
    let mut used = vec![false; en_tokens.len()];
    let mut matched = 0usize;
    let mut ja_len = 0usize;
    for token in ja_sentences[ja_span].iter().flatten() {
        ja_len += 1;
        let Some(translations) = lexicon.translations(token) else {
            continue;
        };
        let hit = en_tokens
            .iter()
            .enumerate()
            .find(|(k, e)| !used[*k] && translations.contains(e.as_ref()));
        if let Some((k, _)) = hit {
            used[k] = true;
            matched += 1;
        }
    }
    let denom = ja_len + en_tokens.len();
    if denom == 0 {
        return 0.0;
    }
    2.0 * matched as f64 / denom as f64
}

/// Align tokenized Japanese and English sentences by dynamic programming
/// over bead sequences. A substantive k-l bead scores the dictionary
/// similarity of the concatenated sides, minus `merge_penalty` when k+l > 2;
/// skip beads score `-skip_penalty`. Returns the links of the
/// maximum-total-score bead sequence (skips omitted). With a bead set that
/// cannot tile the instance, no links are returned.
pub fn align_dict(
    ja_sentences: &[Vec<String>],
    en_sentences: &[Vec<String>],
    lexicon: &BilingualLexicon,
    params: &DictParams,
) -> Vec<AlignmentLink> {
    align_dict_scored(ja_sentences, en_sentences, lexicon, params).1
}

/// [`align_dict`] plus the objective value of the chosen bead sequence
/// (`NEG_INFINITY` when no bead sequence covers the instance).
pub fn align_dict_scored(
    ja_sentences: &[Vec<String>],
    en_sentences: &[Vec<String>],
    lexicon: &BilingualLexicon,
    params: &DictParams,
) -> (f64, Vec<AlignmentLink>) {
    let n = ja_sentences.len();
    let m = en_sentences.len();
    let width = m + 1;
    let idx = |i: usize, j: usize| i * width + j;

    let mut best = vec![f64::NEG_INFINITY; (n + 1) * width];
    let mut back: Vec<Option<Bead>> = vec![None; (n + 1) * width];
    best[idx(0, 0)] = 0.0;

    for i in 0..=n {
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            let mut cell = f64::NEG_INFINITY;
            let mut choice = None;
            for &bead in &params.beads {
                if bead.ja > i || bead.en > j {
                    continue;
                }
                let prev = best[idx(i - bead.ja, j - bead.en)];
                if prev == f64::NEG_INFINITY {
                    continue;
                }
                let total = prev + bead_score(ja_sentences, en_sentences, i, j, bead, lexicon, params);
                if total > cell {
                    cell = total;
                    choice = Some(bead);
                }
            }
            best[idx(i, j)] = cell;
            back[idx(i, j)] = choice;
        }
    }

    let total = best[idx(n, m)];
    if total == f64::NEG_INFINITY {
        return (total, Vec::new());
    }

    let mut links = Vec::new();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let bead = back[idx(i, j)].expect("reachable cell has a backpointer");
        if bead.is_substantive() {
            let sim = span_similarity(ja_sentences, en_sentences, i - bead.ja..i, j - bead.en..j, lexicon);
            links.push(AlignmentLink::new(
                (i - bead.ja + 1..=i).map(|s| s as u32).collect(),
                (j - bead.en + 1..=j).map(|s| s as u32).collect(),
                sim,
                AlignMethod::Dict,
            ));
        }
        i -= bead.ja;
        j -= bead.en;
    }
    links.reverse();
    (total, links)
}

/// Score of one bead whose spans end at prefix position (i, j).
fn bead_score(
    ja_sentences: &[Vec<String>],
    en_sentences: &[Vec<String>],
    i: usize,
    j: usize,
    bead: Bead,
    lexicon: &BilingualLexicon,
    params: &DictParams,
) -> f64 {
    if !bead.is_substantive() {
        return -params.skip_penalty;
    }
    let sim = span_similarity(ja_sentences, en_sentences, i - bead.ja..i, j - bead.en..j, lexicon);
    if bead.ja + bead.en > 2 {
        sim - params.merge_penalty
    } else {
        sim
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    fn lex(pairs: &[(&str, &str)]) -> BilingualLexicon {
        let mut lexicon = BilingualLexicon::new();
        for (ja, en) in pairs {
            lexicon.insert(ja, en);
        }
        lexicon
    }

    #[test]
    fn similarity_counts_one_to_one_matches() {
        let lexicon = lex(&[("弁", "valve"), ("開", "open")]);
        let ja = toks("弁 開");
        let en = toks("valve open");
        assert!((dict_similarity(&ja, &en, &lexicon) - 1.0).abs() < 1e-12);

        // Unmatched tokens dilute the score: 2*1/(2+2).
        let en2 = toks("valve closes");
        assert!((dict_similarity(&ja, &en2, &lexicon) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn similarity_empty_and_caseless() {
        let lexicon = lex(&[("弁", "valve")]);
        assert_eq!(dict_similarity(&[], &[], &lexicon), 0.0);
        assert_eq!(dict_similarity(&toks("弁"), &[], &lexicon), 0.0);
        let en = toks("VALVE");
        assert!((dict_similarity(&toks("弁"), &en, &lexicon) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn similarity_greedy_takes_earliest_unmatched() {
        // Both ja tokens translate to "x"; only one can claim it.
        let lexicon = lex(&[("一", "x"), ("二", "x"), ("二", "y")]);
        let ja = toks("一 二");
        let en = toks("x y");
        // 一 takes x, 二 falls through to y: m = 2.
        assert!((dict_similarity(&ja, &en, &lexicon) - 1.0).abs() < 1e-12);

        // Each en token is claimed once.
        let en_dup = toks("x x");
        let lexicon2 = lex(&[("一", "x"), ("二", "x")]);
        assert!((dict_similarity(&ja, &en_dup, &lexicon2) - 1.0).abs() < 1e-12);
        let ja_triple = toks("一 二 一");
        // Third token finds no unmatched x: 2*2/(3+2).
        assert!((dict_similarity(&ja_triple, &en_dup, &lexicon2) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn diagonal_instance_aligns_one_to_one() {
        let lexicon = lex(&[("犬", "dog"), ("猫", "cat"), ("鳥", "bird")]);
        let ja = vec![toks("犬 走"), toks("猫 寝"), toks("鳥 飛")];
        let en = vec![toks("the dog runs"), toks("the cat sleeps"), toks("the bird flies")];
        let links = align_dict(&ja, &en, &lexicon, &DictParams::default());
        assert_eq!(links.len(), 3);
        for (k, link) in links.iter().enumerate() {
            assert_eq!(link.ja_sents, vec![k as u32 + 1]);
            assert_eq!(link.en_sents, vec![k as u32 + 1]);
            assert_eq!(link.method, AlignMethod::Dict);
            assert!(link.score > 0.0);
        }
        super::super::validate_links(&links).unwrap();
    }

    #[test]
    fn split_japanese_merges_into_two_to_one() {
        // One English sentence carries both Japanese sentences' content.
        let lexicon = lex(&[("弁", "valve"), ("開", "opens"), ("閉", "closes")]);
        let ja = vec![toks("弁 開"), toks("弁 閉")];
        let en = vec![toks("the valve opens and closes")];
        let links = align_dict(&ja, &en, &lexicon, &DictParams::default());
        assert_eq!(links.len(), 1);
        assert_eq!(links[0].ja_sents, vec![1, 2]);
        assert_eq!(links[0].en_sents, vec![1]);
        // 2*3/(4+5) with the merge applied.
        assert!((links[0].score - 6.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn untranslated_extra_sentence_is_skipped() {
        let lexicon = lex(&[("犬", "dog"), ("猫", "cat")]);
        let ja = vec![toks("犬 走"), toks("図 面 参 照"), toks("猫 寝")];
        let en = vec![toks("the dog runs"), toks("the cat sleeps")];
        let links = align_dict(&ja, &en, &lexicon, &DictParams::default());
        assert_eq!(links.len(), 2);
        assert_eq!(links[0].ja_sents, vec![1]);
        assert_eq!(links[0].en_sents, vec![1]);
        assert_eq!(links[1].ja_sents, vec![3]);
        assert_eq!(links[1].en_sents, vec![2]);
    }

    #[test]
    fn restricted_beads_may_leave_instance_uncoverable() {
        let lexicon = lex(&[("犬", "dog")]);
        let ja = vec![toks("犬"), toks("犬")];
        let en = vec![toks("dog")];
        let params = DictParams {
            beads: vec![Bead::new(1, 1)],
            ..DictParams::default()
        };
        let (total, links) = align_dict_scored(&ja, &en, &lexicon, &params);
        assert_eq!(total, f64::NEG_INFINITY);
        assert!(links.is_empty());
    }

    #[test]
    fn objective_matches_manual_sum() {
        let lexicon = lex(&[("犬", "dog"), ("猫", "cat")]);
        let ja = vec![toks("犬"), toks("猫")];
        let en = vec![toks("dog"), toks("cat")];
        let (total, links) = align_dict_scored(&ja, &en, &lexicon, &DictParams::default());
        assert_eq!(links.len(), 2);
        assert!((total - 2.0).abs() < 1e-12);
    }

    #[test]
    fn empty_instances_align_trivially() {
        let lexicon = lex(&[]);
        let (total, links) = align_dict_scored(&[], &[], &lexicon, &DictParams::default());
        assert_eq!(total, 0.0);
        assert!(links.is_empty());

        let en = vec![toks("orphan")];
        let (total, links) = align_dict_scored(&[], &en, &lexicon, &DictParams::default());
        assert!((total + DictParams::default().skip_penalty).abs() < 1e-12);
        assert!(links.is_empty());
    }
}
