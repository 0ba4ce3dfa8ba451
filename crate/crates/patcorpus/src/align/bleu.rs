//! Sentence-level BLEU for scoring candidate links against translations.

use std::collections::HashMap;

/// Sentence-level BLEU of `candidate` against a single `reference`, both
/// tokenized. Uses modified n-gram precisions up to `max_n`, a brevity
/// penalty of `exp(min(0, 1 - |ref|/|cand|))`, and — when `smooth` is set —
/// add-one smoothing on the numerator and denominator of every precision of
/// order 2 and above. Returns 0 when either side is empty or any precision
/// is zero.
pub fn sentence_bleu(candidate: &[String], reference: &[String], max_n: usize, smooth: bool) -> f64 {
    if candidate.is_empty() || reference.is_empty() || max_n == 0 {
        return 0.0;
    }
    let mut log_sum = 0.0;
    for n in 1..=max_n {
        let (matched, total) = clipped_matches(candidate, reference, n);
        let (num, den) = if smooth && n >= 2 {
            (matched + 1, total + 1)
        } else {
            (matched, total)
        };
        if num == 0 || den == 0 {
            return 0.0;
        }
        log_sum += (num as f64 / den as f64).ln();
    }
    let precision = (log_sum / max_n as f64).exp();
    let brevity = (1.0 - reference.len() as f64 / candidate.len() as f64).min(0.0).exp();
    precision * brevity
}

/// Count candidate n-grams matched in the reference, clipping each n-gram's
/// credit at its reference count. Returns (matched, total candidate n-grams).
fn clipped_matches(candidate: &[String], reference: &[String], n: usize) -> (usize, usize) {
    if candidate.len() < n {
        return (0, 0);
    }
    let mut ref_counts: HashMap<&[String], usize> = HashMap::new();
    for gram in reference.windows(n) {
        *ref_counts.entry(gram).or_insert(0) += 1;
    }
    let mut matched = 0;
    let mut total = 0;
    for gram in candidate.windows(n) {
        total += 1;
        if let Some(count) = ref_counts.get_mut(gram) {
            if *count > 0 {
                *count -= 1;
                matched += 1;
            }
        }
    }
    (matched, total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn identical_sentences_score_one() {
        let t = toks("the valve opens under pressure");
        assert!((sentence_bleu(&t, &t, 2, true) - 1.0).abs() < 1e-12);
        assert!((sentence_bleu(&t, &t, 4, true) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_sentences_score_zero() {
        let c = toks("a b c");
        let r = toks("x y z");
        assert_eq!(sentence_bleu(&c, &r, 2, true), 0.0);
    }

    #[test]
    fn one_substitution_worked_value() {
        // p1 = 2/3, smoothed p2 = (1+1)/(2+1) = 2/3, same length so BP = 1:
        // BLEU = sqrt(2/3 * 2/3) = 2/3.
        let c = toks("a b c");
        let r = toks("a b d");
        assert!((sentence_bleu(&c, &r, 2, true) - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_sides_score_zero() {
        let t = toks("a b");
        assert_eq!(sentence_bleu(&[], &t, 2, true), 0.0);
        assert_eq!(sentence_bleu(&t, &[], 2, true), 0.0);
        assert_eq!(sentence_bleu(&[], &[], 2, true), 0.0);
    }

    #[test]
    fn brevity_penalty_punishes_short_candidates() {
        let c = toks("a b");
        let r = toks("a b c d");
        // p1 = 1, p2 = (1+1)/(1+1) = 1, BP = exp(1 - 4/2) = exp(-1).
        assert!((sentence_bleu(&c, &r, 2, true) - (-1.0f64).exp()).abs() < 1e-12);
        // No penalty for long candidates beyond precision loss.
        let c2 = toks("a b c d e f");
        let got = sentence_bleu(&c2, &r, 1, false);
        assert!((got - 4.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn clipping_limits_repeated_ngrams() {
        let c = toks("a a a");
        let r = toks("a b");
        // Only one "a" in the reference: p1 = 1/3.
        let got = sentence_bleu(&c, &r, 1, false);
        assert!((got - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unsmoothed_zero_bigram_is_zero() {
        let c = toks("a c b");
        let r = toks("a b c");
        // Bigrams "a c" and "c b" miss; unsmoothed p2 = 0.
        assert_eq!(sentence_bleu(&c, &r, 2, false), 0.0);
        // Smoothed stays positive.
        assert!(sentence_bleu(&c, &r, 2, true) > 0.0);
    }

    #[test]
    fn single_token_candidate_with_smoothing() {
        let c = toks("a");
        let r = toks("a");
        // No bigrams on either side: smoothed p2 = 1/1.
        assert!((sentence_bleu(&c, &r, 2, true) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn renaming_vocabulary_preserves_score() {
        let c = toks("a b c a");
        let r = toks("a b d c");
        let before = sentence_bleu(&c, &r, 2, true);
        let map = |t: &str| t.replace('a', "q").replace('b', "r").replace('c', "s").replace('d', "t");
        let c2: Vec<String> = c.iter().map(|t| map(t)).collect();
        let r2: Vec<String> = r.iter().map(|t| map(t)).collect();
        let after = sentence_bleu(&c2, &r2, 2, true);
        assert_eq!(before, after);
    }
}
