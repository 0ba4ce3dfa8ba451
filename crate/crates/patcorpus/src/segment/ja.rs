//! Japanese sentence splitting and tokenization.

use crate::align::BilingualLexicon;

fn is_ja_terminator(c: char) -> bool {
    matches!(c, '。' | '｡' | '！' | '？' | '!' | '?')
}

fn is_ja_closing(c: char) -> bool {
    matches!(c, '」' | '』' | '）' | ')' | '〉' | '》' | '］' | ']' | '｝' | '}' | '”' | '’')
}

/// Split a Japanese paragraph into sentences after 。！？ (and their
/// half-width/ASCII variants), keeping the terminator. Closing brackets
/// like 」』） attach to the preceding sentence. Text without a terminator
/// is one sentence.
pub fn split_sentences_ja(paragraph: &str) -> Vec<String> {
    let chars: Vec<char> = paragraph.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        if is_ja_terminator(chars[i]) {
            let mut end = i + 1;
            while end < chars.len() && is_ja_closing(chars[end]) {
                end += 1;
            }
            let sentence: String = chars[start..end].iter().collect();
            let sentence = sentence.trim();
            if !sentence.is_empty() {
                sentences.push(sentence.to_owned());
            }
            start = end;
            i = end;
        } else {
            i += 1;
        }
    }
    if start < chars.len() {
        let tail: String = chars[start..].iter().collect();
        let tail = tail.trim();
        if !tail.is_empty() {
            sentences.push(tail.to_owned());
        }
    }
    sentences
}

/// Tokenize a Japanese sentence by greedy longest match against the
/// lexicon's Japanese headwords, scanning left to right. Spans with no
/// dictionary match fall back to one token per character, except contiguous
/// ASCII alphanumeric runs, which stay one token. Whitespace separates
/// tokens and is dropped.
pub fn tokenize_ja(sentence: &str, lexicon: &BilingualLexicon) -> Vec<String> {
    let chars: Vec<char> = sentence.chars().collect();
    let max_key = lexicon.max_ja_key_chars();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let window = (chars.len() - i).min(max_key);
        let mut matched = 0;
        for len in (1..=window).rev() {
            let candidate: String = chars[i..i + len].iter().collect();
            if lexicon.contains_ja(&candidate) {
                tokens.push(candidate);
                matched = len;
                break;
            }
        }
        if matched > 0 {
            i += matched;
        } else if c.is_ascii_alphanumeric() {
            let mut end = i + 1;
            while end < chars.len() && chars[end].is_ascii_alphanumeric() {
                end += 1;
            }
            tokens.push(chars[i..end].iter().collect());
            i = end;
        } else {
            tokens.push(c.to_string());
            i += 1;
        }
    }
    tokens
}
