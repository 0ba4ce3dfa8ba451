//! English sentence splitting and tokenization.
//!
//! The splitter follows the Moses split-sentences rules in simplified form:
//! split after a terminator (with any closing quotes/brackets attached) when
//! whitespace and a capitalized or numeric word follow, except after a
//! nonbreaking prefix ("FIG.", "No.", "U.S.", ...). Decimal points never
//! split because no whitespace follows them.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Words after which a period does not end a sentence.
#[derive(Debug, Clone, Default)]
pub struct NonbreakingPrefixes {
    set: BTreeSet<String>,
}

impl NonbreakingPrefixes {
    /// Parse prefix data: one prefix per line, "#" comments, blank lines
    /// ignored, trailing periods stripped.
    pub fn parse(text: &str) -> Self {
        let mut set = BTreeSet::new();
        for line in text.lines() {
            let entry = line.split('#').next().unwrap_or("").trim();
            let entry = entry.trim_end_matches('.');
            if !entry.is_empty() {
                set.insert(entry.to_owned());
            }
        }
        NonbreakingPrefixes { set }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text))
    }

    /// The built-in English list shipped with the crate.
    pub fn default_en() -> &'static NonbreakingPrefixes {
        static DEFAULT: OnceLock<NonbreakingPrefixes> = OnceLock::new();
        DEFAULT.get_or_init(|| {
            NonbreakingPrefixes::parse(include_str!("../../data/nonbreaking_prefixes.en"))
        })
    }

    pub fn contains(&self, word: &str) -> bool {
        self.set.contains(word)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | '”' | '’' | ')' | ']' | '}' | '»')
}

fn is_opening(c: char) -> bool {
    matches!(c, '"' | '\'' | '“' | '‘' | '(' | '[' | '{' | '«')
}

/// The maximal run of word-like characters (alphanumeric, '.', '-') ending
/// just before `end`; used to look up nonbreaking prefixes.
fn word_before(chars: &[char], end: usize) -> String {
    let mut start = end;
    while start > 0 {
        let c = chars[start - 1];
        if c.is_alphanumeric() || c == '.' || c == '-' {
            start -= 1;
        } else {
            break;
        }
    }
    chars[start..end].iter().collect()
}

/// Split an English paragraph into sentences.
///
/// A split happens after [.?!] plus any closing quotes/brackets, when
/// followed by whitespace and then (after optional opening punctuation) an
/// uppercase letter or digit — unless the word before a period is a
/// nonbreaking prefix. A paragraph without terminators is one sentence.
pub fn split_sentences_en(paragraph: &str, prefixes: &NonbreakingPrefixes) -> Vec<String> {
    let chars: Vec<char> = paragraph.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if !matches!(c, '.' | '?' | '!') {
            i += 1;
            continue;
        }
        // Attach closing quotes/brackets to the terminator.
        let mut end = i + 1;
        while end < chars.len() && is_closing(chars[end]) {
            end += 1;
        }
        // Require whitespace, then an optionally-quoted sentence opener.
        let mut next = end;
        while next < chars.len() && chars[next].is_whitespace() {
            next += 1;
        }
        let mut opener = next;
        while opener < chars.len() && is_opening(chars[opener]) {
            opener += 1;
        }
        let opens_sentence = next > end
            && opener < chars.len()
            && (chars[opener].is_uppercase() || chars[opener].is_ascii_digit());
        let blocked = c == '.' && prefixes.contains(word_before(&chars, i).as_str());
        if opens_sentence && !blocked {
            let sentence: String = chars[start..end].iter().collect();
            let sentence = sentence.trim();
            if !sentence.is_empty() {
                sentences.push(sentence.to_owned());
            }
            start = next;
            i = next;
        } else {
            i = end;
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

const DETACHED_PUNCT: [char; 8] = ['.', ',', ';', ':', '(', ')', '"', '\''];

/// Tokenize an English sentence: lowercase, split on whitespace, and detach
/// the punctuation characters `. , ; : ( ) " '` as separate tokens.
/// Hyphenated words stay whole.
pub fn tokenize_en(sentence: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in sentence.chars() {
        if c.is_whitespace() {
            if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        } else if DETACHED_PUNCT.contains(&c) {
            if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
            tokens.push(c.to_string());
        } else {
            current.extend(c.to_lowercase());
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}
