//! Bilingual dictionary: Japanese headword → set of English headwords.

use std::collections::{BTreeMap, BTreeSet};

/// In-memory bilingual dictionary. English lookups are case-insensitive
/// (entries are stored lowercased); Japanese keys are matched exactly.
#[derive(Debug, Clone, Default)]
pub struct BilingualLexicon {
    map: BTreeMap<String, BTreeSet<String>>,
    entry_count: usize,
    max_ja_chars: usize,
}

impl BilingualLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, ja: &str, en: &str) {
        let ja = ja.trim();
        let en = en.trim().to_lowercase();
        if ja.is_empty() || en.is_empty() {
            return;
        }
        self.max_ja_chars = self.max_ja_chars.max(ja.chars().count());
        self.map.entry(ja.to_owned()).or_default().insert(en);
        self.entry_count += 1;
    }

    pub fn contains_ja(&self, ja: &str) -> bool {
        self.map.contains_key(ja)
    }

    /// English translations of a Japanese headword (lowercased).
    pub fn translations(&self, ja: &str) -> Option<&BTreeSet<String>> {
        self.map.get(ja)
    }

    /// Whether (ja, en) is a dictionary pair; case-insensitive on `en`.
    pub fn is_translation(&self, ja: &str, en: &str) -> bool {
        self.map
            .get(ja)
            .is_some_and(|set| set.contains(&en.to_lowercase()))
    }

    /// Accepted entries, counting one per (ja, en) line inserted.
    pub fn entry_count(&self) -> usize {
        self.entry_count
    }

    /// Length in characters of the longest Japanese headword (0 if empty);
    /// bounds the longest-match window during tokenization.
    pub fn max_ja_key_chars(&self) -> usize {
        self.max_ja_chars
    }

    pub fn ja_keys(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
