//! Domain types for parsed patent records.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Two-letter uppercase country/office code (e.g. "JP", "US", "WO").
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CountryCode(String);

impl CountryCode {
    pub fn new(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() == 2 && s.bytes().all(|b| b.is_ascii_uppercase()) {
            Ok(CountryCode(s.to_owned()))
        } else {
            Err(Error::malformed(format!("invalid country code {s:?}")))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for CountryCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for CountryCode {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        CountryCode::new(&s)
    }
}

impl From<CountryCode> for String {
    fn from(c: CountryCode) -> String {
        c.0
    }
}

/// A document-id as it appears in the sources: country, doc-number, and the
/// optional kind letter and date.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DocumentIdentifier {
    pub country: CountryCode,
    pub doc_number: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, with = "compact_date", skip_serializing_if = "Option::is_none")]
    pub date: Option<NaiveDate>,
}

impl DocumentIdentifier {
    pub fn new(country: &str, doc_number: &str) -> Result<Self> {
        Ok(DocumentIdentifier {
            country: CountryCode::new(country)?,
            doc_number: doc_number.trim().to_owned(),
            kind: None,
            date: None,
        })
    }

    pub fn with_kind(mut self, kind: &str) -> Self {
        self.kind = Some(kind.trim().to_owned());
        self
    }

    pub fn with_date(mut self, date: NaiveDate) -> Self {
        self.date = Some(date);
        self
    }
}

impl std::fmt::Display for DocumentIdentifier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.country, self.doc_number)?;
        if let Some(kind) = &self.kind {
            write!(f, ".{kind}")?;
        }
        Ok(())
    }
}

/// Serialize dates as compact YYYYMMDD strings, the form used in the sources.
mod compact_date {
    use chrono::NaiveDate;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(date: &Option<NaiveDate>, ser: S) -> Result<S::Ok, S::Error> {
        match date {
            Some(d) => d.format("%Y%m%d").to_string().serialize(ser),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<NaiveDate>, D::Error> {
        let s: Option<String> = Option::deserialize(de)?;
        match s {
            None => Ok(None),
            Some(s) => super::parse_compact_date(&s)
                .map(Some)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// Parse a YYYYMMDD date.
pub fn parse_compact_date(s: &str) -> Result<NaiveDate> {
    NaiveDate::parse_from_str(s.trim(), "%Y%m%d")
        .map_err(|_| Error::malformed(format!("invalid date {s:?}")))
}

/// JPO gazette type, from the kind-of-jp attribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GazetteKind {
    /// A: ordinary domestic application publication.
    PublishedApplication,
    /// T: Japanese translation of a PCT application filed abroad.
    PctTranslation,
    /// S: domestic re-publication of a PCT application filed at the JPO.
    PctDomesticRepublication,
}

impl GazetteKind {
    pub fn from_letter(s: &str) -> Result<Self> {
        match s.trim() {
            "A" => Ok(GazetteKind::PublishedApplication),
            "T" => Ok(GazetteKind::PctTranslation),
            "S" => Ok(GazetteKind::PctDomesticRepublication),
            other => Err(Error::UnknownKind(other.to_owned())),
        }
    }

    pub fn letter(self) -> char {
        match self {
            GazetteKind::PublishedApplication => 'A',
            GazetteKind::PctTranslation => 'T',
            GazetteKind::PctDomesticRepublication => 'S',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Office {
    Jpo,
    Uspto,
}

/// The text content of a document, split into its four parts.
/// Paragraphs hold extracted text only: no markup, no claim or paragraph
/// number markers, no math/figure/table content.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentParts {
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_paras: Vec<String>,
    pub description: Vec<String>,
    pub claims: Vec<String>,
}

/// One parsed JPO or USPTO publication record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatentDocument {
    pub office: Office,
    /// Present for JPO records only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gazette_kind: Option<GazetteKind>,
    pub publication: DocumentIdentifier,
    pub application: DocumentIdentifier,
    /// PCT application number (filing data), when the record names one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pct_filing: Option<DocumentIdentifier>,
    /// PCT publication number, when the record names one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pct_publication: Option<DocumentIdentifier>,
    pub ipc_codes: Vec<String>,
    pub parts: DocumentParts,
}

/// Priority-claim data extracted from one exchange-document record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriorityRecord {
    /// The exchange-document's own identifier.
    pub subject: DocumentIdentifier,
    /// Claimed priority documents, in source order.
    pub claims: Vec<DocumentIdentifier>,
    /// The record's application-reference, when present. Its kind letter
    /// distinguishes ordinary applications (A) from PCT applications (W).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub application: Option<DocumentIdentifier>,
}

impl PriorityRecord {
    /// Kind letter of the application-reference (A = ordinary, W = PCT).
    pub fn application_kind(&self) -> Option<&str> {
        self.application.as_ref()?.kind.as_deref()
    }
}

/// Check an IPC symbol: section letter A-H, 2-digit class, subclass letter,
/// optionally a group and "/"-separated subgroup (e.g. "G06F 17/30").
pub fn is_valid_ipc(s: &str) -> bool {
    let b = s.as_bytes();
    if b.len() < 4
        || !(b'A'..=b'H').contains(&b[0])
        || !b[1].is_ascii_digit()
        || !b[2].is_ascii_digit()
        || !b[3].is_ascii_uppercase()
    {
        return false;
    }
    let rest = s[4..].trim_start();
    if rest.is_empty() {
        return true;
    }
    let Some((group, subgroup)) = rest.split_once('/') else {
        return false;
    };
    !group.is_empty()
        && group.len() <= 4
        && group.bytes().all(|c| c.is_ascii_digit())
        && subgroup.len() >= 2
        && subgroup.bytes().all(|c| c.is_ascii_digit())
}

/// Normalize whitespace in an IPC symbol and validate it.
pub fn normalize_ipc(raw: &str) -> Option<String> {
    let collapsed = raw.split_whitespace().collect::<Vec<_>>().join(" ");
    is_valid_ipc(&collapsed).then_some(collapsed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn country_code_validation() {
        assert!(CountryCode::new("JP").is_ok());
        assert!(CountryCode::new(" US ").is_ok());
        assert!(CountryCode::new("jp").is_err());
        assert!(CountryCode::new("JPN").is_err());
        assert!(CountryCode::new("J").is_err());
    }

    #[test]
    fn gazette_kind_letters_round_trip() {
        for letter in ["A", "T", "S"] {
            let kind = GazetteKind::from_letter(letter).unwrap();
            assert_eq!(kind.letter().to_string(), letter);
        }
        assert!(matches!(
            GazetteKind::from_letter("Z"),
            Err(Error::UnknownKind(_))
        ));
    }

    #[test]
    fn compact_dates() {
        let d = parse_compact_date("20040210").unwrap();
        assert_eq!(d, NaiveDate::from_ymd_opt(2004, 2, 10).unwrap());
        assert!(parse_compact_date("20041340").is_err());
        assert!(parse_compact_date("2004-02-10").is_err());
    }

    #[test]
    fn identifier_json_round_trip() {
        let id = DocumentIdentifier::new("JP", "2005003817")
            .unwrap()
            .with_kind("A")
            .with_date(NaiveDate::from_ymd_opt(2005, 2, 10).unwrap());
        let json = serde_json::to_string(&id).unwrap();
        assert!(json.contains("\"20050210\""), "{json}");
        let back: DocumentIdentifier = serde_json::from_str(&json).unwrap();
        assert_eq!(back, id);
    }

    #[test]
    fn ipc_grammar() {
        assert!(is_valid_ipc("G06F"));
        assert!(is_valid_ipc("G06F 17/30"));
        assert!(is_valid_ipc("A61K 38/00"));
        assert!(!is_valid_ipc("I06F"));
        assert!(!is_valid_ipc("G6F"));
        assert!(!is_valid_ipc("G06f"));
        assert!(!is_valid_ipc("G06F 17"));
        assert!(!is_valid_ipc("G06F 17/3"));
        assert_eq!(normalize_ipc("G06F   17/30"), Some("G06F 17/30".into()));
        assert_eq!(normalize_ipc("bogus"), None);
    }
}
