//! Document pairing by patent family.
//!
//! JP and US publications are paired when they belong to the same patent
//! family, established two ways: priority claims from DOCDB (the Paris
//! routes jp-us, us-jp, and jp-x-us) and shared PCT application numbers
//! confirmed against DOCDB (the pct route). When several candidates compete
//! for the same Japanese document the oldest pair wins, because later
//! filings are usually amended versions of the first.

use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Warnings};
use crate::ingest::{CountryCode, DocumentIdentifier, GazetteKind, PatentDocument, PriorityRecord};

/// How a document pair was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RouteLabel {
    /// Filed in Japan first; the US application claims the JP priority.
    #[serde(rename = "jp-us")]
    JpUs,
    /// Both claim the same third-country priority.
    #[serde(rename = "jp-x-us")]
    JpXUs,
    /// Filed in the US first; the JP application claims the US priority.
    #[serde(rename = "us-jp")]
    UsJp,
    /// Same PCT international application.
    #[serde(rename = "pct")]
    Pct,
}

impl RouteLabel {
    pub const ALL: [RouteLabel; 4] = [
        RouteLabel::JpUs,
        RouteLabel::JpXUs,
        RouteLabel::UsJp,
        RouteLabel::Pct,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RouteLabel::JpUs => "jp-us",
            RouteLabel::JpXUs => "jp-x-us",
            RouteLabel::UsJp => "us-jp",
            RouteLabel::Pct => "pct",
        }
    }

    /// Which label wins when the same pair of documents matches several
    /// routes: direct priority claims beat shared-third-country claims,
    /// which beat PCT confirmation.
    fn precedence(self) -> u8 {
        match self {
            RouteLabel::JpUs => 0,
            RouteLabel::UsJp => 1,
            RouteLabel::JpXUs => 2,
            RouteLabel::Pct => 3,
        }
    }
}

impl std::str::FromStr for RouteLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jp-us" => Ok(RouteLabel::JpUs),
            "jp-x-us" => Ok(RouteLabel::JpXUs),
            "us-jp" => Ok(RouteLabel::UsJp),
            "pct" => Ok(RouteLabel::Pct),
            other => Err(Error::InvalidParam(format!("unknown route {other:?}"))),
        }
    }
}

impl std::fmt::Display for RouteLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One aligned JP/US document pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentPair {
    /// "JP<jp publication number>-US<us publication number>"; unique per run.
    pub pair_id: String,
    /// Positions in the input document slices.
    pub jp_index: usize,
    pub us_index: usize,
    pub jp_publication: DocumentIdentifier,
    pub us_publication: DocumentIdentifier,
    pub route: RouteLabel,
    /// The priority or PCT application that justified the match.
    pub anchor: DocumentIdentifier,
    /// Earliest application date of the two documents, for oldest-pair
    /// selection. Missing dates sort last.
    pub min_application_date: Option<NaiveDate>,
    pub min_publication_date: Option<NaiveDate>,
}

impl DocumentPair {
    pub fn new(
        route: RouteLabel,
        anchor: DocumentIdentifier,
        jp_index: usize,
        jp: &PatentDocument,
        us_index: usize,
        us: &PatentDocument,
    ) -> Self {
        let pair_id = format!(
            "JP{}-US{}",
            jp.publication.doc_number, us.publication.doc_number
        );
        DocumentPair {
            pair_id,
            jp_index,
            us_index,
            jp_publication: jp.publication.clone(),
            us_publication: us.publication.clone(),
            route,
            anchor,
            min_application_date: [jp.application.date, us.application.date]
                .into_iter()
                .flatten()
                .min(),
            min_publication_date: [jp.publication.date, us.publication.date]
                .into_iter()
                .flatten()
                .min(),
        }
    }

    /// Total order for oldest-pair selection: earliest application date,
    /// then earliest publication date, then pair_id. Absent dates sort last.
    pub fn age_key(&self) -> (NaiveDate, NaiveDate, &str) {
        (
            self.min_application_date.unwrap_or(NaiveDate::MAX),
            self.min_publication_date.unwrap_or(NaiveDate::MAX),
            self.pair_id.as_str(),
        )
    }
}

/// Normalize a doc-number for matching: keep only alphanumerics, uppercase,
/// and strip leading zeros (offices differ in padding and separators).
pub fn normalize_doc_number(s: &str) -> String {
    let alnum: String = s
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_uppercase())
        .collect();
    let stripped = alnum.trim_start_matches('0');
    if stripped.is_empty() && !alnum.is_empty() {
        "0".to_owned()
    } else {
        stripped.to_owned()
    }
}

/// Canonical PCT application key: receiving-office country, 4-digit filing
/// year, and 6-digit serial, printed like "JP2005003817".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PctKey {
    pub country: CountryCode,
    pub year: u16,
    pub serial: u32,
}

impl std::fmt::Display for PctKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:04}{:06}", self.country, self.year, self.serial)
    }
}

/// Parse a PCT application number into its canonical key.
///
/// Accepted shapes (after dropping separators and an optional leading "PCT"
/// or "WO" marker): a two-letter receiving-office code anywhere among the
/// digits ("PCT/JP2005/003817", "WO2005JP003817"), or digits only, in which
/// case `country_hint` supplies the office. The year is the leading 4
/// digits when they form a plausible year, otherwise a 2-digit year
/// (78-99 → 19xx, else 20xx). The serial is the remaining 1-6 digits.
pub fn pct_key(country_hint: Option<&str>, raw: &str) -> Result<PctKey> {
    let fail = || Error::UnparseablePctNumber(raw.to_owned());
    let cleaned: String = raw
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_uppercase())
        .collect();
    let body = cleaned
        .strip_prefix("PCT")
        .or_else(|| cleaned.strip_prefix("WO"))
        .unwrap_or(&cleaned);

    let mut digits = String::new();
    let mut alpha_runs: Vec<String> = Vec::new();
    let mut current_alpha = String::new();
    for c in body.chars() {
        if c.is_ascii_digit() {
            if !current_alpha.is_empty() {
                alpha_runs.push(std::mem::take(&mut current_alpha));
            }
            digits.push(c);
        } else {
            current_alpha.push(c);
        }
    }
    if !current_alpha.is_empty() {
        alpha_runs.push(current_alpha);
    }

    let country = match alpha_runs.len() {
        0 => CountryCode::new(country_hint.ok_or_else(fail)?).map_err(|_| fail())?,
        1 => CountryCode::new(&alpha_runs[0]).map_err(|_| fail())?,
        _ => return Err(fail()),
    };

    let (year, serial_digits) = if digits.len() >= 6 && plausible_year(&digits[..4]) {
        (digits[..4].parse::<u16>().unwrap(), &digits[4..])
    } else if digits.len() >= 3 {
        let yy: u16 = digits[..2].parse().map_err(|_| fail())?;
        let year = if yy >= 78 { 1900 + yy } else { 2000 + yy };
        (year, &digits[2..])
    } else {
        return Err(fail());
    };
    if serial_digits.is_empty() || serial_digits.len() > 6 {
        return Err(fail());
    }
    let serial: u32 = serial_digits.parse().map_err(|_| fail())?;
    Ok(PctKey {
        country,
        year,
        serial,
    })
}

fn plausible_year(s: &str) -> bool {
    s.parse::<u16>()
        .is_ok_and(|y| (1900..=2099).contains(&y))
}

/// Matching key for document identifiers: country plus normalized number.
fn id_key(id: &DocumentIdentifier) -> (String, String) {
    (
        id.country.as_str().to_owned(),
        normalize_doc_number(&id.doc_number),
    )
}

/// One priority-claim edge: a subject publication claiming a priority.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimEdge {
    pub subject: DocumentIdentifier,
    pub claim: DocumentIdentifier,
}

/// Bidirectional priority-claim index over DOCDB records.
#[derive(Debug, Default)]
pub struct PriorityIndex {
    claim_to_subjects: BTreeMap<(String, String), Vec<ClaimEdge>>,
    subject_to_claims: BTreeMap<(String, String), Vec<DocumentIdentifier>>,
}

impl PriorityIndex {
    /// Subjects claiming priority on the given document.
    pub fn subjects_claiming(&self, id: &DocumentIdentifier) -> &[ClaimEdge] {
        self.claim_to_subjects
            .get(&id_key(id))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Priority claims made by the given subject.
    pub fn claims_of(&self, id: &DocumentIdentifier) -> &[DocumentIdentifier] {
        self.subject_to_claims
            .get(&id_key(id))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn claim_entries(&self) -> impl Iterator<Item = (&(String, String), &Vec<ClaimEdge>)> {
        self.claim_to_subjects.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.claim_to_subjects.is_empty() && self.subject_to_claims.is_empty()
    }
}

/// Build the priority index. A subject appearing in several records with
/// different claims lists is a data conflict: the last record wins and a
/// warning is recorded.
pub fn build_priority_index(records: &[PriorityRecord], warnings: &mut Warnings) -> PriorityIndex {
    let mut by_subject: BTreeMap<(String, String), &PriorityRecord> = BTreeMap::new();
    for rec in records {
        let key = id_key(&rec.subject);
        if let Some(prev) = by_subject.get(&key) {
            if prev.claims != rec.claims {
                warnings.push(format!(
                    "duplicate subject {} with conflicting claims; keeping the last record",
                    rec.subject
                ));
            }
        }
        by_subject.insert(key, rec);
    }

    let mut index = PriorityIndex::default();
    for (key, rec) in by_subject {
        for claim in &rec.claims {
            index
                .claim_to_subjects
                .entry(id_key(claim))
                .or_default()
                .push(ClaimEdge {
                    subject: rec.subject.clone(),
                    claim: claim.clone(),
                });
        }
        index.subject_to_claims.insert(key, rec.claims.clone());
    }
    index
}

/// The set of PCT application keys whose DOCDB application-reference has
/// kind W. Unparseable numbers are skipped with a warning.
pub fn docdb_pct_keys(records: &[PriorityRecord], warnings: &mut Warnings) -> BTreeSet<PctKey> {
    let mut keys = BTreeSet::new();
    for rec in records {
        if rec.application_kind() != Some("W") {
            continue;
        }
        let app = rec.application.as_ref().expect("kind implies application");
        let hint = Some(app.country.as_str()).filter(|&c| c != "WO");
        match pct_key(hint, &app.doc_number) {
            Ok(key) => {
                keys.insert(key);
            }
            Err(e) => warnings.push(format!("docdb application for {}: {e}", rec.subject)),
        }
    }
    keys
}

fn index_docs<'a>(
    docs: impl Iterator<Item = (usize, &'a PatentDocument)>,
    field: impl Fn(&PatentDocument) -> &DocumentIdentifier,
) -> BTreeMap<(String, String), Vec<usize>> {
    let mut map: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
    for (i, doc) in docs {
        map.entry(id_key(field(doc))).or_default().push(i);
    }
    map
}

/// Emit Paris-route pairs (jp-us, us-jp, jp-x-us) from the priority index.
/// Only gazette-kind-A Japanese documents participate; each contributes at
/// most one pair per route (the oldest).
pub fn pair_paris(
    jp_docs: &[PatentDocument],
    us_docs: &[PatentDocument],
    index: &PriorityIndex,
    warnings: &mut Warnings,
) -> Vec<DocumentPair> {
    let jp_a = || {
        jp_docs
            .iter()
            .enumerate()
            .filter(|(_, d)| d.gazette_kind == Some(GazetteKind::PublishedApplication))
    };
    let jp_by_app = index_docs(jp_a(), |d| &d.application);
    let jp_by_pub = index_docs(jp_a(), |d| &d.publication);
    let us_by_app = index_docs(us_docs.iter().enumerate(), |d| &d.application);
    let us_by_pub = index_docs(us_docs.iter().enumerate(), |d| &d.publication);

    let mut candidates = Vec::new();
    let push_all = |route: RouteLabel,
                        anchor: &DocumentIdentifier,
                        jp_indices: &[usize],
                        us_indices: &[usize],
                        out: &mut Vec<DocumentPair>| {
        for &ji in jp_indices {
            for &ui in us_indices {
                out.push(DocumentPair::new(
                    route,
                    anchor.clone(),
                    ji,
                    &jp_docs[ji],
                    ui,
                    &us_docs[ui],
                ));
            }
        }
    };

    for (claim_key, edges) in index.claim_entries() {
        for edge in edges {
            let subject_country = edge.subject.country.as_str();
            let claim_country = edge.claim.country.as_str();
            let claim_kind_a = edge.claim.kind.as_deref() == Some("A");
            if subject_country == "US" && claim_country == "JP" && claim_kind_a {
                if let (Some(jps), Some(uss)) =
                    (jp_by_app.get(claim_key), us_by_pub.get(&id_key(&edge.subject)))
                {
                    push_all(RouteLabel::JpUs, &edge.claim, jps, uss, &mut candidates);
                }
            }
            if subject_country == "JP" && claim_country == "US" && claim_kind_a {
                if let (Some(jps), Some(uss)) =
                    (jp_by_pub.get(&id_key(&edge.subject)), us_by_app.get(claim_key))
                {
                    push_all(RouteLabel::UsJp, &edge.claim, jps, uss, &mut candidates);
                }
            }
        }
        // Shared third-country priority: a JP subject and a US subject both
        // claiming this document.
        if claim_key.0 != "JP" && claim_key.0 != "US" {
            for jp_edge in edges.iter().filter(|e| e.subject.country.as_str() == "JP") {
                let Some(jps) = jp_by_pub.get(&id_key(&jp_edge.subject)) else {
                    continue;
                };
                for us_edge in edges.iter().filter(|e| e.subject.country.as_str() == "US") {
                    let Some(uss) = us_by_pub.get(&id_key(&us_edge.subject)) else {
                        continue;
                    };
                    push_all(RouteLabel::JpXUs, &jp_edge.claim, jps, uss, &mut candidates);
                }
            }
        }
    }

    keep_oldest_per_jp_doc(candidates, warnings)
}

/// Emit PCT-route pairs: JP gazette kinds S/T with a WO filing number, US
/// documents with a PCT filing number, matched by canonical key, confirmed
/// against the DOCDB W-kind application set.
pub fn pair_pct(
    jp_docs: &[PatentDocument],
    us_docs: &[PatentDocument],
    docdb_applications: &BTreeSet<PctKey>,
    warnings: &mut Warnings,
) -> Vec<DocumentPair> {
    let mut jp_by_key: BTreeMap<PctKey, Vec<usize>> = BTreeMap::new();
    for (i, doc) in jp_docs.iter().enumerate() {
        let kind = match doc.gazette_kind {
            Some(GazetteKind::PctTranslation) | Some(GazetteKind::PctDomesticRepublication) => {
                doc.gazette_kind.unwrap()
            }
            _ => continue,
        };
        let Some(filing) = &doc.pct_filing else {
            continue;
        };
        if !filing.doc_number.to_ascii_uppercase().starts_with("WO") {
            continue;
        }
        // Domestic re-publications were received by the JPO, so JP is the
        // right office when the number itself does not name one.
        let hint = (kind == GazetteKind::PctDomesticRepublication).then_some("JP");
        match pct_key(hint, &filing.doc_number) {
            Ok(key) => jp_by_key.entry(key).or_default().push(i),
            Err(e) => warnings.push(format!("jp {}: {e}", doc.publication)),
        }
    }

    let mut us_by_key: BTreeMap<PctKey, Vec<usize>> = BTreeMap::new();
    for (i, doc) in us_docs.iter().enumerate() {
        let Some(filing) = &doc.pct_filing else {
            continue;
        };
        if !filing.doc_number.to_ascii_uppercase().starts_with("PCT") {
            continue;
        }
        match pct_key(None, &filing.doc_number) {
            Ok(key) => us_by_key.entry(key).or_default().push(i),
            Err(e) => warnings.push(format!("us {}: {e}", doc.publication)),
        }
    }

    let mut candidates = Vec::new();
    for (key, jps) in &jp_by_key {
        if !docdb_applications.contains(key) {
            continue;
        }
        let Some(uss) = us_by_key.get(key) else {
            continue;
        };
        let anchor = DocumentIdentifier {
            country: key.country.clone(),
            doc_number: format!("{:04}{:06}", key.year, key.serial),
            kind: None,
            date: None,
        };
        for &ji in jps {
            for &ui in uss {
                candidates.push(DocumentPair::new(
                    RouteLabel::Pct,
                    anchor.clone(),
                    ji,
                    &jp_docs[ji],
                    ui,
                    &us_docs[ui],
                ));
            }
        }
    }

    keep_oldest_per_jp_doc(candidates, warnings)
}

/// The oldest pair under the stated total order: earliest application date,
/// then earliest publication date, then lexicographic pair_id.
pub fn select_oldest_pair(candidates: &[DocumentPair]) -> Option<&DocumentPair> {
    candidates.iter().min_by(|a, b| a.age_key().cmp(&b.age_key()))
}

/// Collapse candidates so each JP document keeps one pair per route (the
/// oldest); discarded alternatives are logged. Output is sorted by pair_id.
fn keep_oldest_per_jp_doc(
    mut candidates: Vec<DocumentPair>,
    warnings: &mut Warnings,
) -> Vec<DocumentPair> {
    candidates.sort_by(|a, b| {
        (a.jp_index, a.route)
            .cmp(&(b.jp_index, b.route))
            .then_with(|| a.age_key().cmp(&b.age_key()))
            .then_with(|| {
                (a.anchor.country.as_str(), &a.anchor.doc_number, a.us_index).cmp(&(
                    b.anchor.country.as_str(),
                    &b.anchor.doc_number,
                    b.us_index,
                ))
            })
    });
    candidates.dedup_by(|dropped, kept| {
        let same_slot = dropped.jp_index == kept.jp_index && dropped.route == kept.route;
        if same_slot && dropped.pair_id != kept.pair_id {
            warnings.push(format!(
                "route {}: keeping {} over younger candidate {}",
                kept.route, kept.pair_id, dropped.pair_id
            ));
        }
        same_slot
    });
    candidates.sort_by(|a, b| a.pair_id.cmp(&b.pair_id));
    candidates
}

/// Run both pairing passes and resolve pair_id collisions across routes by
/// route precedence. Output is sorted by pair_id and unique by pair_id.
pub fn pair_documents(
    jp_docs: &[PatentDocument],
    us_docs: &[PatentDocument],
    priority_records: &[PriorityRecord],
) -> (Vec<DocumentPair>, Warnings) {
    let mut warnings = Warnings::default();
    let index = build_priority_index(priority_records, &mut warnings);
    let pct_keys = docdb_pct_keys(priority_records, &mut warnings);

    let mut pairs = pair_paris(jp_docs, us_docs, &index, &mut warnings);
    pairs.extend(pair_pct(jp_docs, us_docs, &pct_keys, &mut warnings));

    pairs.sort_by(|a, b| {
        (a.pair_id.as_str(), a.route.precedence()).cmp(&(b.pair_id.as_str(), b.route.precedence()))
    });
    pairs.dedup_by(|dropped, kept| {
        if dropped.pair_id == kept.pair_id {
            warnings.push(format!(
                "pair {} matched by both {} and {}; keeping {}",
                kept.pair_id, kept.route, dropped.route, kept.route
            ));
            true
        } else {
            false
        }
    });
    (pairs, warnings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{DocumentParts, Office};

    fn date(s: &str) -> NaiveDate {
        crate::ingest::parse_compact_date(s).unwrap()
    }

    fn jp_doc(kind: GazetteKind, pub_num: &str, app_num: &str, app_date: &str) -> PatentDocument {
        PatentDocument {
            office: Office::Jpo,
            gazette_kind: Some(kind),
            publication: DocumentIdentifier::new("JP", pub_num)
                .unwrap()
                .with_kind(&kind.letter().to_string())
                .with_date(date("20210107")),
            application: DocumentIdentifier::new("JP", app_num)
                .unwrap()
                .with_date(date(app_date)),
            pct_filing: None,
            pct_publication: None,
            ipc_codes: vec![],
            parts: DocumentParts::default(),
        }
    }

    fn us_doc(pub_num: &str, app_num: &str, app_date: &str) -> PatentDocument {
        PatentDocument {
            office: Office::Uspto,
            gazette_kind: None,
            publication: DocumentIdentifier::new("US", pub_num)
                .unwrap()
                .with_kind("A1")
                .with_date(date("20210513")),
            application: DocumentIdentifier::new("US", app_num)
                .unwrap()
                .with_date(date(app_date)),
            pct_filing: None,
            pct_publication: None,
            ipc_codes: vec![],
            parts: DocumentParts::default(),
        }
    }

    fn claim(country: &str, num: &str, kind: &str) -> DocumentIdentifier {
        DocumentIdentifier::new(country, num).unwrap().with_kind(kind)
    }

    fn record(subject: DocumentIdentifier, claims: Vec<DocumentIdentifier>) -> PriorityRecord {
        PriorityRecord {
            subject,
            claims,
            application: None,
        }
    }

    #[test]
    fn doc_number_normalization() {
        assert_eq!(normalize_doc_number("2005-003817"), "2005003817");
        assert_eq!(normalize_doc_number("0001234"), "1234");
        assert_eq!(normalize_doc_number("wo2005jp003817"), "WO2005JP003817");
        assert_eq!(normalize_doc_number("000"), "0");
        assert_eq!(normalize_doc_number(""), "");
    }

    #[test]
    fn pct_key_accepts_all_forms() {
        let expected = PctKey {
            country: CountryCode::new("JP").unwrap(),
            year: 2005,
            serial: 3817,
        };
        assert_eq!(pct_key(None, "PCT/JP2005/003817").unwrap(), expected);
        assert_eq!(pct_key(None, "WO2005JP003817").unwrap(), expected);
        assert_eq!(pct_key(Some("JP"), "WO2005003817").unwrap(), expected);
        assert_eq!(pct_key(Some("JP"), "2005003817").unwrap(), expected);
        assert_eq!(expected.to_string(), "JP2005003817");
    }

    #[test]
    fn pct_key_two_digit_years() {
        let key = pct_key(None, "PCT/JP99/01234").unwrap();
        assert_eq!((key.year, key.serial), (1999, 1234));
        let key = pct_key(None, "PCT/JP05/001234").unwrap();
        assert_eq!((key.year, key.serial), (2005, 1234));
    }

    #[test]
    fn pct_key_rejects_garbage() {
        assert!(matches!(
            pct_key(None, "WO2005003817"),
            Err(Error::UnparseablePctNumber(_))
        ));
        assert!(pct_key(None, "PCT/JPX2005/003817").is_err());
        assert!(pct_key(Some("JP"), "20050038171234567").is_err());
        assert!(pct_key(Some("JP"), "").is_err());
    }

    #[test]
    fn priority_index_is_a_multimap() {
        let mut warnings = Warnings::default();
        let cn = claim("CN", "555", "A");
        let records = vec![
            record(claim("JP", "1", "A"), vec![cn.clone()]),
            record(claim("US", "2", "A1"), vec![cn.clone()]),
        ];
        let index = build_priority_index(&records, &mut warnings);
        assert_eq!(index.subjects_claiming(&cn).len(), 2);
        assert_eq!(index.claims_of(&claim("JP", "1", "A")).len(), 1);
        assert!(warnings.is_empty());

        let empty = build_priority_index(&[], &mut warnings);
        assert!(empty.is_empty());
    }

    #[test]
    fn duplicate_subject_last_wins_with_warning() {
        let mut warnings = Warnings::default();
        let subject = claim("US", "7", "A1");
        let records = vec![
            record(subject.clone(), vec![claim("JP", "1", "A")]),
            record(subject.clone(), vec![claim("JP", "2", "A")]),
        ];
        let index = build_priority_index(&records, &mut warnings);
        assert_eq!(warnings.count(), 1);
        let claims = index.claims_of(&subject);
        assert_eq!(claims.len(), 1);
        assert_eq!(claims[0].doc_number, "2");
        assert!(index.subjects_claiming(&claim("JP", "1", "A")).is_empty());
    }

    #[test]
    fn jp_us_route_via_priority_claim() {
        let jp = vec![jp_doc(
            GazetteKind::PublishedApplication,
            "2021000998",
            "2019120778",
            "20190628",
        )];
        let us = vec![us_doc("20210139186", "16959217", "20200630")];
        let records = vec![record(
            claim("US", "20210139186", "A1"),
            vec![claim("JP", "2019120778", "A")],
        )];
        let (pairs, _) = pair_documents(&jp, &us, &records);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].pair_id, "JP2021000998-US20210139186");
        assert_eq!(pairs[0].route, RouteLabel::JpUs);
        assert_eq!(pairs[0].anchor.doc_number, "2019120778");
    }

    #[test]
    fn us_jp_route_requires_kind_a() {
        let jp = vec![jp_doc(
            GazetteKind::PublishedApplication,
            "2021000998",
            "2019120778",
            "20190628",
        )];
        let us = vec![us_doc("20210139186", "16959217", "20200630")];
        let good = vec![record(
            claim("JP", "2021000998", "A"),
            vec![claim("US", "16959217", "A")],
        )];
        let (pairs, _) = pair_documents(&jp, &us, &good);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].route, RouteLabel::UsJp);

        let decoy = vec![record(
            claim("JP", "2021000998", "A"),
            vec![claim("US", "16959217", "W")],
        )];
        let (pairs, _) = pair_documents(&jp, &us, &decoy);
        assert!(pairs.is_empty());
    }

    #[test]
    fn jp_x_us_route_shares_third_country_priority() {
        let jp = vec![jp_doc(
            GazetteKind::PublishedApplication,
            "2021000998",
            "2019120778",
            "20190628",
        )];
        let us = vec![us_doc("20210139186", "16959217", "20200630")];
        let shared = claim("CN", "201910555", "A");
        let records = vec![
            record(claim("JP", "2021000998", "A"), vec![shared.clone()]),
            record(claim("US", "20210139186", "A1"), vec![shared.clone()]),
        ];
        let (pairs, _) = pair_documents(&jp, &us, &records);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].route, RouteLabel::JpXUs);
        assert_eq!(pairs[0].anchor, shared);
    }

    #[test]
    fn no_shared_priorities_no_pairs() {
        let jp = vec![jp_doc(
            GazetteKind::PublishedApplication,
            "2021000998",
            "2019120778",
            "20190628",
        )];
        let us = vec![us_doc("20210139186", "16959217", "20200630")];
        let (pairs, _) = pair_documents(&jp, &us, &[]);
        assert!(pairs.is_empty());
    }

    fn pct_fixture() -> (Vec<PatentDocument>, Vec<PatentDocument>, Vec<PriorityRecord>) {
        let mut jp = jp_doc(GazetteKind::PctTranslation, "2005529932", "2005003817", "20050210");
        jp.pct_filing = Some(claim("WO", "WO2005JP003817", ""));
        jp.pct_publication = Some(claim("WO", "WO2005075938", ""));
        let mut us = us_doc("20210139186", "10587758", "20050210");
        us.pct_filing = Some(claim("WO", "PCT/JP2005/003817", ""));
        let docdb = vec![PriorityRecord {
            subject: claim("WO", "2005075938", "A1"),
            claims: vec![],
            application: Some(claim("WO", "JP2005003817", "W")),
        }];
        (vec![jp], vec![us], docdb)
    }

    #[test]
    fn pct_route_with_docdb_confirmation() {
        let (jp, us, docdb) = pct_fixture();
        let (pairs, warnings) = pair_documents(&jp, &us, &docdb);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].route, RouteLabel::Pct);
        assert_eq!(pairs[0].anchor.country.as_str(), "JP");
        assert_eq!(pairs[0].anchor.doc_number, "2005003817");
        assert_eq!(warnings.count(), 0);
    }

    #[test]
    fn pct_route_requires_docdb_key() {
        let (jp, us, _) = pct_fixture();
        let (pairs, _) = pair_documents(&jp, &us, &[]);
        assert!(pairs.is_empty());
    }

    #[test]
    fn pct_route_ignores_kind_a_documents() {
        let (mut jp, us, docdb) = pct_fixture();
        jp[0].gazette_kind = Some(GazetteKind::PublishedApplication);
        let mut warnings = Warnings::default();
        let keys = docdb_pct_keys(&docdb, &mut warnings);
        let pairs = pair_pct(&jp, &us, &keys, &mut warnings);
        assert!(pairs.is_empty());
    }

    #[test]
    fn oldest_pair_prefers_earliest_application_date() {
        let jp_old = jp_doc(GazetteKind::PublishedApplication, "1", "10", "20040101");
        let jp_new = jp_doc(GazetteKind::PublishedApplication, "2", "20", "20050101");
        let us = us_doc("100", "1000", "20060101");
        let anchor = claim("JP", "10", "A");
        let a = DocumentPair::new(RouteLabel::JpUs, anchor.clone(), 0, &jp_old, 0, &us);
        let b = DocumentPair::new(RouteLabel::JpUs, anchor.clone(), 1, &jp_new, 0, &us);
        assert_eq!(select_oldest_pair(&[b.clone(), a.clone()]), Some(&a));
        assert_eq!(select_oldest_pair(&[a.clone()]), Some(&a));
    }

    #[test]
    fn oldest_pair_lexicographic_tiebreak() {
        let jp = jp_doc(GazetteKind::PublishedApplication, "A", "10", "20040101");
        let us_b = us_doc("B", "1000", "20040101");
        let us_c = us_doc("C", "1001", "20040101");
        let anchor = claim("JP", "10", "A");
        let mut b = DocumentPair::new(RouteLabel::JpUs, anchor.clone(), 0, &jp, 0, &us_b);
        let mut c = DocumentPair::new(RouteLabel::JpUs, anchor.clone(), 0, &jp, 1, &us_c);
        b.us_publication.date = None;
        c.us_publication.date = None;
        b.min_publication_date = None;
        c.min_publication_date = None;
        assert_eq!(select_oldest_pair(&[c.clone(), b.clone()]).unwrap().pair_id, "JPA-USB");
    }

    #[test]
    fn one_pair_per_jp_document_per_route() {
        let jp = vec![jp_doc(
            GazetteKind::PublishedApplication,
            "2021000998",
            "2019120778",
            "20190628",
        )];
        let us = vec![
            us_doc("20210139186", "16959217", "20190101"),
            us_doc("20210139187", "16959218", "20180101"),
        ];
        let records = vec![
            record(
                claim("US", "20210139186", "A1"),
                vec![claim("JP", "2019120778", "A")],
            ),
            record(
                claim("US", "20210139187", "A1"),
                vec![claim("JP", "2019120778", "A")],
            ),
        ];
        let (pairs, warnings) = pair_documents(&jp, &us, &records);
        assert_eq!(pairs.len(), 1);
        // The second pair is older: its US filing predates everything else.
        assert_eq!(pairs[0].pair_id, "JP2021000998-US20210139187");
        assert!(warnings.count() >= 1);
    }

    #[test]
    fn symmetry_under_input_order() {
        let (mut jp, mut us, docdb) = pct_fixture();
        jp.push(jp_doc(
            GazetteKind::PublishedApplication,
            "2021000998",
            "2019120778",
            "20190628",
        ));
        us.push(us_doc("2021013999", "16959217", "20200630"));
        let mut records = docdb;
        records.push(record(
            claim("US", "2021013999", "A1"),
            vec![claim("JP", "2019120778", "A")],
        ));

        let (pairs_fwd, _) = pair_documents(&jp, &us, &records);
        let jp_rev: Vec<_> = jp.iter().rev().cloned().collect();
        let us_rev: Vec<_> = us.iter().rev().cloned().collect();
        let records_rev: Vec<_> = records.iter().rev().cloned().collect();
        let (pairs_rev, _) = pair_documents(&jp_rev, &us_rev, &records_rev);

        let ids = |ps: &[DocumentPair]| {
            ps.iter()
                .map(|p| (p.pair_id.clone(), p.route))
                .collect::<Vec<_>>()
        };
        assert_eq!(ids(&pairs_fwd), ids(&pairs_rev));
        assert_eq!(pairs_fwd.len(), 2);
    }
}
