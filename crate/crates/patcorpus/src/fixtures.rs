//! Synthetic corpus generator: JPO, USPTO, and DOCDB records with known
//! gold pairings and sentence alignments, for tests and benchmarks.
//!
//! Every content word is drawn from a closed bilingual vocabulary and used
//! in exactly one sentence corpus-wide, so the intended alignment of a
//! clean pair is unambiguous: sentence i of the Japanese side translates
//! sentence i of the English side and shares no vocabulary with any other
//! sentence. Noise knobs then drop sentences from either side and merge or
//! swap adjacent English sentences; the gold alignment is renumbered to
//! the surviving sentences, exactly as a segmenter will see them.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use chrono::NaiveDate;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::align::{AlignMethod, AlignmentLink};
use crate::corpusio::{write_alignment, write_pairs, CorpusLayout, PairRow};
use crate::error::{Error, Result};
use crate::family::RouteLabel;
use crate::segment::{
    assign_ids, split_sentences_en, split_sentences_ja, NonbreakingPrefixes, Part,
};

/// Kanji "digits" for synthetic Japanese words; three per word.
const KANJI: [char; 48] = [
    '機', '械', '電', '気', '装', '置', '部', '材', '料', '方', '法', '処', '理', '制', '御', '信',
    '号', '回', '路', '基', '板', '体', '面', '層', '膜', '管', '軸', '盤', '器', '具', '温', '度',
    '圧', '力', '光', '波', '磁', '性', '素', '子', '型', '式', '構', '造', '結', '合', '流', '量',
];

/// Root forms for synthetic English words; a decimal suffix is appended,
/// so no generated word ever matches a nonbreaking abbreviation.
const EN_ROOTS: [&str; 48] = [
    "valve", "rotor", "sensor", "motor", "shaft", "gear", "pump", "laser", "diode", "wafer",
    "resin", "alloy", "filter", "module", "circuit", "signal", "piston", "nozzle", "bearing",
    "clutch", "spring", "damper", "magnet", "coil", "relay", "switch", "panel", "frame",
    "bracket", "flange", "washer", "gasket", "seal", "hinge", "lever", "cam", "ratchet",
    "pulley", "belt", "roller", "slider", "guide", "stopper", "latch", "probe", "antenna",
    "membrane", "anode",
];

const IPC_POOL: [&str; 6] = [
    "G06F 17/30",
    "H04L 29/06",
    "A61K 38/00",
    "B65B 35/30",
    "G06N 3/08",
    "C07D 209/42",
];

const VOCAB_CAPACITY: usize = 48 * 48 * 48;

/// Records per generated XML batch file.
const BATCH_SIZE: usize = 50;

const XML_PROLOG: &str = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

fn ja_word(id: usize) -> String {
    let n = KANJI.len();
    [KANJI[id / (n * n) % n], KANJI[id / n % n], KANJI[id % n]]
        .into_iter()
        .collect()
}

fn en_word(id: usize) -> String {
    format!("{}{}", EN_ROOTS[id % EN_ROOTS.len()], id / EN_ROOTS.len())
}

/// Allocator of fresh word ids; every id is handed out once, and each
/// allocation is recorded as a bilingual lexicon entry.
#[derive(Default)]
struct Vocab {
    next: usize,
    entries: Vec<(String, String)>,
}

impl Vocab {
    /// Draw `len` fresh words, as parallel Japanese and English renderings.
    fn words(&mut self, len: usize) -> Result<(Vec<String>, Vec<String>)> {
        if self.next + len > VOCAB_CAPACITY {
            return Err(Error::InvalidSpec(format!(
                "vocabulary exhausted after {VOCAB_CAPACITY} words; request fewer or smaller documents"
            )));
        }
        let (mut ja, mut en) = (Vec::with_capacity(len), Vec::with_capacity(len));
        for id in self.next..self.next + len {
            let (j, e) = (ja_word(id), en_word(id));
            self.entries.push((j.clone(), e.clone()));
            ja.push(j);
            en.push(e);
        }
        self.next += len;
        Ok((ja, en))
    }
}

/// Noise applied to pair content. Titles are exempt so every pair keeps at
/// least one gold link. Drops hit each side independently; merges and
/// swaps act on adjacent surviving English sentences within a paragraph.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct NoiseSpec {
    /// Probability that a non-title sentence is missing from a side.
    pub drop_prob: f64,
    /// Probability that two adjacent English sentences are merged into one.
    pub merge_prob: f64,
    /// Probability that two adjacent English sentences appear swapped.
    pub swap_prob: f64,
}

/// What to generate. Serializable so a spec can live in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FixtureSpec {
    pub seed: u64,
    /// Pairs to generate per pairing route.
    pub n_pairs: BTreeMap<RouteLabel, u32>,
    /// Inclusive range of sentences per non-title part.
    pub sentences_per_part: (u32, u32),
    pub noise: NoiseSpec,
    /// Unpairable documents: plausible records that must produce no pair.
    pub n_decoys: u32,
}

impl Default for FixtureSpec {
    fn default() -> Self {
        FixtureSpec {
            seed: 0,
            n_pairs: RouteLabel::ALL.iter().map(|&r| (r, 2)).collect(),
            sentences_per_part: (2, 4),
            noise: NoiseSpec::default(),
            n_decoys: 0,
        }
    }
}

impl FixtureSpec {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.sentences_per_part;
        if lo < 1 || lo > hi {
            return Err(Error::InvalidSpec(format!(
                "sentences_per_part {lo}..={hi} must be a non-empty range starting at 1 or more"
            )));
        }
        for (name, p) in [
            ("drop_prob", self.noise.drop_prob),
            ("merge_prob", self.noise.merge_prob),
            ("swap_prob", self.noise.swap_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidSpec(format!("{name} {p} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Sizes of a generated fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct FixtureSummary {
    pub pairs: usize,
    pub decoys: usize,
    /// Japanese sentences surviving noise, across all pairs.
    pub ja_sentences: usize,
    pub en_sentences: usize,
    pub gold_links: usize,
    pub lexicon_entries: usize,
}

/// One planned sentence: parallel word lists, one id per word.
struct SentencePlan {
    ja: Vec<String>,
    en: Vec<String>,
}

impl SentencePlan {
    fn ja_text(&self, terminated: bool) -> String {
        let mut s = self.ja.concat();
        if terminated {
            s.push('。');
        }
        s
    }

    fn en_text(&self, terminated: bool) -> String {
        render_en(&self.en, terminated)
    }
}

/// Capitalize the first word and join with spaces; `terminated` appends a
/// period. Inverse-compatible with the English sentence splitter.
fn render_en(words: &[String], terminated: bool) -> String {
    let mut s = words.join(" ");
    if !s.is_empty() {
        let first = s[..1].to_ascii_uppercase();
        s.replace_range(..1, &first);
    }
    if terminated {
        s.push('.');
    }
    s
}

/// Paragraphs of one part, as indices into the sentence list.
struct PartPlan {
    part: Part,
    paragraphs: Vec<Vec<usize>>,
}

struct PairContent {
    sentences: Vec<SentencePlan>,
    parts: Vec<PartPlan>,
}

/// Plan one pair's clean content: a one-sentence title plus abstract,
/// description, and claims with per-part sentence counts drawn from the
/// spec. Descriptions paragraph at 3 sentences, claims at 2 (one claim
/// element each), abstracts in a single paragraph.
fn plan_content(rng: &mut ChaCha8Rng, vocab: &mut Vocab, spec: &FixtureSpec) -> Result<PairContent> {
    let (lo, hi) = spec.sentences_per_part;
    let mut sentences = Vec::new();
    let mut parts = Vec::new();
    for (part, para_len) in [
        (Part::Title, usize::MAX),
        (Part::Abstract, usize::MAX),
        (Part::Description, 3),
        (Part::Claim, 2),
    ] {
        let n = if part == Part::Title {
            1
        } else {
            rng.gen_range(lo..=hi) as usize
        };
        let first = sentences.len();
        for _ in 0..n {
            let (ja, en) = vocab.words(rng.gen_range(3..=6))?;
            sentences.push(SentencePlan { ja, en });
        }
        let idx: Vec<usize> = (first..first + n).collect();
        let paragraphs = idx.chunks(para_len.min(n)).map(<[usize]>::to_vec).collect();
        parts.push(PartPlan { part, paragraphs });
    }
    Ok(PairContent { sentences, parts })
}

#[derive(Clone, Copy)]
enum EnOp {
    Keep,
    /// Merge with the next sentence of the paragraph into one English unit.
    MergeNext,
    /// Emit this sentence and the next in swapped order.
    SwapNext,
    /// Consumed by the preceding MergeNext/SwapNext.
    Covered,
}

/// A pair after noise: paragraph text for both sides (empty paragraphs
/// omitted, as an XML round trip would), the English rendering of every
/// surviving Japanese sentence in document order, and the gold alignment
/// over surviving sentence numbers.
struct NoisyPair {
    ja_parts: Vec<(Part, Vec<String>)>,
    en_parts: Vec<(Part, Vec<String>)>,
    ja_to_en: Vec<String>,
    en_units: usize,
    gold: Vec<AlignmentLink>,
}

fn apply_noise(rng: &mut ChaCha8Rng, content: &PairContent, noise: &NoiseSpec) -> NoisyPair {
    let n = content.sentences.len();
    let mut drop_ja = vec![false; n];
    let mut drop_en = vec![false; n];
    for part in &content.parts {
        if part.part == Part::Title {
            continue;
        }
        for para in &part.paragraphs {
            for &s in para {
                drop_ja[s] = rng.gen_bool(noise.drop_prob);
                drop_en[s] = rng.gen_bool(noise.drop_prob);
            }
        }
    }

    // Pick non-overlapping adjacent windows of English survivors to merge
    // or swap, left to right.
    let mut op = vec![EnOp::Keep; n];
    for part in &content.parts {
        if part.part == Part::Title {
            continue;
        }
        for para in &part.paragraphs {
            let mut i = 0;
            while i + 1 < para.len() {
                let (s, t) = (para[i], para[i + 1]);
                if drop_en[s] || drop_en[t] {
                    i += 1;
                    continue;
                }
                if rng.gen_bool(noise.merge_prob) {
                    op[s] = EnOp::MergeNext;
                    op[t] = EnOp::Covered;
                    i += 2;
                } else if rng.gen_bool(noise.swap_prob) {
                    op[s] = EnOp::SwapNext;
                    op[t] = EnOp::Covered;
                    i += 2;
                } else {
                    i += 1;
                }
            }
        }
    }

    let mut out = NoisyPair {
        ja_parts: Vec::new(),
        en_parts: Vec::new(),
        ja_to_en: Vec::new(),
        en_units: 0,
        gold: Vec::new(),
    };
    let link = |ja: Vec<u32>, en: Vec<u32>| AlignmentLink::new(ja, en, 1.0, AlignMethod::Dict);
    let (mut ja_no, mut en_no) = (0u32, 0u32);
    let mut ja_num = vec![0u32; n];
    for part in &content.parts {
        let title = part.part == Part::Title;
        let mut ja_paras = Vec::new();
        let mut en_paras = Vec::new();
        for para in &part.paragraphs {
            let mut ja_sents = Vec::new();
            for &s in para {
                if drop_ja[s] {
                    continue;
                }
                ja_no += 1;
                ja_num[s] = ja_no;
                ja_sents.push(content.sentences[s].ja_text(!title));
                out.ja_to_en.push(content.sentences[s].en_text(!title));
            }
            if !ja_sents.is_empty() {
                ja_paras.push(ja_sents.concat());
            }

            let mut en_sents = Vec::new();
            let mut i = 0;
            while i < para.len() {
                let s = para[i];
                match op[s] {
                    EnOp::MergeNext => {
                        let t = para[i + 1];
                        let mut words = content.sentences[s].en.clone();
                        words.extend_from_slice(&content.sentences[t].en);
                        en_no += 1;
                        en_sents.push(render_en(&words, true));
                        let ja: Vec<u32> = [s, t]
                            .into_iter()
                            .filter(|&x| !drop_ja[x])
                            .map(|x| ja_num[x])
                            .collect();
                        if !ja.is_empty() {
                            out.gold.push(link(ja, vec![en_no]));
                        }
                        i += 2;
                    }
                    EnOp::SwapNext => {
                        let t = para[i + 1];
                        en_sents.push(content.sentences[t].en_text(true));
                        en_sents.push(content.sentences[s].en_text(true));
                        let (first, second) = (en_no + 1, en_no + 2);
                        en_no += 2;
                        match (drop_ja[s], drop_ja[t]) {
                            (false, false) => out
                                .gold
                                .push(link(vec![ja_num[s], ja_num[t]], vec![first, second])),
                            (false, true) => out.gold.push(link(vec![ja_num[s]], vec![second])),
                            (true, false) => out.gold.push(link(vec![ja_num[t]], vec![first])),
                            (true, true) => {}
                        }
                        i += 2;
                    }
                    EnOp::Keep | EnOp::Covered => {
                        if !drop_en[s] {
                            en_no += 1;
                            en_sents.push(content.sentences[s].en_text(!title));
                            if !drop_ja[s] {
                                out.gold.push(link(vec![ja_num[s]], vec![en_no]));
                            }
                        }
                        i += 1;
                    }
                }
            }
            if !en_sents.is_empty() {
                en_paras.push(en_sents.join(" "));
            }
        }
        out.ja_parts.push((part.part, ja_paras));
        out.en_parts.push((part.part, en_paras));
    }
    out.en_units = en_no as usize;
    out
}

fn rand_date(rng: &mut ChaCha8Rng, year: i32) -> NaiveDate {
    NaiveDate::from_ymd_opt(year, rng.gen_range(1..=12), rng.gen_range(1..=28))
        .expect("day 1-28 exists in every month")
}

struct PctIds {
    /// JPO filing number; embeds "JP" for kind T, digits only for kind S.
    jp_filing: String,
    /// International publication serial, without the "WO" prefix.
    publishing_digits: String,
    /// USPTO filing number, "PCT/JPyyyy/nnnnnn".
    us_filing: String,
    /// Application number as DOCDB records it: "yyyynnnnnn".
    docdb_number: String,
}

/// All identifiers of one planned pair. Serial number bands keep every
/// publication and application number unique across routes and decoys.
struct PairIds {
    route: RouteLabel,
    gazette_kind: char,
    jp_pub: String,
    jp_pub_date: NaiveDate,
    jp_app: String,
    jp_app_date: NaiveDate,
    us_pub: String,
    us_pub_date: NaiveDate,
    us_app: String,
    us_app_date: NaiveDate,
    /// Shared third-country priority application (jp-x-us only).
    de_app: Option<String>,
    pct: Option<PctIds>,
}

fn pair_ids(rng: &mut ChaCha8Rng, route: RouteLabel, k: u32) -> PairIds {
    let year = 2000 + (k % 22) as i32;
    let app_year = year - 1;
    let jp_app_date = rand_date(rng, app_year);
    let us_app_date = rand_date(rng, app_year);
    let jp_pub_date = rand_date(rng, year);
    let us_pub_date = rand_date(rng, year);
    let serial = k + 1;
    let (gazette_kind, pct) = if route == RouteLabel::Pct {
        let kind = if k % 2 == 0 { 'T' } else { 'S' };
        let jp_filing = if kind == 'T' {
            format!("WO{app_year}JP{serial:06}")
        } else {
            format!("WO{app_year}{serial:06}")
        };
        let ids = PctIds {
            jp_filing,
            publishing_digits: format!("{}{:06}", app_year, 800_000 + k),
            us_filing: format!("PCT/JP{app_year}/{serial:06}"),
            docdb_number: format!("{app_year}{serial:06}"),
        };
        (kind, Some(ids))
    } else {
        ('A', None)
    };
    PairIds {
        route,
        gazette_kind,
        jp_pub: format!("{}{:06}", year, 100_000 + k),
        jp_pub_date,
        jp_app: format!("{}{:06}", app_year, 300_000 + k),
        jp_app_date,
        us_pub: format!("{}{:07}", year, 1_000_000 + k),
        us_pub_date,
        us_app: format!("1{:07}", 5_000_000 + k),
        us_app_date,
        de_app: (route == RouteLabel::JpXUs).then(|| format!("10{}{:06}", app_year, 400_000 + k)),
        pct,
    }
}

impl PairIds {
    /// The application that the pairing pass will report as the anchor.
    fn anchor(&self) -> (&'static str, String) {
        match self.route {
            RouteLabel::JpUs => ("JP", self.jp_app.clone()),
            RouteLabel::UsJp => ("US", self.us_app.clone()),
            RouteLabel::JpXUs => ("DE", self.de_app.clone().expect("set for jp-x-us")),
            RouteLabel::Pct => ("JP", self.pct.as_ref().expect("set for pct").docdb_number.clone()),
        }
    }

    fn jp_doc(&self, text: DocText, ipc: Vec<String>) -> JpDoc {
        JpDoc {
            kind: self.gazette_kind,
            pub_number: self.jp_pub.clone(),
            pub_date: self.jp_pub_date,
            app_number: self.jp_app.clone(),
            app_date: self.jp_app_date,
            pct_filing: self.pct.as_ref().map(|p| p.jp_filing.clone()),
            pct_publishing: self.pct.as_ref().map(|p| format!("WO{}", p.publishing_digits)),
            ipc,
            text,
        }
    }

    fn us_doc(&self, text: DocText, ipc: Vec<String>) -> UsDoc {
        UsDoc {
            pub_number: self.us_pub.clone(),
            pub_date: self.us_pub_date,
            app_number: self.us_app.clone(),
            app_date: self.us_app_date,
            pct_filing: self.pct.as_ref().map(|p| p.us_filing.clone()),
            ipc,
            text,
        }
    }

    /// The exchange records that justify this pair.
    fn db_docs(&self) -> Vec<DbDoc> {
        let db = |country, number: &String, kind, date| DbRef {
            country,
            number: number.clone(),
            kind,
            date,
        };
        match self.route {
            RouteLabel::JpUs => vec![DbDoc {
                subject: db("US", &self.us_pub, "A1", Some(self.us_pub_date)),
                claims: vec![db("JP", &self.jp_app, "A", Some(self.jp_app_date))],
                pct_application: None,
            }],
            RouteLabel::UsJp => vec![DbDoc {
                subject: db("JP", &self.jp_pub, "A", Some(self.jp_pub_date)),
                claims: vec![db("US", &self.us_app, "A", Some(self.us_app_date))],
                pct_application: None,
            }],
            RouteLabel::JpXUs => {
                let de = self.de_app.as_ref().expect("set for jp-x-us");
                vec![
                    DbDoc {
                        subject: db("JP", &self.jp_pub, "A", Some(self.jp_pub_date)),
                        claims: vec![db("DE", de, "A", Some(self.jp_app_date))],
                        pct_application: None,
                    },
                    DbDoc {
                        subject: db("US", &self.us_pub, "A1", Some(self.us_pub_date)),
                        claims: vec![db("DE", de, "A", Some(self.jp_app_date))],
                        pct_application: None,
                    },
                ]
            }
            RouteLabel::Pct => {
                let p = self.pct.as_ref().expect("set for pct");
                vec![DbDoc {
                    subject: db("WO", &p.publishing_digits, "A1", None),
                    claims: Vec::new(),
                    pct_application: Some(db("JP", &p.docdb_number, "W", None)),
                }]
            }
        }
    }
}

/// Plain text of one document, one string per paragraph.
struct DocText {
    title: String,
    abstract_paras: Vec<String>,
    description: Vec<String>,
    claims: Vec<String>,
}

/// Collapse noisy part lists (always Title, Abstract, Description, Claim)
/// into document text.
fn doc_text(parts: &[(Part, Vec<String>)]) -> DocText {
    let of = |p: Part| {
        parts
            .iter()
            .find(|(part, _)| *part == p)
            .map(|(_, paras)| paras.clone())
            .unwrap_or_default()
    };
    DocText {
        title: of(Part::Title).into_iter().next().unwrap_or_default(),
        abstract_paras: of(Part::Abstract),
        description: of(Part::Description),
        claims: of(Part::Claim),
    }
}

struct JpDoc {
    kind: char,
    pub_number: String,
    pub_date: NaiveDate,
    app_number: String,
    app_date: NaiveDate,
    pct_filing: Option<String>,
    pct_publishing: Option<String>,
    ipc: Vec<String>,
    text: DocText,
}

struct UsDoc {
    pub_number: String,
    pub_date: NaiveDate,
    app_number: String,
    app_date: NaiveDate,
    pct_filing: Option<String>,
    ipc: Vec<String>,
    text: DocText,
}

struct DbRef {
    country: &'static str,
    number: String,
    kind: &'static str,
    date: Option<NaiveDate>,
}

struct DbDoc {
    subject: DbRef,
    claims: Vec<DbRef>,
    /// International application reference (kind W), for PCT confirmation.
    pct_application: Option<DbRef>,
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn push_document_id(
    out: &mut String,
    indent: &str,
    country: &str,
    number: &str,
    kind: Option<&str>,
    date: Option<NaiveDate>,
) {
    let _ = writeln!(out, "{indent}<document-id>");
    let _ = writeln!(out, "{indent}  <country>{country}</country>");
    let _ = writeln!(out, "{indent}  <doc-number>{}</doc-number>", xml_escape(number));
    if let Some(kind) = kind {
        let _ = writeln!(out, "{indent}  <kind>{kind}</kind>");
    }
    if let Some(date) = date {
        let _ = writeln!(out, "{indent}  <date>{}</date>", date.format("%Y%m%d"));
    }
    let _ = writeln!(out, "{indent}</document-id>");
}

fn push_ipc(out: &mut String, indent: &str, codes: &[String]) {
    for code in codes {
        let _ = writeln!(
            out,
            "{indent}<classification-ipcr>\n{indent}  <text>{}</text>\n{indent}</classification-ipcr>",
            xml_escape(code)
        );
    }
}

fn push_body_parts(out: &mut String, text: &DocText) {
    out.push_str("  <abstract>\n");
    for p in &text.abstract_paras {
        let _ = writeln!(out, "    <p>{}</p>", xml_escape(p));
    }
    out.push_str("  </abstract>\n  <description>\n");
    for p in &text.description {
        let _ = writeln!(out, "    <p>{}</p>", xml_escape(p));
    }
    out.push_str("  </description>\n  <claims>\n");
    for (i, c) in text.claims.iter().enumerate() {
        let _ = writeln!(
            out,
            "    <claim>\n      <claim-number>{}.</claim-number>\n      <claim-text>{}</claim-text>\n    </claim>",
            i + 1,
            xml_escape(c)
        );
    }
    out.push_str("  </claims>\n");
}

fn jpo_xml(doc: &JpDoc) -> String {
    let mut s = String::from(XML_PROLOG);
    let _ = writeln!(
        s,
        "<jp-official-gazette lang=\"ja\" country=\"JP\" kind-of-jp=\"{}\">",
        doc.kind
    );
    s.push_str("  <bibliographic-data>\n    <publication-reference>\n");
    let kind = doc.kind.to_string();
    push_document_id(&mut s, "      ", "JP", &doc.pub_number, Some(&kind), Some(doc.pub_date));
    s.push_str("    </publication-reference>\n    <application-reference>\n");
    push_document_id(&mut s, "      ", "JP", &doc.app_number, None, Some(doc.app_date));
    s.push_str("    </application-reference>\n");
    if let Some(filing) = &doc.pct_filing {
        s.push_str("    <pct-or-regional-filing-data>\n");
        push_document_id(&mut s, "      ", "WO", filing, None, None);
        s.push_str("    </pct-or-regional-filing-data>\n");
    }
    if let Some(publishing) = &doc.pct_publishing {
        s.push_str("    <pct-or-regional-publishing-data>\n");
        push_document_id(&mut s, "      ", "WO", publishing, None, None);
        s.push_str("    </pct-or-regional-publishing-data>\n");
    }
    push_ipc(&mut s, "    ", &doc.ipc);
    s.push_str("  </bibliographic-data>\n");
    let _ = writeln!(s, "  <invention-title>{}</invention-title>", xml_escape(&doc.text.title));
    push_body_parts(&mut s, &doc.text);
    s.push_str("</jp-official-gazette>\n");
    s
}

fn uspto_xml(doc: &UsDoc) -> String {
    let mut s = String::from(XML_PROLOG);
    s.push_str("<us-patent-application lang=\"en\" country=\"US\">\n");
    s.push_str("  <us-bibliographic-data-application>\n    <publication-reference>\n");
    push_document_id(&mut s, "      ", "US", &doc.pub_number, Some("A1"), Some(doc.pub_date));
    s.push_str("    </publication-reference>\n    <application-reference appl-type=\"utility\">\n");
    push_document_id(&mut s, "      ", "US", &doc.app_number, None, Some(doc.app_date));
    s.push_str("    </application-reference>\n");
    if let Some(filing) = &doc.pct_filing {
        s.push_str("    <pct-or-regional-filing-data>\n");
        push_document_id(&mut s, "      ", "WO", filing, None, None);
        s.push_str("    </pct-or-regional-filing-data>\n");
    }
    push_ipc(&mut s, "    ", &doc.ipc);
    let _ = writeln!(
        s,
        "    <invention-title>{}</invention-title>",
        xml_escape(&doc.text.title)
    );
    s.push_str("  </us-bibliographic-data-application>\n");
    push_body_parts(&mut s, &doc.text);
    s.push_str("</us-patent-application>\n");
    s
}

fn docdb_xml(doc: &DbDoc) -> String {
    let mut s = String::from(XML_PROLOG);
    let _ = writeln!(
        s,
        "<exch:exchange-document country=\"{}\" doc-number=\"{}\" kind=\"{}\">",
        doc.subject.country,
        xml_escape(&doc.subject.number),
        doc.subject.kind
    );
    s.push_str("  <exch:bibliographic-data>\n");
    if !doc.claims.is_empty() {
        s.push_str("    <exch:priority-claims>\n");
        for (i, claim) in doc.claims.iter().enumerate() {
            let _ = writeln!(s, "      <exch:priority-claim sequence=\"{}\">", i + 1);
            push_document_id(&mut s, "        ", claim.country, &claim.number, Some(claim.kind), claim.date);
            s.push_str("      </exch:priority-claim>\n");
        }
        s.push_str("    </exch:priority-claims>\n");
    }
    if let Some(app) = &doc.pct_application {
        s.push_str("    <exch:application-reference>\n");
        push_document_id(&mut s, "      ", app.country, &app.number, Some(app.kind), app.date);
        s.push_str("    </exch:application-reference>\n");
    }
    s.push_str("  </exch:bibliographic-data>\n</exch:exchange-document>\n");
    s
}

/// A short unrelated document for one side of a decoy.
fn decoy_text(rng: &mut ChaCha8Rng, vocab: &mut Vocab, ja: bool) -> Result<DocText> {
    let sentence = |rng: &mut ChaCha8Rng, vocab: &mut Vocab, terminated: bool| -> Result<String> {
        let (ja_words, en_words) = vocab.words(rng.gen_range(3..=6))?;
        Ok(if ja {
            let mut s = ja_words.concat();
            if terminated {
                s.push('。');
            }
            s
        } else {
            render_en(&en_words, terminated)
        })
    };
    Ok(DocText {
        title: sentence(rng, vocab, false)?,
        abstract_paras: vec![sentence(rng, vocab, true)?],
        description: Vec::new(),
        claims: Vec::new(),
    })
}

/// One decoy: a JP and a US document (plus sometimes an exchange record)
/// that fail pairing for a specific reason, cycling through four kinds.
fn decoy_docs(rng: &mut ChaCha8Rng, vocab: &mut Vocab, d: u32) -> Result<(JpDoc, UsDoc, Option<DbDoc>)> {
    let year = 2000 + (d % 22) as i32;
    let app_year = year - 1;
    let jp_app_date = rand_date(rng, app_year);
    let us_app_date = rand_date(rng, app_year);
    let jp_pub_date = rand_date(rng, year);
    let us_pub_date = rand_date(rng, year);
    let jp_text = decoy_text(rng, vocab, true)?;
    let us_text = decoy_text(rng, vocab, false)?;
    let ipc = vec![IPC_POOL[d as usize % IPC_POOL.len()].to_owned()];
    let jp_app = format!("{}{:06}", app_year, 930_000 + d);
    let us_pub = format!("{}{:07}", year, 9_000_000 + d);
    let serial = 900_000 + d;

    let mut jp = JpDoc {
        kind: 'A',
        pub_number: format!("{}{:06}", year, 900_000 + d),
        pub_date: jp_pub_date,
        app_number: jp_app.clone(),
        app_date: jp_app_date,
        pct_filing: None,
        pct_publishing: None,
        ipc: ipc.clone(),
        text: jp_text,
    };
    let mut us = UsDoc {
        pub_number: us_pub.clone(),
        pub_date: us_pub_date,
        app_number: format!("1{:07}", 5_900_000 + d),
        app_date: us_app_date,
        pct_filing: None,
        ipc,
        text: us_text,
    };
    let subject = DbRef {
        country: "US",
        number: us_pub,
        kind: "A1",
        date: Some(us_pub_date),
    };

    let db = match d % 4 {
        // Shared PCT number that no exchange record confirms.
        0 => {
            jp.kind = 'T';
            jp.pct_filing = Some(format!("WO{app_year}JP{serial:06}"));
            jp.pct_publishing = Some(format!("WO{}{:06}", app_year, 960_000 + d));
            us.pct_filing = Some(format!("PCT/JP{app_year}/{serial:06}"));
            None
        }
        // Priority claim onto a translated gazette: wrong kind-of-jp.
        1 => {
            jp.kind = 'T';
            jp.pct_filing = Some(format!("WO{app_year}JP{serial:06}"));
            jp.pct_publishing = Some(format!("WO{}{:06}", app_year, 960_000 + d));
            Some(DbDoc {
                subject,
                claims: vec![DbRef {
                    country: "JP",
                    number: jp_app,
                    kind: "A",
                    date: Some(jp_app_date),
                }],
                pct_application: None,
            })
        }
        // Utility-model priority: claim kind is not A.
        2 => Some(DbDoc {
            subject,
            claims: vec![DbRef {
                country: "JP",
                number: jp_app,
                kind: "U",
                date: Some(jp_app_date),
            }],
            pct_application: None,
        }),
        // Claim onto an application no gazette covers.
        _ => Some(DbDoc {
            subject,
            claims: vec![DbRef {
                country: "JP",
                number: format!("{}{:06}", app_year, 990_000 + d),
                kind: "A",
                date: None,
            }],
            pct_application: None,
        }),
    };
    Ok((jp, us, db))
}

fn write_batches(dir: &Path, stem: &str, records: &[String]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (i, chunk) in records.chunks(BATCH_SIZE).enumerate() {
        let path = dir.join(format!("{stem}-{i:04}.xml"));
        fs::write(&path, chunk.concat()).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

/// Generate a fixture corpus under `out_dir`:
///
/// - `jpo/`, `uspto/`, `docdb/` — batched XML records;
/// - `lexicon.tsv` — the full bilingual vocabulary, plus 。→.;
/// - `translations.tsv` — an English rendering of every Japanese sentence,
///   keyed by the sentence id the segmenter will assign;
/// - `gold/pairs.tsv` and `gold/<shard>/<pair_id>.align` — the expected
///   pairing and per-pair sentence alignments.
///
/// Generation replays the pipeline's own segmentation, so gold sentence
/// numbers match what parsing and segmenting the XML will produce.
pub fn generate(spec: &FixtureSpec, out_dir: &Path) -> Result<FixtureSummary> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut vocab = Vocab::default();
    let mut jp_records = Vec::new();
    let mut us_records = Vec::new();
    let mut db_records = Vec::new();
    let mut rows = Vec::new();
    let mut alignments: Vec<(String, Vec<AlignmentLink>)> = Vec::new();
    let mut translations = String::new();
    let mut summary = FixtureSummary::default();

    let mut k = 0u32;
    for (&route, &count) in &spec.n_pairs {
        for _ in 0..count {
            let ids = pair_ids(&mut rng, route, k);
            let content = plan_content(&mut rng, &mut vocab, spec)?;
            let noisy = apply_noise(&mut rng, &content, &spec.noise);
            let pair_id = format!("JP{}-US{}", ids.jp_pub, ids.us_pub);

            // Replay segmentation to key the translations and to pin the
            // gold numbering to what the pipeline will reconstruct.
            let ja_records = assign_ids(&pair_id, &noisy.ja_parts, |p| split_sentences_ja(p));
            if ja_records.len() != noisy.ja_to_en.len() {
                return Err(Error::InvariantViolation(format!(
                    "{pair_id}: planned {} Japanese sentences but segmentation found {}",
                    noisy.ja_to_en.len(),
                    ja_records.len()
                )));
            }
            for (rec, en) in ja_records.iter().zip(&noisy.ja_to_en) {
                let _ = writeln!(translations, "{}\t{}", rec.sentence_id, en);
            }
            let en_count = assign_ids(&pair_id, &noisy.en_parts, |p| {
                split_sentences_en(p, NonbreakingPrefixes::default_en())
            })
            .len();
            if en_count != noisy.en_units {
                return Err(Error::InvariantViolation(format!(
                    "{pair_id}: planned {} English sentences but segmentation found {en_count}",
                    noisy.en_units
                )));
            }

            summary.ja_sentences += ja_records.len();
            summary.en_sentences += en_count;
            summary.gold_links += noisy.gold.len();

            let (anchor_country, anchor_number) = ids.anchor();
            rows.push(PairRow {
                pair_id: pair_id.clone(),
                route,
                anchor_country: anchor_country.to_owned(),
                anchor_number,
                jp_pub_date: Some(ids.jp_pub_date),
                us_pub_date: Some(ids.us_pub_date),
            });
            alignments.push((pair_id, noisy.gold));

            let ipc_jp = vec![IPC_POOL[k as usize % IPC_POOL.len()].to_owned()];
            let mut ipc_us = ipc_jp.clone();
            if k % 3 == 0 {
                ipc_us.push(IPC_POOL[(k as usize + 1) % IPC_POOL.len()].to_owned());
            }
            jp_records.push(jpo_xml(&ids.jp_doc(doc_text(&noisy.ja_parts), ipc_jp)));
            us_records.push(uspto_xml(&ids.us_doc(doc_text(&noisy.en_parts), ipc_us)));
            for db in ids.db_docs() {
                db_records.push(docdb_xml(&db));
            }
            k += 1;
        }
    }

    for d in 0..spec.n_decoys {
        let (jp, us, db) = decoy_docs(&mut rng, &mut vocab, d)?;
        jp_records.push(jpo_xml(&jp));
        us_records.push(uspto_xml(&us));
        if let Some(db) = db {
            db_records.push(docdb_xml(&db));
        }
    }

    summary.pairs = rows.len();
    summary.decoys = spec.n_decoys as usize;

    write_batches(&out_dir.join("jpo"), "jpo", &jp_records)?;
    write_batches(&out_dir.join("uspto"), "uspto", &us_records)?;
    write_batches(&out_dir.join("docdb"), "docdb", &db_records)?;

    let mut lexicon_lines: Vec<String> = vocab
        .entries
        .iter()
        .map(|(ja, en)| format!("{ja}\t{en}"))
        .collect();
    lexicon_lines.push("。\t.".to_owned());
    lexicon_lines.sort();
    summary.lexicon_entries = lexicon_lines.len();
    let lexicon_path = out_dir.join("lexicon.tsv");
    fs::write(&lexicon_path, lexicon_lines.join("\n") + "\n")
        .map_err(|e| Error::io(&lexicon_path, e))?;
    let translations_path = out_dir.join("translations.tsv");
    fs::write(&translations_path, &translations).map_err(|e| Error::io(&translations_path, e))?;

    let gold = CorpusLayout::new(out_dir.join("gold"));
    write_pairs(&gold, &rows)?;
    for (pair_id, links) in &alignments {
        write_alignment(&gold, pair_id, links, false)?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::{align_dict, align_mt, BilingualLexicon};
    use crate::corpusio::{read_alignment, read_lexicon, read_pairs, read_translations};
    use crate::family::pair_documents;
    use crate::ingest::{parse_docdb_file, parse_jpo_file, parse_uspto_file, IngestOptions};
    use crate::segment::{parse_pair_id, segment_document, tokenize_en, tokenize_ja, Side};

    fn base_spec(seed: u64, per_route: u32) -> FixtureSpec {
        FixtureSpec {
            seed,
            n_pairs: RouteLabel::ALL.iter().map(|&r| (r, per_route)).collect(),
            ..FixtureSpec::default()
        }
    }

    fn tree_bytes(root: &Path) -> BTreeMap<String, Vec<u8>> {
        fn walk(dir: &Path, root: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
            for entry in fs::read_dir(dir).unwrap() {
                let path = entry.unwrap().path();
                if path.is_dir() {
                    walk(&path, root, out);
                } else {
                    let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                    out.insert(rel, fs::read(&path).unwrap());
                }
            }
        }
        let mut out = BTreeMap::new();
        walk(root, root, &mut out);
        out
    }

    fn parse_all(dir: &Path) -> (Vec<crate::ingest::PatentDocument>, Vec<crate::ingest::PatentDocument>, Vec<crate::ingest::PriorityRecord>) {
        fn files(dir: &Path) -> Vec<std::path::PathBuf> {
            let mut v: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
            v.sort();
            v
        }
        let opts = IngestOptions::default();
        let jp = files(&dir.join("jpo"))
            .iter()
            .flat_map(|p| parse_jpo_file(p, &opts).unwrap())
            .collect();
        let us = files(&dir.join("uspto"))
            .iter()
            .flat_map(|p| parse_uspto_file(p, &opts).unwrap())
            .collect();
        let db = files(&dir.join("docdb"))
            .iter()
            .flat_map(|p| parse_docdb_file(p, &opts).unwrap())
            .collect();
        (jp, us, db)
    }

    fn link_keys(links: &[AlignmentLink]) -> Vec<(Vec<u32>, Vec<u32>)> {
        links
            .iter()
            .map(|l| (l.ja_sents.clone(), l.en_sents.clone()))
            .collect()
    }

    #[test]
    fn generation_is_deterministic() {
        let mut spec = base_spec(42, 2);
        spec.n_decoys = 3;
        spec.noise = NoiseSpec {
            drop_prob: 0.2,
            merge_prob: 0.1,
            swap_prob: 0.1,
        };
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let sa = generate(&spec, a.path()).unwrap();
        let sb = generate(&spec, b.path()).unwrap();
        assert_eq!(sa, sb);
        assert_eq!(tree_bytes(a.path()), tree_bytes(b.path()));

        spec.seed = 43;
        let c = tempfile::tempdir().unwrap();
        generate(&spec, c.path()).unwrap();
        assert_ne!(tree_bytes(a.path()), tree_bytes(c.path()));
    }

    #[test]
    fn records_pair_back_to_gold() {
        let mut spec = base_spec(7, 2);
        spec.n_decoys = 8;
        let dir = tempfile::tempdir().unwrap();
        let summary = generate(&spec, dir.path()).unwrap();
        assert_eq!(summary.pairs, 8);

        let (jp, us, db) = parse_all(dir.path());
        assert_eq!(jp.len(), 8 + 8);
        assert_eq!(us.len(), 8 + 8);
        // jp-us/us-jp/pct pairs yield one exchange record, jp-x-us two;
        // decoy kinds 1-3 one each.
        assert_eq!(db.len(), 2 + 2 + 2 + 4 + 6);

        let (pairs, warnings) = pair_documents(&jp, &us, &db);
        assert!(warnings.is_empty(), "{:?}", warnings);
        let produced: Vec<PairRow> = pairs.iter().map(PairRow::from).collect();
        let gold = read_pairs(&dir.path().join("gold/pairs.tsv")).unwrap();
        assert_eq!(produced, gold);
        for route in RouteLabel::ALL {
            assert_eq!(gold.iter().filter(|r| r.route == route).count(), 2);
        }
    }

    #[test]
    fn clean_gold_is_the_identity_alignment() {
        let spec = base_spec(3, 1);
        let dir = tempfile::tempdir().unwrap();
        let summary = generate(&spec, dir.path()).unwrap();
        assert_eq!(summary.ja_sentences, summary.en_sentences);
        assert_eq!(summary.gold_links, summary.ja_sentences);

        let layout = CorpusLayout::new(dir.path().join("gold"));
        let mut links_seen = 0;
        for row in read_pairs(&layout.pairs_path()).unwrap() {
            let links = read_alignment(&layout.alignment_path(&row.pair_id), AlignMethod::Dict).unwrap();
            for (i, link) in links.iter().enumerate() {
                assert_eq!(link.ja_sents, vec![i as u32 + 1]);
                assert_eq!(link.en_sents, vec![i as u32 + 1]);
                assert_eq!(link.score, 1.0);
            }
            links_seen += links.len();
        }
        assert_eq!(links_seen, summary.gold_links);
    }

    #[test]
    fn bad_specs_rejected() {
        let cases = [
            NoiseSpec { drop_prob: 1.5, ..NoiseSpec::default() },
            NoiseSpec { merge_prob: -0.1, ..NoiseSpec::default() },
            NoiseSpec { swap_prob: f64::NAN, ..NoiseSpec::default() },
        ];
        for noise in cases {
            let spec = FixtureSpec { noise, ..FixtureSpec::default() };
            assert!(matches!(spec.validate(), Err(Error::InvalidSpec(_))));
        }
        for range in [(0, 3), (5, 3)] {
            let spec = FixtureSpec { sentences_per_part: range, ..FixtureSpec::default() };
            assert!(matches!(spec.validate(), Err(Error::InvalidSpec(_))));
        }
    }

    #[test]
    fn full_drop_keeps_only_title_links() {
        let mut spec = base_spec(5, 1);
        spec.noise.drop_prob = 1.0;
        let dir = tempfile::tempdir().unwrap();
        let summary = generate(&spec, dir.path()).unwrap();
        assert_eq!(summary.ja_sentences, 4);
        assert_eq!(summary.gold_links, 4);

        let layout = CorpusLayout::new(dir.path().join("gold"));
        for row in read_pairs(&layout.pairs_path()).unwrap() {
            let links = read_alignment(&layout.alignment_path(&row.pair_id), AlignMethod::Dict).unwrap();
            assert_eq!(link_keys(&links), vec![(vec![1], vec![1])]);
        }
    }

    #[test]
    fn merges_become_two_to_one_links() {
        let mut spec = FixtureSpec {
            n_pairs: BTreeMap::from([(RouteLabel::JpUs, 1)]),
            sentences_per_part: (4, 4),
            ..FixtureSpec::default()
        };
        spec.noise.merge_prob = 1.0;
        let dir = tempfile::tempdir().unwrap();
        let summary = generate(&spec, dir.path()).unwrap();
        assert!(summary.en_sentences < summary.ja_sentences);

        let layout = CorpusLayout::new(dir.path().join("gold"));
        let row = &read_pairs(&layout.pairs_path()).unwrap()[0];
        let links = read_alignment(&layout.alignment_path(&row.pair_id), AlignMethod::Dict).unwrap();
        assert_eq!(link_keys(&links)[0], (vec![1], vec![1]));
        assert!(links.iter().any(|l| l.ja_sents.len() == 2 && l.en_sents.len() == 1));
        // Merged or not, every Japanese sentence stays covered.
        let covered: usize = links.iter().map(|l| l.ja_sents.len()).sum();
        assert_eq!(covered, summary.ja_sentences);
    }

    #[test]
    fn swaps_become_two_to_two_links() {
        let mut spec = FixtureSpec {
            n_pairs: BTreeMap::from([(RouteLabel::JpUs, 1)]),
            sentences_per_part: (4, 4),
            ..FixtureSpec::default()
        };
        spec.noise.swap_prob = 1.0;
        let dir = tempfile::tempdir().unwrap();
        generate(&spec, dir.path()).unwrap();

        let layout = CorpusLayout::new(dir.path().join("gold"));
        let row = &read_pairs(&layout.pairs_path()).unwrap()[0];
        let links = read_alignment(&layout.alignment_path(&row.pair_id), AlignMethod::Dict).unwrap();
        let swapped: Vec<_> = links.iter().filter(|l| l.ja_sents.len() == 2).collect();
        assert!(!swapped.is_empty());
        for link in swapped {
            assert_eq!(link.en_sents.len(), 2);
            assert_eq!(link.ja_sents[1], link.ja_sents[0] + 1);
            assert_eq!(link.en_sents[1], link.en_sents[0] + 1);
        }
    }

    #[test]
    fn translations_cover_every_segmented_sentence() {
        let mut spec = base_spec(9, 1);
        spec.noise = NoiseSpec {
            drop_prob: 0.3,
            merge_prob: 0.2,
            swap_prob: 0.2,
        };
        let dir = tempfile::tempdir().unwrap();
        let summary = generate(&spec, dir.path()).unwrap();

        let (tmap, warnings) = read_translations(&dir.path().join("translations.tsv")).unwrap();
        assert!(warnings.is_empty());
        assert_eq!(tmap.len(), summary.ja_sentences);

        let (jp, _, _) = parse_all(dir.path());
        let mut seen = 0;
        for row in read_pairs(&dir.path().join("gold/pairs.tsv")).unwrap() {
            let (jp_pub, _) = parse_pair_id(&row.pair_id).unwrap();
            let doc = jp.iter().find(|d| d.publication.doc_number == jp_pub).unwrap();
            let records = segment_document(&row.pair_id, doc, Side::Ja, NonbreakingPrefixes::default_en());
            for rec in &records {
                assert!(tmap.contains_key(&rec.sentence_id), "missing {}", rec.sentence_id);
            }
            seen += records.len();
        }
        assert_eq!(seen, summary.ja_sentences);
    }

    #[test]
    fn both_aligners_recover_clean_gold() {
        let mut spec = base_spec(11, 1);
        spec.sentences_per_part = (3, 5);
        let dir = tempfile::tempdir().unwrap();
        generate(&spec, dir.path()).unwrap();

        let (lexicon, warnings) = read_lexicon(&dir.path().join("lexicon.tsv")).unwrap();
        assert!(warnings.is_empty());
        let (tmap, _) = read_translations(&dir.path().join("translations.tsv")).unwrap();
        let (jp, us, _) = parse_all(dir.path());

        let layout = CorpusLayout::new(dir.path().join("gold"));
        for row in read_pairs(&layout.pairs_path()).unwrap() {
            let (jp_pub, us_pub) = parse_pair_id(&row.pair_id).unwrap();
            let jp_doc = jp.iter().find(|d| d.publication.doc_number == jp_pub).unwrap();
            let us_doc = us.iter().find(|d| d.publication.doc_number == us_pub).unwrap();
            let prefixes = NonbreakingPrefixes::default_en();
            let ja_recs = segment_document(&row.pair_id, jp_doc, Side::Ja, prefixes);
            let en_recs = segment_document(&row.pair_id, us_doc, Side::En, prefixes);
            let ja_tokens: Vec<Vec<String>> =
                ja_recs.iter().map(|r| tokenize_ja(&r.text, &lexicon)).collect();
            let en_tokens: Vec<Vec<String>> = en_recs.iter().map(|r| tokenize_en(&r.text)).collect();
            let gold = read_alignment(&layout.alignment_path(&row.pair_id), AlignMethod::Dict).unwrap();

            let dict = align_dict(&ja_tokens, &en_tokens, &lexicon, &Default::default());
            assert_eq!(link_keys(&dict), link_keys(&gold), "dict on {}", row.pair_id);

            let translations: Vec<Vec<String>> = ja_recs
                .iter()
                .map(|r| tmap[&r.sentence_id].clone())
                .collect();
            let mt = align_mt(ja_recs.len(), &translations, &en_tokens, &Default::default()).unwrap();
            assert_eq!(link_keys(&mt), link_keys(&gold), "mt on {}", row.pair_id);
        }
    }

    #[test]
    fn vocabulary_words_survive_the_tokenizers() {
        let mut lexicon = BilingualLexicon::new();
        for id in [0, 1, 47, 48, 1000, VOCAB_CAPACITY - 1] {
            lexicon.insert(&ja_word(id), &en_word(id));
        }
        lexicon.insert("。", ".");

        let text = format!("{}{}{}。", ja_word(48), ja_word(0), ja_word(1000));
        let expect = vec![ja_word(48), ja_word(0), ja_word(1000), "。".to_owned()];
        assert_eq!(tokenize_ja(&text, &lexicon), expect);

        let en = render_en(&[en_word(48), en_word(0)], true);
        assert_eq!(tokenize_en(&en), vec![en_word(48), en_word(0), ".".to_owned()]);

        // Distinct ids never render to the same word on either side.
        let ids = [0usize, 1, 47, 48, 2303, 2304, VOCAB_CAPACITY - 1];
        let ja: std::collections::BTreeSet<String> = ids.iter().map(|&i| ja_word(i)).collect();
        let en: std::collections::BTreeSet<String> = ids.iter().map(|&i| en_word(i)).collect();
        assert_eq!(ja.len(), ids.len());
        assert_eq!(en.len(), ids.len());
    }
}
