//! Corpus statistics: yearly pair counts and extraction rates.

use std::collections::BTreeMap;

use super::PairRow;
use crate::align::AlignmentLink;
use crate::family::RouteLabel;

fn route_index(route: RouteLabel) -> usize {
    RouteLabel::ALL.iter().position(|&r| r == route).expect("route in ALL")
}

/// One statistics row: sentence-pair and document-pair counts per route
/// (in [`RouteLabel::ALL`] order) plus row totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsRow {
    /// Japanese publication year, `-` for undated pairs, `total` for the sum row.
    pub label: String,
    pub sents: [u64; 4],
    pub docs: [u64; 4],
    pub total_sents: u64,
    pub total_docs: u64,
}

impl StatsRow {
    fn new(label: String) -> Self {
        StatsRow {
            label,
            sents: [0; 4],
            docs: [0; 4],
            total_sents: 0,
            total_docs: 0,
        }
    }

    fn add(&mut self, route: RouteLabel, sents: u64) {
        let r = route_index(route);
        self.sents[r] += sents;
        self.docs[r] += 1;
        self.total_sents += sents;
        self.total_docs += 1;
    }
}

/// Pair and sentence-pair counts by Japanese publication year and route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YearlyStats {
    /// One row per year, ascending; undated pairs last.
    pub rows: Vec<StatsRow>,
    /// The sum row.
    pub total: StatsRow,
}

/// Tabulate document pairs and their aligned-sentence counts by the
/// publication year of the Japanese document and by route.
/// `sentence_counts` maps pair_id to that pair's link count; pairs without
/// an entry count 0 sentence pairs.
pub fn yearly_stats(pairs: &[PairRow], sentence_counts: &BTreeMap<String, u64>) -> YearlyStats {
    // Key undated rows after every real year.
    let mut by_year: BTreeMap<(bool, i32), StatsRow> = BTreeMap::new();
    let mut total = StatsRow::new("total".to_string());
    for pair in pairs {
        let year = pair.jp_year();
        let key = (year.is_none(), year.unwrap_or(0));
        let label = year.map_or_else(|| "-".to_string(), |y| y.to_string());
        let sents = sentence_counts.get(&pair.pair_id).copied().unwrap_or(0);
        by_year
            .entry(key)
            .or_insert_with(|| StatsRow::new(label))
            .add(pair.route, sents);
        total.add(pair.route, sents);
    }
    YearlyStats {
        rows: by_year.into_values().collect(),
        total,
    }
}

impl YearlyStats {
    /// Column headers, matching each row's cell order.
    fn headers() -> Vec<String> {
        let mut h = vec!["year".to_string()];
        for route in RouteLabel::ALL {
            h.push(format!("{route}_sents"));
            h.push(format!("{route}_docs"));
        }
        h.push("total_sents".to_string());
        h.push("total_docs".to_string());
        h
    }

    fn row_cells(row: &StatsRow) -> Vec<String> {
        let mut cells = vec![row.label.clone()];
        for r in 0..RouteLabel::ALL.len() {
            cells.push(row.sents[r].to_string());
            cells.push(row.docs[r].to_string());
        }
        cells.push(row.total_sents.to_string());
        cells.push(row.total_docs.to_string());
        cells
    }

    pub fn to_tsv(&self) -> String {
        let mut out = Self::headers().join("\t");
        out.push('\n');
        for row in self.rows.iter().chain(std::iter::once(&self.total)) {
            out.push_str(&Self::row_cells(row).join("\t"));
            out.push('\n');
        }
        out
    }

    /// Space-aligned rendering: first column left-aligned, numbers
    /// right-aligned, columns separated by two spaces.
    pub fn to_table(&self) -> String {
        let headers = Self::headers();
        let mut grid: Vec<Vec<String>> = vec![headers.clone()];
        for row in self.rows.iter().chain(std::iter::once(&self.total)) {
            grid.push(Self::row_cells(row));
        }
        let widths: Vec<usize> = (0..headers.len())
            .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &grid {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                if c == 0 {
                    line.push_str(&format!("{cell:<width$}", width = widths[0]));
                } else {
                    line.push_str(&format!("{cell:>width$}", width = widths[c]));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// The marginal identities: per-route column sums equal the sum row,
    /// and the sum row's route cells sum to its grand totals.
    pub fn totals_consistent(&self) -> bool {
        for r in 0..RouteLabel::ALL.len() {
            let sents: u64 = self.rows.iter().map(|row| row.sents[r]).sum();
            let docs: u64 = self.rows.iter().map(|row| row.docs[r]).sum();
            if sents != self.total.sents[r] || docs != self.total.docs[r] {
                return false;
            }
        }
        self.total.sents.iter().sum::<u64>() == self.total.total_sents
            && self.total.docs.iter().sum::<u64>() == self.total.total_docs
            && self.rows.iter().all(|row| {
                row.sents.iter().sum::<u64>() == row.total_sents
                    && row.docs.iter().sum::<u64>() == row.total_docs
            })
    }
}

/// Sentence totals and linked-sentence counts for one document pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RateInput {
    pub route: RouteLabel,
    pub n_ja: u64,
    pub n_en: u64,
    pub ja_linked: u64,
    pub en_linked: u64,
}

impl RateInput {
    /// Count the distinct linked sentences on each side.
    pub fn from_links(route: RouteLabel, n_ja: u64, n_en: u64, links: &[AlignmentLink]) -> Self {
        let distinct = |side: fn(&AlignmentLink) -> &Vec<u32>| {
            links
                .iter()
                .flat_map(|l| side(l).iter().copied())
                .collect::<std::collections::BTreeSet<u32>>()
                .len() as u64
        };
        RateInput {
            route,
            n_ja,
            n_en,
            ja_linked: distinct(|l| &l.ja_sents),
            en_linked: distinct(|l| &l.en_sents),
        }
    }
}

/// Extraction rates for one route (or overall): the fraction of segmented
/// sentences that ended up inside alignment links.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub label: String,
    pub ja: f64,
    pub en: f64,
    pub combined: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionReport {
    /// One row per route in [`RouteLabel::ALL`] order.
    pub per_route: Vec<RateRow>,
    pub overall: RateRow,
}

/// Aggregate [`RateInput`]s into per-route and overall extraction rates.
pub fn extraction_rate(inputs: &[RateInput]) -> ExtractionReport {
    let ratio = |linked: u64, total: u64| {
        if total == 0 {
            0.0
        } else {
            linked as f64 / total as f64
        }
    };
    let row = |label: String, items: &[&RateInput]| {
        let n_ja: u64 = items.iter().map(|i| i.n_ja).sum();
        let n_en: u64 = items.iter().map(|i| i.n_en).sum();
        let ja_linked: u64 = items.iter().map(|i| i.ja_linked).sum();
        let en_linked: u64 = items.iter().map(|i| i.en_linked).sum();
        RateRow {
            label,
            ja: ratio(ja_linked, n_ja),
            en: ratio(en_linked, n_en),
            combined: ratio(ja_linked + en_linked, n_ja + n_en),
        }
    };
    let per_route = RouteLabel::ALL
        .iter()
        .map(|&route| {
            let items: Vec<&RateInput> = inputs.iter().filter(|i| i.route == route).collect();
            row(route.to_string(), &items)
        })
        .collect();
    let all: Vec<&RateInput> = inputs.iter().collect();
    ExtractionReport {
        per_route,
        overall: row("overall".to_string(), &all),
    }
}

impl ExtractionReport {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("route\tja_rate\ten_rate\tcombined_rate\n");
        for row in self.per_route.iter().chain(std::iter::once(&self.overall)) {
            out.push_str(&format!(
                "{}\t{:.4}\t{:.4}\t{:.4}\n",
                row.label, row.ja, row.en, row.combined
            ));
        }
        out
    }
}
