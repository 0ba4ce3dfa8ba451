//! Text extraction from parsed records: pull the title, abstract,
//! description, and claim paragraphs, dropping non-linguistic content.

use std::collections::BTreeSet;

use super::types::DocumentParts;
use super::xml::Element;

/// Elements whose content is dropped from extracted text: claim and
/// paragraph number markers, math, figure references, and tables.
const EXCLUDED_ELEMENTS: &[&str] = &[
    "claim-number",
    "paragraph-number",
    "math",
    "maths",
    "formula",
    "figref",
    "fig",
    "figure",
    "img",
    "table",
    "tables",
];

fn excluded_set() -> BTreeSet<&'static str> {
    EXCLUDED_ELEMENTS.iter().copied().collect()
}

/// Extract the four text parts from a parsed record.
///
/// The title comes from the invention-title element. Abstract and
/// description paragraphs come from their p elements, one paragraph per p.
/// Claims yield one paragraph per claim element (or per p when a claim is
/// subdivided). Numbers/math/figures/tables are dropped, whitespace is
/// collapsed to single spaces, and empty paragraphs are removed.
pub fn extract_text_parts(record: &Element) -> DocumentParts {
    let excluded = excluded_set();
    DocumentParts {
        title: record
            .find("invention-title")
            .map(|e| clean_text(&e.text_excluding(&excluded)))
            .unwrap_or_default(),
        abstract_paras: part_paragraphs(record.find("abstract"), &excluded),
        description: part_paragraphs(record.find("description"), &excluded),
        claims: claim_paragraphs(record.find("claims"), &excluded),
    }
}

fn part_paragraphs(part: Option<&Element>, excluded: &BTreeSet<&str>) -> Vec<String> {
    let Some(part) = part else {
        return Vec::new();
    };
    part.descendants("p")
        .iter()
        .map(|p| clean_text(&p.text_excluding(excluded)))
        .filter(|s| !s.is_empty())
        .collect()
}

fn claim_paragraphs(claims: Option<&Element>, excluded: &BTreeSet<&str>) -> Vec<String> {
    let Some(claims) = claims else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for claim in claims.children_named("claim") {
        let ps = claim.descendants("p");
        if ps.is_empty() {
            let text = clean_text(&claim.text_excluding(excluded));
            if !text.is_empty() {
                out.push(text);
            }
        } else {
            out.extend(
                ps.iter()
                    .map(|p| clean_text(&p.text_excluding(excluded)))
                    .filter(|s| !s.is_empty()),
            );
        }
    }
    if out.is_empty() {
        // Claims given as bare p elements without claim wrappers.
        return part_paragraphs(Some(claims), excluded);
    }
    out
}

/// Collapse whitespace runs to single spaces, trim, and drop any angle
/// brackets that survived extraction so output never contains markup.
pub fn clean_text(raw: &str) -> String {
    let no_markup: String = raw.chars().filter(|&c| c != '<' && c != '>').collect();
    no_markup.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::xml::{parse_document, XmlOptions};

    fn extract(body: &str) -> DocumentParts {
        let doc = parse_document(&format!("<doc>{body}</doc>"), &XmlOptions::default()).unwrap();
        extract_text_parts(&doc)
    }

    #[test]
    fn description_paragraphs_in_order() {
        let parts = extract("<description><p>X.</p><p>Y.</p></description>");
        assert_eq!(parts.description, vec!["X.", "Y."]);
    }

    #[test]
    fn claim_number_marker_dropped() {
        let parts = extract(
            "<claims><claim><claim-number>1.</claim-number><claim-text>A device.</claim-text></claim></claims>",
        );
        assert_eq!(parts.claims, vec!["A device."]);
    }

    #[test]
    fn math_and_figures_dropped() {
        let parts = extract(
            "<description><p>Equation <math>x+y=z</math> holds per <figref>FIG. 1</figref>.</p></description>",
        );
        assert_eq!(parts.description, vec!["Equation holds per ."]);
    }

    #[test]
    fn paragraph_numbers_and_tables_dropped() {
        let parts = extract(
            "<description><p><paragraph-number>0001</paragraph-number>Text here.</p><p><table><tr>1 2</tr></table></p></description>",
        );
        assert_eq!(parts.description, vec!["Text here."]);
    }

    #[test]
    fn missing_parts_are_empty() {
        let parts = extract("<description><p>only this</p></description>");
        assert!(parts.title.is_empty());
        assert!(parts.abstract_paras.is_empty());
        assert!(parts.claims.is_empty());
    }

    #[test]
    fn whitespace_collapsed_and_empty_paragraphs_removed() {
        let parts = extract("<abstract><p>  a\n  b\tc  </p><p>   </p></abstract>");
        assert_eq!(parts.abstract_paras, vec!["a b c"]);
    }

    #[test]
    fn title_extracted() {
        let parts = extract("<bib><invention-title>A Widget</invention-title></bib>");
        assert_eq!(parts.title, "A Widget");
    }

    #[test]
    fn no_angle_brackets_survive() {
        let parts = extract("<description><p>a &lt; b &gt; c</p></description>");
        assert_eq!(parts.description, vec!["a b c"]);
        for p in &parts.description {
            assert!(!p.contains('<') && !p.contains('>'));
        }
    }
}
