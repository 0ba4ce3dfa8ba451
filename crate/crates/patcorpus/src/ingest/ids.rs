//! Shared helpers for reading document-id fields, which the sources carry
//! either as attributes or as child elements.

use crate::error::{Error, Result};

use super::types::{normalize_ipc, parse_compact_date, DocumentIdentifier};
use super::xml::Element;

/// Read a named field from an attribute, falling back to a direct child
/// element's text. Empty values count as absent.
fn field(e: &Element, name: &str) -> Option<String> {
    if let Some(v) = e.attr(name) {
        let v = v.trim();
        if !v.is_empty() {
            return Some(v.to_owned());
        }
    }
    e.child(name)
        .map(|c| c.text().trim().to_owned())
        .filter(|s| !s.is_empty())
}

/// Parse a document-id from an element carrying country/doc-number/kind/date
/// fields. `default_country` fills in a missing country when the schema
/// implies one.
pub(crate) fn parse_document_id(
    e: &Element,
    default_country: Option<&str>,
) -> Result<DocumentIdentifier> {
    let country = field(e, "country")
        .or_else(|| default_country.map(str::to_owned))
        .ok_or_else(|| Error::malformed(format!("<{}> missing country", e.name)))?;
    let doc_number = field(e, "doc-number")
        .ok_or_else(|| Error::malformed(format!("<{}> missing doc-number", e.name)))?;
    let mut id = DocumentIdentifier::new(&country, &doc_number)?;
    id.kind = field(e, "kind");
    if let Some(date) = field(e, "date") {
        id.date = Some(parse_compact_date(&date)?);
    }
    Ok(id)
}

/// Parse the document-id found under a reference element, or from the
/// reference element's own attributes when it has no document-id child.
pub(crate) fn id_under(parent: &Element, default_country: Option<&str>) -> Result<DocumentIdentifier> {
    match parent.child("document-id") {
        Some(id) => parse_document_id(id, default_country),
        None => parse_document_id(parent, default_country),
    }
}

/// Collect IPC symbols from classification-ipcr elements (text child or
/// element text), keeping only symbols that match the IPC grammar,
/// deduplicated in document order.
pub(crate) fn collect_ipc(scope: &Element) -> Vec<String> {
    let mut seen = Vec::new();
    for c in scope.descendants("classification-ipcr") {
        let raw = match c.child("text") {
            Some(t) => t.text(),
            None => c.text(),
        };
        if let Some(code) = normalize_ipc(&raw) {
            if !seen.contains(&code) {
                seen.push(code);
            }
        }
    }
    seen
}
