//! Parser for USPTO application full-text records (us-patent-application).

use crate::error::{Error, Result};

use super::ids::{collect_ipc, id_under};
use super::text::extract_text_parts;
use super::types::{Office, PatentDocument};
use super::xml::Element;

/// Parse one us-patent-application record.
///
/// Application and publication identifiers come from the reference elements
/// under us-bibliographic-data-application. A pct-or-regional-filing-data
/// element whose doc-number begins with "PCT" marks a PCT application and
/// supplies its application number; other regional filing data is ignored.
pub fn parse_uspto(root: &Element) -> Result<PatentDocument> {
    if root.name != "us-patent-application" {
        return Err(Error::malformed(format!(
            "expected us-patent-application, got <{}>",
            root.name
        )));
    }
    let biblio = root.find("us-bibliographic-data-application").ok_or_else(|| {
        Error::malformed("us-patent-application missing us-bibliographic-data-application")
    })?;
    let publication = biblio
        .child("publication-reference")
        .map(|e| id_under(e, Some("US")))
        .transpose()?
        .ok_or_else(|| Error::malformed("us-patent-application missing publication-reference"))?;
    let application = biblio
        .child("application-reference")
        .map(|e| id_under(e, Some("US")))
        .transpose()?
        .ok_or_else(|| Error::malformed("us-patent-application missing application-reference"))?;
    let pct_filing = biblio
        .child("pct-or-regional-filing-data")
        .map(|e| id_under(e, Some("WO")))
        .transpose()?
        .filter(|id| id.doc_number.starts_with("PCT"));
    let pct_publication = biblio
        .child("pct-or-regional-publishing-data")
        .map(|e| id_under(e, Some("WO")))
        .transpose()?;

    Ok(PatentDocument {
        office: Office::Uspto,
        gazette_kind: None,
        publication,
        application,
        pct_filing,
        pct_publication,
        ipc_codes: collect_ipc(biblio),
        parts: extract_text_parts(root),
    })
}
