//! Parser for JPO gazette records (jp-official-gazette).

use crate::error::{Error, Result};

use super::ids::{collect_ipc, id_under};
use super::text::extract_text_parts;
use super::types::{GazetteKind, Office, PatentDocument};
use super::xml::Element;

/// Parse one jp-official-gazette record.
///
/// The kind-of-jp attribute selects the gazette type. Publication and
/// application identifiers come from the reference elements under
/// bibliographic-data; translation gazettes (kind T) must also carry the PCT
/// filing and publishing data.
pub fn parse_jpo(root: &Element) -> Result<PatentDocument> {
    if root.name != "jp-official-gazette" {
        return Err(Error::malformed(format!(
            "expected jp-official-gazette, got <{}>",
            root.name
        )));
    }
    let kind = root
        .attr("kind-of-jp")
        .ok_or_else(|| Error::malformed("jp-official-gazette missing kind-of-jp"))?;
    let gazette_kind = GazetteKind::from_letter(kind)?;

    let biblio = root
        .find("bibliographic-data")
        .ok_or_else(|| Error::malformed("jp-official-gazette missing bibliographic-data"))?;
    let publication = biblio
        .child("publication-reference")
        .map(|e| id_under(e, Some("JP")))
        .transpose()?
        .ok_or_else(|| Error::malformed("jp-official-gazette missing publication-reference"))?;
    let application = biblio
        .child("application-reference")
        .map(|e| id_under(e, Some("JP")))
        .transpose()?
        .ok_or_else(|| Error::malformed("jp-official-gazette missing application-reference"))?;
    let pct_filing = biblio
        .child("pct-or-regional-filing-data")
        .map(|e| id_under(e, Some("WO")))
        .transpose()?;
    let pct_publication = biblio
        .child("pct-or-regional-publishing-data")
        .map(|e| id_under(e, Some("WO")))
        .transpose()?;
    if gazette_kind == GazetteKind::PctTranslation
        && (pct_filing.is_none() || pct_publication.is_none())
    {
        return Err(Error::malformed(
            "kind-of-jp T record missing pct-or-regional filing/publishing data",
        ));
    }

    Ok(PatentDocument {
        office: Office::Jpo,
        gazette_kind: Some(gazette_kind),
        publication,
        application,
        pct_filing,
        pct_publication,
        ipc_codes: collect_ipc(biblio),
        parts: extract_text_parts(root),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::xml::{parse_document, XmlOptions};

    fn record(kind: &str, extra_biblio: &str) -> String {
        format!(
            r#"<jp-official-gazette lang="ja" country="JP" kind-of-jp="{kind}">
  <bibliographic-data>
    <publication-reference>
      <document-id><country>JP</country><doc-number>2021000998</doc-number><kind>A</kind><date>20210107</date></document-id>
    </publication-reference>
    <application-reference>
      <document-id><country>JP</country><doc-number>2019120778</doc-number><date>20190628</date></document-id>
    </application-reference>
    {extra_biblio}
    <classification-ipcr><text>G06F 17/30</text></classification-ipcr>
  </bibliographic-data>
  <invention-title>試験装置</invention-title>
  <abstract><p>要約の文。</p></abstract>
  <description><p><paragraph-number>0001</paragraph-number>説明の文。</p></description>
  <claims><claim><claim-number>1.</claim-number><claim-text>請求項の文。</claim-text></claim></claims>
</jp-official-gazette>"#
        )
    }

    fn parse(xml: &str) -> Result<PatentDocument> {
        parse_jpo(&parse_document(xml, &XmlOptions::default()).unwrap())
    }

    #[test]
    fn kind_a_record() {
        let doc = parse(&record("A", "")).unwrap();
        assert_eq!(doc.gazette_kind, Some(GazetteKind::PublishedApplication));
        assert_eq!(doc.publication.doc_number, "2021000998");
        assert_eq!(doc.application.doc_number, "2019120778");
        assert!(doc.pct_filing.is_none());
        assert_eq!(doc.ipc_codes, vec!["G06F 17/30"]);
        assert_eq!(doc.parts.title, "試験装置");
        assert_eq!(doc.parts.description, vec!["説明の文。"]);
        assert_eq!(doc.parts.claims, vec!["請求項の文。"]);
    }

    #[test]
    fn kind_t_record_carries_pct_numbers() {
        let pct = r#"<pct-or-regional-filing-data>
      <document-id><country>WO</country><doc-number>WO2005003817</doc-number><date>20050210</date></document-id>
    </pct-or-regional-filing-data>
    <pct-or-regional-publishing-data>
      <document-id><country>WO</country><doc-number>WO2005075938</doc-number></document-id>
    </pct-or-regional-publishing-data>"#;
        let doc = parse(&record("T", pct)).unwrap();
        assert_eq!(doc.gazette_kind, Some(GazetteKind::PctTranslation));
        assert_eq!(doc.pct_filing.as_ref().unwrap().doc_number, "WO2005003817");
        assert_eq!(
            doc.pct_publication.as_ref().unwrap().doc_number,
            "WO2005075938"
        );
    }

    #[test]
    fn kind_t_without_pct_data_is_malformed() {
        assert!(matches!(
            parse(&record("T", "")),
            Err(Error::MalformedRecord(_))
        ));
    }

    #[test]
    fn unknown_kind_rejected() {
        assert!(matches!(parse(&record("Z", "")), Err(Error::UnknownKind(k)) if k == "Z"));
    }

    #[test]
    fn missing_publication_reference_is_malformed() {
        let xml = r#"<jp-official-gazette kind-of-jp="A"><bibliographic-data>
          <application-reference><document-id><country>JP</country><doc-number>1</doc-number></document-id></application-reference>
        </bibliographic-data></jp-official-gazette>"#;
        assert!(matches!(parse(xml), Err(Error::MalformedRecord(_))));
    }
}
