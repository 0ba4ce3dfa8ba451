//! Parser for DOCDB exchange documents (exch:exchange-document).

use crate::error::{Error, Result};

use super::ids::{id_under, parse_document_id};
use super::types::PriorityRecord;
use super::xml::Element;

/// Parse one exchange-document record into its priority data.
///
/// The subject identifier is read from the exchange-document's own
/// country/doc-number/kind attributes (or its publication-reference as a
/// fallback). Claims come from document-id elements under priority-claims in
/// source order. The application-reference, when present, is kept with its
/// kind letter (A = ordinary application, W = PCT application).
pub fn parse_docdb(root: &Element) -> Result<PriorityRecord> {
    if root.name != "exchange-document" {
        return Err(Error::malformed(format!(
            "expected exchange-document, got <{}>",
            root.name
        )));
    }
    let subject = if root.attr("country").is_some() && root.attr("doc-number").is_some() {
        parse_document_id(root, None)?
    } else {
        let pub_ref = root
            .find("publication-reference")
            .ok_or_else(|| Error::malformed("exchange-document missing own identifiers"))?;
        id_under(pub_ref, None)?
    };

    let mut claims = Vec::new();
    if let Some(pc) = root.find("priority-claims") {
        for child in pc.child_elements() {
            match child.name.as_str() {
                "priority-claim" => {
                    let id = id_under(child, None)?;
                    claims.push(id);
                }
                "document-id" => claims.push(parse_document_id(child, None)?),
                _ => {}
            }
        }
    }

    let application = root
        .find("application-reference")
        .map(|ar| {
            let mut id = id_under(ar, None)?;
            if id.kind.is_none() {
                id.kind = ar.attr("kind").map(str::to_owned);
            }
            Ok::<_, Error>(id)
        })
        .transpose()?;

    Ok(PriorityRecord {
        subject,
        claims,
        application,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::xml::{parse_document, XmlOptions};

    fn parse(xml: &str) -> Result<PriorityRecord> {
        parse_docdb(&parse_document(xml, &XmlOptions::default()).unwrap())
    }

    #[test]
    fn subject_and_one_priority_claim() {
        let rec = parse(
            r#"<exch:exchange-document country="US" doc-number="20210139186" kind="A1">
  <exch:bibliographic-data>
    <exch:priority-claims>
      <exch:priority-claim sequence="1">
        <document-id><country>JP</country><doc-number>2004034567</doc-number><kind>A</kind><date>20040210</date></document-id>
      </exch:priority-claim>
    </exch:priority-claims>
  </exch:bibliographic-data>
</exch:exchange-document>"#,
        )
        .unwrap();
        assert_eq!(rec.subject.country.as_str(), "US");
        assert_eq!(rec.subject.doc_number, "20210139186");
        assert_eq!(rec.claims.len(), 1);
        let claim = &rec.claims[0];
        assert_eq!(claim.country.as_str(), "JP");
        assert_eq!(claim.kind.as_deref(), Some("A"));
        assert_eq!(
            claim.date.unwrap(),
            chrono::NaiveDate::from_ymd_opt(2004, 2, 10).unwrap()
        );
    }

    #[test]
    fn empty_priority_claims() {
        let rec = parse(
            r#"<exch:exchange-document country="US" doc-number="1" kind="A1">
  <exch:bibliographic-data><exch:priority-claims></exch:priority-claims></exch:bibliographic-data>
</exch:exchange-document>"#,
        )
        .unwrap();
        assert!(rec.claims.is_empty());
        assert!(rec.application.is_none());
    }

    #[test]
    fn application_reference_kind_w() {
        let rec = parse(
            r#"<exch:exchange-document country="WO" doc-number="2005075938" kind="A1">
  <exch:bibliographic-data>
    <exch:application-reference exch:kind="W">
      <document-id><country>JP</country><doc-number>2005003817</doc-number></document-id>
    </exch:application-reference>
  </exch:bibliographic-data>
</exch:exchange-document>"#,
        )
        .unwrap();
        assert_eq!(rec.application_kind(), Some("W"));
        let app = rec.application.expect("application present");
        assert_eq!(app.kind.as_deref(), Some("W"));
        assert_eq!(app.doc_number, "2005003817");
    }

    #[test]
    fn claims_preserve_source_order() {
        let rec = parse(
            r#"<exch:exchange-document country="JP" doc-number="9" kind="A">
  <exch:priority-claims>
    <exch:priority-claim><document-id><country>CN</country><doc-number>2</doc-number></document-id></exch:priority-claim>
    <exch:priority-claim><document-id><country>DE</country><doc-number>1</doc-number></document-id></exch:priority-claim>
  </exch:priority-claims>
</exch:exchange-document>"#,
        )
        .unwrap();
        let countries: Vec<_> = rec.claims.iter().map(|c| c.country.as_str()).collect();
        assert_eq!(countries, vec!["CN", "DE"]);
    }

    #[test]
    fn wrong_root_is_malformed() {
        assert!(matches!(
            parse("<other-document/>"),
            Err(Error::MalformedRecord(_))
        ));
    }
}
