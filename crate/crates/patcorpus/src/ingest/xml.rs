//! Minimal XML reader for the record subsets documented in docs/formats.md.
//!
//! Bulk patent files are concatenated XML documents, each with its own
//! declaration, so this reader accepts any number of top-level elements per
//! input. It builds a small element tree, strips namespace prefixes (element
//! and attribute names are matched by local name), decodes the predefined
//! entities plus numeric character references, and skips comments,
//! processing instructions, and DOCTYPE blocks. It is not a validating
//! parser and does not resolve external entities.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// One parsed element: local name, attributes, ordered children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub children: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Element(Element),
    Text(String),
}

impl Element {
    /// First direct child element with the given local name.
    pub fn child(&self, name: &str) -> Option<&Element> {
        self.child_elements().find(|e| e.name == name)
    }

    /// All direct child elements with the given local name.
    pub fn children_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Element> + 'a {
        self.child_elements().filter(move |e| e.name == name)
    }

    pub fn child_elements(&self) -> impl Iterator<Item = &Element> {
        self.children.iter().filter_map(|n| match n {
            Node::Element(e) => Some(e),
            Node::Text(_) => None,
        })
    }

    /// First matching descendant, depth-first, self excluded.
    pub fn find(&self, name: &str) -> Option<&Element> {
        for child in self.child_elements() {
            if child.name == name {
                return Some(child);
            }
            if let Some(hit) = child.find(name) {
                return Some(hit);
            }
        }
        None
    }

    /// All matching descendants in document order, self excluded.
    pub fn descendants<'a>(&'a self, name: &'a str) -> Vec<&'a Element> {
        let mut out = Vec::new();
        self.collect_descendants(name, &mut out);
        out
    }

    fn collect_descendants<'a>(&'a self, name: &'a str, out: &mut Vec<&'a Element>) {
        for child in self.child_elements() {
            if child.name == name {
                out.push(child);
            }
            child.collect_descendants(name, out);
        }
    }

    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    /// Concatenated text of this element and all descendants.
    pub fn text(&self) -> String {
        let mut out = String::new();
        self.push_text(&mut out);
        out
    }

    fn push_text(&self, out: &mut String) {
        for node in &self.children {
            match node {
                Node::Text(t) => out.push_str(t),
                Node::Element(e) => e.push_text(out),
            }
        }
    }

    /// Like `text`, but skipping descendants whose local name is excluded.
    pub fn text_excluding(&self, excluded: &BTreeSet<&str>) -> String {
        let mut out = String::new();
        self.push_text_excluding(excluded, &mut out);
        out
    }

    fn push_text_excluding(&self, excluded: &BTreeSet<&str>, out: &mut String) {
        for node in &self.children {
            match node {
                Node::Text(t) => out.push_str(t),
                Node::Element(e) => {
                    if !excluded.contains(e.name.as_str()) {
                        e.push_text_excluding(excluded, out);
                    }
                }
            }
        }
    }
}

/// Reader configuration.
///
/// `accepted_prefixes`: `None` accepts any namespace prefix (the default;
/// names are always matched by local part). `Some(set)` keeps only
/// unprefixed elements and elements whose prefix is in the set; other
/// subtrees are skipped like any unknown element.
#[derive(Debug, Clone, Default)]
pub struct XmlOptions {
    pub accepted_prefixes: Option<BTreeSet<String>>,
}

const MAX_DEPTH: usize = 64;

/// Parse a string holding one or more concatenated XML documents and return
/// the top-level elements in order.
pub fn parse_documents(input: &str, opts: &XmlOptions) -> Result<Vec<Element>> {
    let mut parser = Parser {
        bytes: input.as_bytes(),
        pos: 0,
        opts,
    };
    let mut roots = Vec::new();
    loop {
        parser.skip_misc();
        if parser.at_end() {
            return Ok(roots);
        }
        if !parser.peek_is(b'<') {
            return Err(parser.err("text outside of any element"));
        }
        if let Some(elem) = parser.parse_element(0)? {
            roots.push(elem);
        }
    }
}

/// Parse exactly one document; errors when the input is empty.
pub fn parse_document(input: &str, opts: &XmlOptions) -> Result<Element> {
    let mut roots = parse_documents(input, opts)?;
    match roots.len() {
        0 => Err(Error::malformed("no XML element in input")),
        _ => Ok(roots.swap_remove(0)),
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    opts: &'a XmlOptions,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::malformed(format!("{msg} at byte {}", self.pos))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek_is(&self, b: u8) -> bool {
        self.bytes.get(self.pos) == Some(&b)
    }

    fn starts_with(&self, s: &[u8]) -> bool {
        self.bytes[self.pos..].starts_with(s)
    }

    fn skip_ws(&mut self) {
        while let Some(b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Skip whitespace, BOM, declarations, PIs, comments, and DOCTYPE.
    fn skip_misc(&mut self) {
        loop {
            if self.starts_with("\u{feff}".as_bytes()) {
                self.pos += 3;
                continue;
            }
            self.skip_ws();
            if self.starts_with(b"<?") {
                self.skip_until(b"?>");
            } else if self.starts_with(b"<!--") {
                self.skip_until(b"-->");
            } else if self.starts_with(b"<!DOCTYPE") {
                self.skip_doctype();
            } else {
                return;
            }
        }
    }

    fn skip_until(&mut self, end: &[u8]) {
        while self.pos < self.bytes.len() {
            if self.starts_with(end) {
                self.pos += end.len();
                return;
            }
            self.pos += 1;
        }
    }

    fn skip_doctype(&mut self) {
        // May contain an internal subset in brackets.
        let mut in_subset = false;
        while let Some(&b) = self.bytes.get(self.pos) {
            self.pos += 1;
            match b {
                b'[' => in_subset = true,
                b']' => in_subset = false,
                b'>' if !in_subset => return,
                _ => {}
            }
        }
    }

    /// Parse the element starting at `<`. Returns `None` when the element's
    /// namespace prefix is not accepted (the subtree is consumed anyway).
    fn parse_element(&mut self, depth: usize) -> Result<Option<Element>> {
        if depth > MAX_DEPTH {
            return Err(self.err("element nesting too deep"));
        }
        debug_assert!(self.peek_is(b'<'));
        self.pos += 1;
        let raw_name = self.read_name()?;
        let (accepted, local) = self.split_name(&raw_name);
        let mut elem = Element {
            name: local,
            attrs: Vec::new(),
            children: Vec::new(),
        };

        // Attributes.
        loop {
            self.skip_ws();
            match self.bytes.get(self.pos) {
                Some(b'/') => {
                    self.pos += 1;
                    if !self.peek_is(b'>') {
                        return Err(self.err("expected '>' after '/'"));
                    }
                    self.pos += 1;
                    return Ok(accepted.then_some(elem));
                }
                Some(b'>') => {
                    self.pos += 1;
                    break;
                }
                Some(_) => {
                    let attr_name = self.read_name()?;
                    self.skip_ws();
                    if !self.peek_is(b'=') {
                        return Err(self.err("expected '=' in attribute"));
                    }
                    self.pos += 1;
                    self.skip_ws();
                    let value = self.read_quoted()?;
                    let (_, local_attr) = self.split_name(&attr_name);
                    if local_attr != "xmlns" && !attr_name.starts_with("xmlns:") {
                        elem.attrs.push((local_attr, decode_entities(&value)));
                    }
                }
                None => return Err(self.err("unexpected end of input in tag")),
            }
        }

        // Children until the matching end tag.
        let mut text = String::new();
        loop {
            if self.at_end() {
                return Err(self.err("unexpected end of input in element"));
            }
            if self.peek_is(b'<') {
                if !text.is_empty() {
                    elem.children.push(Node::Text(std::mem::take(&mut text)));
                }
                if self.starts_with(b"</") {
                    self.pos += 2;
                    let end_name = self.read_name()?;
                    self.skip_ws();
                    if !self.peek_is(b'>') {
                        return Err(self.err("expected '>' in end tag"));
                    }
                    self.pos += 1;
                    if end_name != raw_name {
                        return Err(self.err(&format!(
                            "end tag </{end_name}> does not match <{raw_name}>"
                        )));
                    }
                    return Ok(accepted.then_some(elem));
                } else if self.starts_with(b"<!--") {
                    self.skip_until(b"-->");
                } else if self.starts_with(b"<![CDATA[") {
                    self.pos += 9;
                    let start = self.pos;
                    self.skip_until(b"]]>");
                    let end = self.pos.saturating_sub(3).max(start);
                    text.push_str(&String::from_utf8_lossy(&self.bytes[start..end]));
                } else if self.starts_with(b"<?") {
                    self.skip_until(b"?>");
                } else if let Some(child) = self.parse_element(depth + 1)? {
                    elem.children.push(Node::Element(child));
                }
            } else {
                let start = self.pos;
                while self.pos < self.bytes.len() && !self.peek_is(b'<') {
                    self.pos += 1;
                }
                let chunk = std::str::from_utf8(&self.bytes[start..self.pos])
                    .map_err(|_| self.err("invalid UTF-8 in text"))?;
                text.push_str(&decode_entities(chunk));
            }
        }
    }

    fn read_name(&mut self) -> Result<String> {
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() || b == b'>' || b == b'/' || b == b'=' {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("empty name"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .map(str::to_owned)
            .map_err(|_| self.err("invalid UTF-8 in name"))
    }

    fn read_quoted(&mut self) -> Result<String> {
        let quote = match self.bytes.get(self.pos) {
            Some(&q @ (b'"' | b'\'')) => q,
            _ => return Err(self.err("expected quoted attribute value")),
        };
        self.pos += 1;
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == quote {
                let value = std::str::from_utf8(&self.bytes[start..self.pos])
                    .map_err(|_| self.err("invalid UTF-8 in attribute"))?
                    .to_owned();
                self.pos += 1;
                return Ok(value);
            }
            self.pos += 1;
        }
        Err(self.err("unterminated attribute value"))
    }

    /// Split a raw name into (prefix accepted?, local part).
    fn split_name(&self, raw: &str) -> (bool, String) {
        match raw.split_once(':') {
            Some((prefix, local)) => {
                let accepted = match &self.opts.accepted_prefixes {
                    None => true,
                    Some(set) => set.contains(prefix),
                };
                (accepted, local.to_owned())
            }
            None => (true, raw.to_owned()),
        }
    }
}

/// Decode the predefined entities and numeric character references.
/// Unrecognized entities are kept verbatim.
fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return s.to_owned();
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        rest = &rest[amp..];
        let semi = match rest.find(';') {
            Some(i) if i <= 12 => i,
            _ => {
                out.push('&');
                rest = &rest[1..];
                continue;
            }
        };
        let entity = &rest[1..semi];
        let decoded = match entity {
            "amp" => Some('&'),
            "lt" => Some('<'),
            "gt" => Some('>'),
            "quot" => Some('"'),
            "apos" => Some('\''),
            _ => entity
                .strip_prefix('#')
                .and_then(|num| {
                    if let Some(hex) = num.strip_prefix('x').or_else(|| num.strip_prefix('X')) {
                        u32::from_str_radix(hex, 16).ok()
                    } else {
                        num.parse::<u32>().ok()
                    }
                })
                .and_then(char::from_u32),
        };
        match decoded {
            Some(c) => {
                out.push(c);
                rest = &rest[semi + 1..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}
