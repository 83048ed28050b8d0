//! Catalog files.
//!
//! ```text
//! catalog d=2 ell=2 provenance=derived
//!
//! pattern obs-2-2-01
//! d 3 4
//! 0 1
//! ...
//! anchorX 0
//! anchorY 1
//! ```
//!
//! Records are separated by blank lines; anchor lines are optional.

use std::fmt::Write as _;
use std::path::Path;

use super::{Anchors, ObstructionCatalog, Pattern, PatternError, Provenance};
use crate::format::{read_digraph_block, Lines, ParseError};
use crate::vertex_set::VertexSet;

pub fn write_catalog(catalog: &ObstructionCatalog) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "catalog d={} ell={} provenance={}", catalog.d, catalog.ell, catalog.provenance.as_str());
    for p in &catalog.members {
        out.push('\n');
        let _ = writeln!(out, "pattern {}", p.name());
        out.push_str(&crate::format::write_digraph(p.body()));
        if let Some(a) = p.anchors() {
            let list = |s: &VertexSet| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "anchorX {}", list(&a.x));
            let _ = writeln!(out, "anchorY {}", list(&a.y));
        }
    }
    out
}

fn header_field<'a>(line: usize, tok: Option<&'a str>, key: &str) -> Result<&'a str, ParseError> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| ParseError::syntax(line, format!("expected `{key}=...` in catalog header")))
}

fn parse_anchor(line: usize, rest: &str, n: usize) -> Result<VertexSet, ParseError> {
    let mut set = VertexSet::new(n);
    for tok in rest.split_whitespace() {
        let v: usize = tok.parse().map_err(|_| ParseError::syntax(line, format!("invalid anchor vertex `{tok}`")))?;
        if v >= n {
            return Err(ParseError::syntax(line, format!("anchor vertex {v} out of range")));
        }
        set.insert(v);
    }
    Ok(set)
}

pub fn parse_catalog(text: &str) -> Result<ObstructionCatalog, PatternError> {
    let mut lines = Lines::new(text);
    let Some((hl, header)) = lines.next_content() else {
        return Err(ParseError::syntax(1, "empty catalog").into());
    };
    let mut toks = header.split_whitespace();
    if toks.next() != Some("catalog") {
        return Err(ParseError::syntax(hl, "expected `catalog` header").into());
    }
    let d = header_field(hl, toks.next(), "d")?.parse().map_err(|_| ParseError::syntax(hl, "invalid d"))?;
    let ell = header_field(hl, toks.next(), "ell")?.parse().map_err(|_| ParseError::syntax(hl, "invalid ell"))?;
    let provenance = match header_field(hl, toks.next(), "provenance")? {
        "derived" => Provenance::Derived,
        "user" => Provenance::UserSupplied,
        other => return Err(ParseError::syntax(hl, format!("unknown provenance `{other}`")).into()),
    };

    let mut members = Vec::new();
    while let Some((no, line)) = lines.next_content() {
        let name = line
            .strip_prefix("pattern")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .map(str::trim)
            .filter(|name| !name.is_empty())
            .ok_or_else(|| ParseError::syntax(no, "expected `pattern <name>`"))?;
        let body = read_digraph_block(&mut lines)?;
        let n = body.order();
        let mut ax = None;
        let mut ay = None;
        while let Some((no, line)) = lines.peek_raw() {
            if let Some(rest) = line.strip_prefix("anchorX") {
                lines.next_raw();
                ax = Some(parse_anchor(no, rest, n)?);
            } else if let Some(rest) = line.strip_prefix("anchorY") {
                lines.next_raw();
                ay = Some(parse_anchor(no, rest, n)?);
            } else {
                break;
            }
        }
        let anchors = match (ax, ay) {
            (Some(x), Some(y)) => Some(Anchors { x, y }),
            (None, None) => None,
            _ => return Err(ParseError::syntax(no, "anchorX and anchorY must appear together").into()),
        };
        members.push(Pattern::new(name, body, anchors)?);
    }
    Ok(ObstructionCatalog { d, ell, members, provenance })
}

pub fn catalog_write(catalog: &ObstructionCatalog, path: &Path) -> Result<(), PatternError> {
    std::fs::write(path, write_catalog(catalog))?;
    Ok(())
}

pub fn catalog_read(path: &Path) -> Result<ObstructionCatalog, PatternError> {
    let text = std::fs::read_to_string(path)?;
    parse_catalog(&text)
}
