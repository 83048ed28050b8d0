//! Plain-text digraph and graph files.
//!
//! ```text
//! # optional comments
//! d <n> <m>
//! <u> <v>        (m arc lines, 0-based)
//! ```
//!
//! Undirected graphs use the header `g <n> <m>` followed by edge lines.
//! Writers emit arcs (edges) in lexicographic order.
//!
//! A compact single-line form, `n=<n>;u>v,u>v,...`, is used by the harness
//! in counterexample reports.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, GraphError};
use crate::graph::UndirectedGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Graph { line, .. } => *line,
        }
    }

    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, message: message.into() }
    }
}

/// Line cursor over significant lines (comments dropped, line numbers kept).
pub(crate) struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate().peekable(), last_line: 0 }
    }

    /// Next non-comment line, blank lines included.
    pub(crate) fn next_raw(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last_line = i + 1;
            let trimmed = line.trim();
            if trimmed.starts_with('#') {
                continue;
            }
            return Some((i + 1, trimmed));
        }
        None
    }

    /// Next non-comment, non-blank line.
    pub(crate) fn next_content(&mut self) -> Option<(usize, &'a str)> {
        while let Some((no, line)) = self.next_raw() {
            if !line.is_empty() {
                return Some((no, line));
            }
        }
        None
    }

    /// Peeks at the next non-comment line without consuming it.
    pub(crate) fn peek_raw(&mut self) -> Option<(usize, &'a str)> {
        while let Some(&(i, line)) = self.inner.peek() {
            let trimmed = line.trim();
            if trimmed.starts_with('#') {
                self.inner.next();
                continue;
            }
            return Some((i + 1, trimmed));
        }
        None
    }

    pub(crate) fn eof_line(&self) -> usize {
        self.last_line + 1
    }
}

fn parse_usize(line: usize, tok: Option<&str>, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| ParseError::syntax(line, format!("invalid {what} `{tok}`")))
}

fn parse_pairs(
    lines: &mut Lines<'_>,
    tag: &str,
    header_line: usize,
    header: &str,
) -> Result<(usize, Vec<(usize, usize)>), ParseError> {
    let mut toks = header.split_whitespace();
    match toks.next() {
        Some(t) if t == tag => {}
        other => {
            return Err(ParseError::syntax(
                header_line,
                format!("expected header `{tag} <n> <m>`, found `{}`", other.unwrap_or("")),
            ))
        }
    }
    let n = parse_usize(header_line, toks.next(), "vertex count")?;
    let m = parse_usize(header_line, toks.next(), "arc count")?;
    if toks.next().is_some() {
        return Err(ParseError::syntax(header_line, "trailing tokens after header"));
    }
    let mut pairs = Vec::with_capacity(m);
    for k in 0..m {
        let Some((no, line)) = lines.next_content() else {
            return Err(ParseError::syntax(lines.eof_line(), format!("truncated: expected {m} pairs, found {k}")));
        };
        let mut toks = line.split_whitespace();
        let u = parse_usize(no, toks.next(), "endpoint")?;
        let v = parse_usize(no, toks.next(), "endpoint")?;
        if toks.next().is_some() {
            return Err(ParseError::syntax(no, "trailing tokens after pair"));
        }
        pairs.push((u, v));
    }
    Ok((n, pairs))
}

/// Parses one `d` block, starting at the next content line.
pub(crate) fn read_digraph_block(lines: &mut Lines<'_>) -> Result<Digraph, ParseError> {
    let Some((header_line, header)) = lines.next_content() else {
        return Err(ParseError::syntax(lines.eof_line(), "missing `d <n> <m>` header"));
    };
    let (n, arcs) = parse_pairs(lines, "d", header_line, header)?;
    Digraph::from_arc_list(n, &arcs).map_err(|source| ParseError::Graph { line: header_line, source })
}

pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = Lines::new(text);
    let d = read_digraph_block(&mut lines)?;
    if let Some((no, _)) = lines.next_content() {
        return Err(ParseError::syntax(no, "unexpected content after digraph block"));
    }
    Ok(d)
}

/// Parses a stream of `d` blocks (as written by the `gen` command).
pub fn parse_digraphs(text: &str) -> Result<Vec<Digraph>, ParseError> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while lines.peek_raw().is_some() {
        if let Some((_, "")) = lines.peek_raw() {
            lines.next_raw();
            continue;
        }
        out.push(read_digraph_block(&mut lines)?);
    }
    Ok(out)
}

pub fn parse_graph(text: &str) -> Result<UndirectedGraph, ParseError> {
    let mut lines = Lines::new(text);
    let Some((header_line, header)) = lines.next_content() else {
        return Err(ParseError::syntax(lines.eof_line(), "missing `g <n> <m>` header"));
    };
    let (n, edges) = parse_pairs(&mut lines, "g", header_line, header)?;
    if let Some((no, _)) = lines.next_content() {
        return Err(ParseError::syntax(no, "unexpected content after graph block"));
    }
    UndirectedGraph::from_edge_list(n, &edges).map_err(|source| ParseError::Graph { line: header_line, source })
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "d {} {}", d.order(), d.arc_count());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_graph(g: &UndirectedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "g {} {}", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Single-line serialization, e.g. `n=3;0>1,1>2,2>0`.
pub fn to_compact(d: &Digraph) -> String {
    let mut out = format!("n={};", d.order());
    for (i, (u, v)) in d.arcs().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{u}>{v}");
    }
    out
}

pub fn from_compact(s: &str) -> Result<Digraph, ParseError> {
    let bad = |msg: &str| ParseError::syntax(1, msg.to_string());
    let rest = s.trim().strip_prefix("n=").ok_or_else(|| bad("expected `n=`"))?;
    let (n, arcs) = rest.split_once(';').ok_or_else(|| bad("expected `;`"))?;
    let n: usize = n.parse().map_err(|_| bad("invalid vertex count"))?;
    let mut list = Vec::new();
    for tok in arcs.split(',').filter(|t| !t.is_empty()) {
        let (u, v) = tok.split_once('>').ok_or_else(|| bad("expected `u>v`"))?;
        let u = u.parse().map_err(|_| bad("invalid endpoint"))?;
        let v = v.parse().map_err(|_| bad("invalid endpoint"))?;
        list.push((u, v));
    }
    Digraph::from_arc_list(n, &list).map_err(|source| ParseError::Graph { line: 1, source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let text = "# triangle\n d 3 3\n0 1\n\n2 0\n1 2\n";
        let d = parse_digraph(text).unwrap();
        assert_eq!(d.arc_count(), 3);
        assert_eq!(write_digraph(&d), "d 3 3\n0 1\n1 2\n2 0\n");
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_digraph("d 3 2\n0 1\n").unwrap_err();
        assert_eq!(err.line(), 3);
        let err = parse_digraph("d 3 2\n0 1\n1 x\n").unwrap_err();
        assert_eq!(err.line(), 3);
        let err = parse_digraph("d 2 1\n1 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Graph { source: GraphError::LoopArc(1), .. }));
        assert!(parse_digraph("g 2 1\n0 1\n").is_err());
        assert!(parse_digraph("").is_err());
        assert!(parse_digraph("d 2 1\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn undirected_round_trip() {
        let g = parse_graph("g 3 2\n2 1\n0 1\n").unwrap();
        assert_eq!(write_graph(&g), "g 3 2\n0 1\n1 2\n");
    }

    #[test]
    fn digraph_streams() {
        let ds = parse_digraphs("d 2 1\n0 1\n\nd 2 1\n1 0\n\n").unwrap();
        assert_eq!(ds.len(), 2);
        assert!(ds[1].has_arc(1, 0));
    }

    #[test]
    fn compact_form() {
        let d = Digraph::from_arc_list(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(to_compact(&d), "n=3;0>1,2>0");
        assert_eq!(from_compact("n=3;0>1,2>0").unwrap(), d);
        assert_eq!(from_compact("n=2;").unwrap().arc_count(), 0);
    }

    fn arb_digraph() -> impl Strategy<Value = Digraph> {
        (1usize..12).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.3), n * n).prop_map(move |bits| {
                let arcs: Vec<_> = (0..n * n).filter(|&i| bits[i] && i / n != i % n).map(|i| (i / n, i % n)).collect();
                Digraph::from_arc_list(n, &arcs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn text_and_compact_round_trip(d in arb_digraph()) {
            prop_assert_eq!(parse_digraph(&write_digraph(&d)).unwrap(), d.clone());
            prop_assert_eq!(from_compact(&to_compact(&d)).unwrap(), d);
        }
    }
}
