//! Forbidden-subdigraph machinery: patterns, matching, canonical forms,
//! and derived obstruction catalogs for in-regular hosts.

mod canon;
mod catalog;
mod matcher;
mod obstructions;

use std::fmt;

use thiserror::Error;

use crate::digraph::Digraph;
use crate::vertex_set::VertexSet;

pub use canon::{canonical_form, CanonicalForm, CANONICAL_MAX_VERTICES};
pub use catalog::{catalog_read, catalog_write, parse_catalog, write_catalog};
pub use matcher::{contains_subdigraph, find_embeddings, MatchMode};
pub use obstructions::{enumerate_obstructions, obstruction_size_bound};

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("pattern `{0}` has no arcs")]
    NoArcs(String),
    #[error("pattern `{name}`: {reason}")]
    BadAnchors { name: String, reason: String },
    #[error("{n} vertices exceeds the canonical-form limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("size cap {max_size} is below the bound {bound} needed for d={d}, ell={ell}")]
    SizeCapTooSmall { d: usize, ell: usize, max_size: usize, bound: usize },
    #[error("invalid enumeration parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Parse(#[from] crate::format::ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A pair of witness roles inside a pattern body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Anchors {
    pub x: VertexSet,
    pub y: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    body: Digraph,
    anchors: Option<Anchors>,
}

impl Pattern {
    pub fn new(name: impl Into<String>, body: Digraph, anchors: Option<Anchors>) -> Result<Self, PatternError> {
        let name = name.into();
        if body.arc_count() == 0 {
            return Err(PatternError::NoArcs(name));
        }
        if let Some(a) = &anchors {
            let bad = |reason: &str| PatternError::BadAnchors { name: name.clone(), reason: reason.into() };
            if a.x.ambient() != body.order() || a.y.ambient() != body.order() {
                return Err(bad("anchor sets do not match the body order"));
            }
            if a.x.is_empty() || a.y.is_empty() {
                return Err(bad("anchor sets must be nonempty"));
            }
            if a.x == a.y {
                return Err(bad("anchor sets must differ"));
            }
            if body.closed_in_neighborhood(&a.x) != body.closed_in_neighborhood(&a.y) {
                return Err(bad("anchor sets have different closed in-neighborhoods"));
            }
        }
        Ok(Pattern { name, body, anchors })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn body(&self) -> &Digraph {
        &self.body
    }

    pub fn anchors(&self) -> Option<&Anchors> {
        self.anchors.as_ref()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} vertices, {} arcs)", self.name, self.body.order(), self.body.arc_count())?;
        if let Some(a) = &self.anchors {
            write!(f, " X={} Y={}", a.x, a.y)?;
        }
        Ok(())
    }
}

/// Transitive tournament on `a, b, c`: arcs `(a,b), (a,c), (b,c)`.
pub fn tt3() -> Pattern {
    let body = Digraph::from_arc_list(3, &[(0, 1), (0, 2), (1, 2)]).expect("static arcs");
    Pattern::new("TT3", body, None).expect("static pattern")
}

/// Two vertices `u, v` sharing two in-neighbors `w1, w2`.
/// Vertices are `w1=0, w2=1, u=2, v=3`.
pub fn f2() -> Pattern {
    let body = Digraph::from_arc_list(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).expect("static arcs");
    Pattern::new("F2", body, None).expect("static pattern")
}

pub fn builtin_patterns() -> Vec<Pattern> {
    vec![tt3(), f2()]
}

pub fn builtin_by_name(name: &str) -> Option<Pattern> {
    builtin_patterns().into_iter().find(|p| p.name.eq_ignore_ascii_case(name))
}

/// Injective arc-preserving maps of `pattern`'s body into `host`.
pub fn match_pattern(host: &Digraph, pattern: &Pattern, mode: MatchMode) -> Vec<Vec<usize>> {
    find_embeddings(host, &pattern.body, mode)
}

pub fn contains_pattern(host: &Digraph, pattern: &Pattern) -> bool {
    contains_subdigraph(host, &pattern.body)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Derived,
    UserSupplied,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Derived => "derived",
            Provenance::UserSupplied => "user",
        }
    }
}

/// Minimal anchored obstructions for `d`-in-regular hosts at parameter
/// `ell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCatalog {
    pub d: usize,
    pub ell: usize,
    pub members: Vec<Pattern>,
    pub provenance: Provenance,
}

impl ObstructionCatalog {
    /// First member contained in `host`, if any.
    pub fn first_match<'a>(&'a self, host: &Digraph) -> Option<(&'a Pattern, Vec<usize>)> {
        self.members
            .iter()
            .find_map(|p| match_pattern(host, p, MatchMode::FirstOnly).into_iter().next().map(|m| (p, m)))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
