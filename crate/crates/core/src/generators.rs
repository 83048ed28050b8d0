//! Digraph families: fixed constructions, exhaustive labeled enumerators
//! and seeded random generators.
//!
//! Enumerators are indexable: the `i`-th digraph can be built directly,
//! which lets callers shard a range across workers. Order is lexicographic
//! on the vector `(N⁻(0), .., N⁻(n-1))`, where the in-neighborhood options
//! of each vertex are listed in a fixed per-family order.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::{Digraph, DigraphBuilder};
use crate::graph::UndirectedGraph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("{family}: {reason}")]
    BadSize { family: &'static str, reason: String },
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("invalid generator spec: {0}")]
    BadSpec(String),
}

fn bad_size(family: &'static str, reason: impl Into<String>) -> GeneratorError {
    GeneratorError::BadSize { family, reason: reason.into() }
}

/// `v0 → v1 → .. → v(n-1) → v0`.
pub fn directed_cycle(n: usize) -> Result<Digraph, GeneratorError> {
    if n < 2 {
        return Err(bad_size("cycle", format!("need n >= 2, got {n}")));
    }
    let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Digraph::from_arc_list(n, &arcs).expect("cycle arcs are valid"))
}

/// Labeled digraphs where vertex `v` picks its in-neighborhood from
/// `options[v]`.
#[derive(Debug, Clone)]
pub struct Enumeration {
    n: usize,
    options: Vec<Vec<VertexSet>>,
    total: u64,
    next: u64,
    end: u64,
}

impl Enumeration {
    fn new(n: usize, options: Vec<Vec<VertexSet>>) -> Self {
        let total = options.iter().map(|o| o.len() as u64).product();
        Enumeration { n, options, total, next: 0, end: total }
    }

    /// Number of digraphs in the full enumeration.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// The digraph at position `index` of the full enumeration.
    pub fn get(&self, index: u64) -> Option<Digraph> {
        if index >= self.total {
            return None;
        }
        let mut builder = DigraphBuilder::new(self.n).expect("order already validated");
        let mut rest = index;
        for v in (0..self.n).rev() {
            let k = self.options[v].len() as u64;
            builder.set_in_neighbors(v, &self.options[v][(rest % k) as usize]).expect("options exclude loops");
            rest /= k;
        }
        Some(builder.build())
    }

    /// Restricts iteration to positions `start..end` of the full
    /// enumeration.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.total);
        self.next = start.min(self.end);
        self
    }
}

impl Iterator for Enumeration {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        if self.next >= self.end {
            return None;
        }
        let d = self.get(self.next);
        self.next += 1;
        d
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Enumeration {}

/// `k`-subsets of `pool` in lexicographic order of sorted elements.
fn k_subsets(n: usize, pool: &[usize], k: usize) -> Vec<VertexSet> {
    fn rec(n: usize, pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<VertexSet>) {
        if cur.len() == k {
            out.push(VertexSet::from_indices(n, cur.iter().copied()));
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(n, pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, pool, k, 0, &mut Vec::new(), &mut out);
    out
}

fn others(n: usize, v: usize) -> Vec<usize> {
    (0..n).filter(|&u| u != v).collect()
}

/// All `C(n-1, d)^n` labeled digraphs in which every in-neighborhood has
/// exactly `d` vertices. Requires `1 <= d < n <= 7`.
pub fn enumerate_d_in_regular(n: usize, d: usize) -> Result<Enumeration, GeneratorError> {
    if !(1..=7).contains(&n) || d == 0 || d >= n {
        return Err(bad_size("d-in-regular", format!("need 1 <= d < n <= 7, got n={n}, d={d}")));
    }
    Ok(in_regular(n, d))
}

fn in_regular(n: usize, d: usize) -> Enumeration {
    let options = (0..n).map(|v| k_subsets(n, &others(n, v), d)).collect();
    Enumeration::new(n, options)
}

/// All `(n-1)^n` labeled digraphs in which every vertex has exactly one
/// in-neighbor. Requires `2 <= n <= 8`.
pub fn enumerate_one_in_regular(n: usize) -> Result<Enumeration, GeneratorError> {
    if !(2..=8).contains(&n) {
        return Err(bad_size("one-in-regular", format!("need 2 <= n <= 8, got {n}")));
    }
    Ok(in_regular(n, 1))
}

/// All `2^(n(n-1))` labeled loopless digraphs. Requires `1 <= n <= 5`.
/// In-neighborhoods are ordered by their bitmask value.
pub fn enumerate_all_digraphs(n: usize) -> Result<Enumeration, GeneratorError> {
    if !(1..=5).contains(&n) {
        return Err(bad_size("all", format!("need 1 <= n <= 5, got {n}")));
    }
    let options = (0..n)
        .map(|v| (0u64..1 << n).filter(|m| m >> v & 1 == 0).map(|m| VertexSet::from_mask(n, m)).collect())
        .collect();
    Ok(Enumeration::new(n, options))
}

/// All `3^(n(n-1)/2)` labeled oriented graphs (each pair carries no arc,
/// `u → v`, or `v → u`). Requires `1 <= n <= 6`.
pub fn enumerate_oriented(n: usize) -> Result<OrientedGraphs, GeneratorError> {
    if !(1..=6).contains(&n) {
        return Err(bad_size("oriented", format!("need 1 <= n <= 6, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 3u64.pow(pairs.len() as u32);
    Ok(OrientedGraphs { n, pairs, total, next: 0 })
}

#[derive(Debug, Clone)]
pub struct OrientedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    total: u64,
    next: u64,
}

impl OrientedGraphs {
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Pair `(u, v)`, `u < v`, reads its state from the base-3 digit of
    /// `index`, with the last pair least significant.
    pub fn get(&self, index: u64) -> Option<Digraph> {
        if index >= self.total {
            return None;
        }
        let mut arcs = Vec::new();
        let mut rest = index;
        for &(u, v) in self.pairs.iter().rev() {
            match rest % 3 {
                1 => arcs.push((u, v)),
                2 => arcs.push((v, u)),
                _ => {}
            }
            rest /= 3;
        }
        Some(Digraph::from_arc_list(self.n, &arcs).expect("one arc per pair"))
    }
}

impl Iterator for OrientedGraphs {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        let d = self.get(self.next)?;
        self.next += 1;
        Some(d)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for OrientedGraphs {}

/// Each ordered pair `(u, v)`, `u != v`, becomes an arc independently
/// with probability `arc_probability`. Deterministic for a fixed seed.
pub fn random_digraph(n: usize, arc_probability: f64, seed: u64) -> Result<Digraph, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_digraph_with(n, arc_probability, &mut rng)
}

pub(crate) fn random_digraph_with(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Digraph, GeneratorError> {
    if n == 0 || n > crate::digraph::DEFAULT_MAX_VERTICES {
        return Err(bad_size("random", format!("n = {n} out of range")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(bad_size("random", format!("arc probability {p} outside [0, 1]")));
    }
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Ok(Digraph::from_arc_list(n, &arcs).expect("distinct loopless pairs"))
}

/// Every in-neighborhood drawn uniformly among the `d`-subsets of the
/// other vertices. Deterministic for a fixed seed.
pub fn random_d_in_regular(n: usize, d: usize, seed: u64) -> Result<Digraph, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_d_in_regular_with(n, d, &mut rng)
}

fn random_d_in_regular_with(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Digraph, GeneratorError> {
    if n > crate::digraph::DEFAULT_MAX_VERTICES || d == 0 || d >= n {
        return Err(bad_size("random d-in-regular", format!("need 1 <= d < n, got n={n}, d={d}")));
    }
    let mut builder = DigraphBuilder::new(n).expect("order checked");
    for v in 0..n {
        // Indices into the other vertices, skipping `v`.
        let picks = sample(rng, n - 1, d).into_iter().map(|i| if i >= v { i + 1 } else { i });
        builder.set_in_neighbors(v, &VertexSet::from_indices(n, picks)).expect("picks exclude v");
    }
    Ok(builder.build())
}

/// `petersen`, `heawood`, `cycle:<n>` or `complete_bipartite:<r>,<d>`.
pub fn named_graph(name: &str) -> Result<UndirectedGraph, GeneratorError> {
    let unknown = || GeneratorError::UnknownName(name.to_string());
    let (base, args) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let edges: Vec<(usize, usize)>;
    let n: usize;
    match (base, args) {
        ("petersen", None) => {
            n = 10;
            edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]).collect();
        }
        ("heawood", None) => {
            // 14-cycle with chords i – i+5 from even vertices.
            n = 14;
            edges = (0..14).map(|i| (i, (i + 1) % 14)).chain((0..14).step_by(2).map(|i| (i, (i + 5) % 14))).collect();
        }
        ("cycle", Some(a)) => {
            n = a.trim().parse().map_err(|_| unknown())?;
            if n < 3 {
                return Err(bad_size("cycle graph", format!("need n >= 3, got {n}")));
            }
            edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        }
        ("complete_bipartite", Some(a)) => {
            let (r, d) = a.split_once(',').ok_or_else(unknown)?;
            let r: usize = r.trim().parse().map_err(|_| unknown())?;
            let d: usize = d.trim().parse().map_err(|_| unknown())?;
            if r == 0 || d == 0 {
                return Err(bad_size("complete bipartite graph", format!("need r, d >= 1, got {r}, {d}")));
            }
            n = r + d;
            edges = (0..r).flat_map(|u| (r..r + d).map(move |v| (u, v))).collect();
        }
        _ => return Err(unknown()),
    }
    UndirectedGraph::from_edge_list(n, &edges).map_err(|e| bad_size("named graph", e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    DirectedCycle,
    All,
    OneInRegular,
    DInRegular,
    Oriented,
    Random,
    NamedGraph,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::DirectedCycle => "cycle",
            Family::All => "all",
            Family::OneInRegular => "one-in-regular",
            Family::DInRegular => "d-in-regular",
            Family::Oriented => "oriented",
            Family::Random => "random",
            Family::NamedGraph => "named",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "cycle" => Family::DirectedCycle,
            "all" => Family::All,
            "one-in-regular" => Family::OneInRegular,
            "d-in-regular" => Family::DInRegular,
            "oriented" => Family::Oriented,
            "random" => Family::Random,
            "named" => Family::NamedGraph,
            other => return Err(GeneratorError::BadSpec(format!("unknown family `{other}`"))),
        })
    }
}

/// A reproducible source of digraphs.
///
/// `Random` draws `samples` digraphs (default 1) from one seeded stream:
/// with `d` set they are `d`-in-regular, otherwise arcs appear with
/// `arc_probability` (default 0.5). `NamedGraph` yields the symmetric lift
/// of the named graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub d: Option<usize>,
    pub seed: Option<u64>,
    pub name: Option<String>,
    pub samples: Option<usize>,
    pub arc_probability: Option<f64>,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize) -> Self {
        GeneratorSpec { family, n, d: None, seed: None, name: None, samples: None, arc_probability: None }
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = Some(samples);
        self
    }

    pub fn with_arc_probability(mut self, p: f64) -> Self {
        self.arc_probability = Some(p);
        self
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        let spec = |m: &str| Err(GeneratorError::BadSpec(format!("{}: {m}", self.family)));
        match self.family {
            Family::DInRegular if self.d.is_none() => spec("d is required"),
            Family::Random if self.seed.is_none() => spec("seed is required"),
            Family::NamedGraph if self.name.is_none() => spec("name is required"),
            _ => Ok(()),
        }
    }

    /// Number of digraphs the spec yields.
    pub fn count(&self) -> Result<u64, GeneratorError> {
        Ok(self.source()?.total())
    }

    /// Indexable source of the spec's digraphs; enumerations are built
    /// on demand.
    pub fn source(&self) -> Result<DigraphSource, GeneratorError> {
        self.validate()?;
        Ok(match self.family {
            Family::DirectedCycle => DigraphSource::Listed(vec![directed_cycle(self.n)?]),
            Family::All => DigraphSource::Labeled(enumerate_all_digraphs(self.n)?),
            Family::OneInRegular => DigraphSource::Labeled(enumerate_one_in_regular(self.n)?),
            Family::DInRegular => DigraphSource::Labeled(enumerate_d_in_regular(self.n, self.d.unwrap_or(0))?),
            Family::Oriented => DigraphSource::Oriented(enumerate_oriented(self.n)?),
            Family::NamedGraph => {
                DigraphSource::Listed(vec![named_graph(self.name.as_deref().unwrap_or_default())?.symmetric_lift()])
            }
            Family::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed.unwrap_or_default());
                let list = (0..self.samples.unwrap_or(1))
                    .map(|_| match self.d {
                        Some(d) => random_d_in_regular_with(self.n, d, &mut rng),
                        None => random_digraph_with(self.n, self.arc_probability.unwrap_or(0.5), &mut rng),
                    })
                    .collect::<Result<_, _>>()?;
                DigraphSource::Listed(list)
            }
        })
    }

    /// Materializes the digraphs in order.
    pub fn digraphs(&self) -> Result<Vec<Digraph>, GeneratorError> {
        let src = self.source()?;
        Ok((0..src.total()).map(|i| src.get(i).expect("index in range")).collect())
    }

    /// One-line description for reports.
    pub fn describe(&self) -> String {
        let mut s = format!("{} n={}", self.family, self.n);
        if let Some(d) = self.d {
            s.push_str(&format!(" d={d}"));
        }
        if let Some(name) = &self.name {
            s.push_str(&format!(" name={name}"));
        }
        if let Some(k) = self.samples {
            s.push_str(&format!(" samples={k}"));
        }
        if let Some(p) = self.arc_probability {
            s.push_str(&format!(" p={p}"));
        }
        if let Some(seed) = self.seed {
            s.push_str(&format!(" seed={seed}"));
        }
        s
    }
}

/// Digraphs of a [`GeneratorSpec`], addressable by position.
#[derive(Debug, Clone)]
pub enum DigraphSource {
    Listed(Vec<Digraph>),
    Labeled(Enumeration),
    Oriented(OrientedGraphs),
}

impl DigraphSource {
    pub fn total(&self) -> u64 {
        match self {
            DigraphSource::Listed(v) => v.len() as u64,
            DigraphSource::Labeled(e) => e.total(),
            DigraphSource::Oriented(e) => e.total(),
        }
    }

    pub fn get(&self, index: u64) -> Option<Digraph> {
        match self {
            DigraphSource::Listed(v) => v.get(index as usize).cloned(),
            DigraphSource::Labeled(e) => e.get(index),
            DigraphSource::Oriented(e) => e.get(index),
        }
    }
}
