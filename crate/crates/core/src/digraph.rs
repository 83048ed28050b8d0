//! Simple loopless digraphs over dense vertex indices.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::vertex_set::VertexSet;

/// Largest vertex count accepted by default.
pub const DEFAULT_MAX_VERTICES: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop arc at vertex {0}")]
    LoopArc(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("{n} vertices exceeds the configured maximum of {max}")]
    TooLarge { n: usize, max: usize },
}

/// Length of a shortest directed cycle, or `Infinite` when there is none.
///
/// `Finite` values order before `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

/// Degree summary of a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub min_in: usize,
    pub min_out: usize,
    pub in_degrees: Vec<usize>,
    pub out_degrees: Vec<usize>,
    /// `Some(d)` when every vertex has in-degree `d`.
    pub in_regular: Option<usize>,
    /// `Some(d)` when every vertex has in- and out-degree `d`.
    pub regular: Option<usize>,
}

impl DegreeProfile {
    pub fn is_d_in_regular(&self, d: usize) -> bool {
        self.in_regular == Some(d)
    }
}

/// An immutable simple digraph. Build one with [`Digraph::from_arc_list`]
/// or a [`DigraphBuilder`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    m: usize,
    in_nbrs: Vec<VertexSet>,
    out_nbrs: Vec<VertexSet>,
}

impl Digraph {
    pub fn from_arc_list(n: usize, arcs: &[(usize, usize)]) -> Result<Digraph, GraphError> {
        let mut builder = DigraphBuilder::new(n)?;
        for &(u, v) in arcs {
            builder.add_arc(u, v)?;
        }
        Ok(builder.build())
    }

    /// The digraph on `n` vertices without arcs.
    pub fn empty(n: usize) -> Result<Digraph, GraphError> {
        Ok(DigraphBuilder::new(n)?.build())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.in_nbrs[v]
    }

    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out_nbrs[v]
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_nbrs[u].contains(v)
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_nbrs[v].len()
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out_nbrs[v].len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_nbrs[u].iter().map(move |v| (u, v)))
    }

    /// `N⁻[v] = {v} ∪ N⁻(v)`.
    pub fn closed_in_neighborhood_of(&self, v: usize) -> VertexSet {
        let mut set = self.in_nbrs[v].clone();
        set.insert(v);
        set
    }

    /// `N⁻[X]`: the members of `set` together with all their in-neighbors.
    pub fn closed_in_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = set.clone();
        for v in set {
            out.union_with(&self.in_nbrs[v]);
        }
        out
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let in_degrees: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let out_degrees: Vec<usize> = (0..self.n).map(|v| self.out_degree(v)).collect();
        let min_in = in_degrees.iter().copied().min().unwrap_or(0);
        let min_out = out_degrees.iter().copied().min().unwrap_or(0);
        let in_regular = match in_degrees.first() {
            Some(&d) if in_degrees.iter().all(|&x| x == d) => Some(d),
            _ => None,
        };
        let regular = in_regular.filter(|&d| out_degrees.iter().all(|&x| x == d));
        DegreeProfile { min_in, min_out, in_degrees, out_degrees, in_regular, regular }
    }

    pub fn min_in_degree(&self) -> usize {
        (0..self.n).map(|v| self.in_degree(v)).min().unwrap_or(0)
    }

    /// Shortest directed cycle through `v`: breadth-first search from `v`
    /// along out-arcs, closing through an in-neighbor of `v`.
    pub fn shortest_cycle_through(&self, v: usize) -> Result<Girth, GraphError> {
        if v >= self.n {
            return Err(GraphError::OutOfRange { vertex: v, n: self.n });
        }
        Ok(self.cycle_through(v, usize::MAX))
    }

    /// BFS from `v`, abandoning paths that cannot beat `cutoff`.
    fn cycle_through(&self, v: usize, cutoff: usize) -> Girth {
        let closers = &self.in_nbrs[v];
        if closers.is_empty() || self.out_nbrs[v].is_empty() {
            return Girth::Infinite;
        }
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            if closers.contains(u) {
                // BFS order: the first closer reached is the nearest one.
                return Girth::Finite(dist[u] + 1);
            }
            if dist[u] + 2 >= cutoff {
                continue;
            }
            for w in &self.out_nbrs[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Girth::Infinite
    }

    /// Length of a shortest directed cycle.
    pub fn girth(&self) -> Girth {
        let mut best = Girth::Infinite;
        for v in 0..self.n {
            let cutoff = best.finite().unwrap_or(usize::MAX);
            if let g @ Girth::Finite(_) = self.cycle_through(v, cutoff) {
                best = best.min(g);
                if best == Girth::Finite(2) {
                    break;
                }
            }
        }
        best
    }

    /// Unordered pairs `(u, v)`, `u < v`, joined by arcs in both directions.
    pub fn digons(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.out_nbrs[u].iter().filter(|&v| v > u) {
                if self.out_nbrs[v].contains(u) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_oriented(&self) -> bool {
        (0..self.n).all(|u| !self.out_nbrs[u].intersects(&self.in_nbrs[u]))
    }

    pub fn lies_on_digon(&self, v: usize) -> bool {
        self.out_nbrs[v].intersects(&self.in_nbrs[v])
    }

    /// Pairs `(u, v)`, `u < v`, with `N⁻[u] = N⁻[v]`.
    pub fn twins(&self) -> Vec<(usize, usize)> {
        let closed: Vec<VertexSet> = (0..self.n).map(|v| self.closed_in_neighborhood_of(v)).collect();
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if closed[u] == closed[v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_twin_free(&self) -> bool {
        let mut closed: Vec<VertexSet> = (0..self.n).map(|v| self.closed_in_neighborhood_of(v)).collect();
        closed.sort_unstable();
        closed.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs=[", self.n)?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}>{v}")?;
        }
        f.write_str("])")
    }
}

/// Mutable staging area for a [`Digraph`].
#[derive(Debug, Clone)]
pub struct DigraphBuilder {
    n: usize,
    m: usize,
    in_nbrs: Vec<VertexSet>,
    out_nbrs: Vec<VertexSet>,
}

impl DigraphBuilder {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        Self::with_max(n, DEFAULT_MAX_VERTICES)
    }

    pub fn with_max(n: usize, max: usize) -> Result<Self, GraphError> {
        if n > max {
            return Err(GraphError::TooLarge { n, max });
        }
        Ok(DigraphBuilder { n, m: 0, in_nbrs: vec![VertexSet::new(n); n], out_nbrs: vec![VertexSet::new(n); n] })
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::OutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::LoopArc(u));
        }
        if !self.out_nbrs[u].insert(v) {
            return Err(GraphError::DuplicateArc(u, v));
        }
        self.in_nbrs[v].insert(u);
        self.m += 1;
        Ok(self)
    }

    /// Sets the in-neighborhood of `v`, replacing any previous arcs into `v`.
    pub fn set_in_neighbors(&mut self, v: usize, nbrs: &VertexSet) -> Result<&mut Self, GraphError> {
        if v >= self.n {
            return Err(GraphError::OutOfRange { vertex: v, n: self.n });
        }
        if nbrs.contains(v) {
            return Err(GraphError::LoopArc(v));
        }
        let old = std::mem::replace(&mut self.in_nbrs[v], VertexSet::new(self.n));
        for u in &old {
            self.out_nbrs[u].remove(v);
        }
        self.m -= old.len();
        for u in nbrs {
            self.add_arc(u, v)?;
        }
        Ok(self)
    }

    pub fn build(self) -> Digraph {
        Digraph { n: self.n, m: self.m, in_nbrs: self.in_nbrs, out_nbrs: self.out_nbrs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Digraph::from_arc_list(n, &arcs).unwrap()
    }

    #[test]
    fn construction_errors() {
        let tri = Digraph::from_arc_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tri.arc_count(), 3);
        assert_eq!(Digraph::from_arc_list(2, &[(0, 0)]), Err(GraphError::LoopArc(0)));
        assert_eq!(Digraph::from_arc_list(2, &[(0, 1), (0, 1)]), Err(GraphError::DuplicateArc(0, 1)));
        assert_eq!(Digraph::from_arc_list(2, &[(0, 2)]), Err(GraphError::OutOfRange { vertex: 2, n: 2 }));
        assert!(matches!(Digraph::empty(513), Err(GraphError::TooLarge { .. })));
        assert_eq!(Digraph::empty(512).unwrap().order(), 512);
    }

    #[test]
    fn closed_in_neighborhoods_on_c5() {
        let c5 = cycle(5);
        let x = VertexSet::from_indices(5, [2]);
        assert_eq!(c5.closed_in_neighborhood(&x).to_vec(), vec![1, 2]);
        let x = VertexSet::from_indices(5, [1, 3]);
        assert_eq!(c5.closed_in_neighborhood(&x).to_vec(), vec![0, 1, 2, 3]);
        assert!(c5.closed_in_neighborhood(&VertexSet::new(5)).is_empty());
    }

    #[test]
    fn degree_profiles() {
        let p = cycle(5).degree_profile();
        assert_eq!((p.min_in, p.min_out), (1, 1));
        assert!(p.is_d_in_regular(1));
        assert_eq!(p.regular, Some(1));

        let arc = Digraph::from_arc_list(2, &[(0, 1)]).unwrap().degree_profile();
        assert_eq!(arc.min_in, 0);
        assert_eq!(arc.in_regular, None);
        assert!((1..4).all(|d| !arc.is_d_in_regular(d)));
    }

    #[test]
    fn girth_examples() {
        let digon = Digraph::from_arc_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(digon.girth(), Girth::Finite(2));
        assert_eq!(cycle(5).girth(), Girth::Finite(5));
        let arc = Digraph::from_arc_list(2, &[(0, 1)]).unwrap();
        assert_eq!(arc.girth(), Girth::Infinite);
        assert_eq!(Digraph::empty(0).unwrap().girth(), Girth::Infinite);
        assert!(Girth::Finite(1000) < Girth::Infinite);
    }

    #[test]
    fn shortest_cycle_through_examples() {
        let c3 = cycle(3);
        for v in 0..3 {
            assert_eq!(c3.shortest_cycle_through(v), Ok(Girth::Finite(3)));
        }
        let d = Digraph::from_arc_list(3, &[(0, 1), (1, 0), (2, 0)]).unwrap();
        assert_eq!(d.shortest_cycle_through(0), Ok(Girth::Finite(2)));
        assert_eq!(d.shortest_cycle_through(2), Ok(Girth::Infinite));
        assert!(matches!(d.shortest_cycle_through(3), Err(GraphError::OutOfRange { .. })));
    }

    #[test]
    fn digons_and_orientation() {
        assert!(cycle(3).digons().is_empty());
        assert!(cycle(3).is_oriented());
        let d = Digraph::from_arc_list(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(d.digons(), vec![(0, 1)]);
        assert!(!d.is_oriented());
        assert!(d.lies_on_digon(0) && d.lies_on_digon(1) && !d.lies_on_digon(2));
    }

    #[test]
    fn twins_examples() {
        let digon = Digraph::from_arc_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(digon.twins(), vec![(0, 1)]);
        assert!(!digon.is_twin_free());
        assert!(cycle(5).twins().is_empty());
        assert!(cycle(5).is_twin_free());
    }

    #[test]
    fn builder_replaces_in_neighborhoods() {
        let mut b = DigraphBuilder::new(4).unwrap();
        b.add_arc(0, 3).unwrap();
        b.set_in_neighbors(3, &VertexSet::from_indices(4, [1, 2])).unwrap();
        let d = b.build();
        assert_eq!(d.arc_count(), 2);
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(1, 3), (2, 3)]);
        assert!(d.out_neighbors(0).is_empty());
    }
}
