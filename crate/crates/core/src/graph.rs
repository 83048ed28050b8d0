//! Undirected simple graphs and their symmetric lift.

use std::collections::VecDeque;

use crate::digraph::{Digraph, DigraphBuilder, Girth, GraphError, DEFAULT_MAX_VERTICES};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl UndirectedGraph {
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > DEFAULT_MAX_VERTICES {
            return Err(GraphError::TooLarge { n, max: DEFAULT_MAX_VERTICES });
        }
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopArc(u));
            }
            if !adj[u].insert(v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[v].insert(u);
        }
        Ok(UndirectedGraph { n, m: edges.len(), adj })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regularity(&self) -> Option<usize> {
        let first = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == first).then_some(first)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    /// Length of a shortest cycle; BFS from every vertex, a non-tree edge
    /// closes a cycle of length `d(u) + d(w) + 1`.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Replaces every edge `uv` by the digon `(u, v), (v, u)`.
    pub fn symmetric_lift(&self) -> Digraph {
        let mut b = DigraphBuilder::new(self.n).expect("order already validated");
        for (u, v) in self.edges() {
            b.add_arc(u, v).expect("simple graph");
            b.add_arc(v, u).expect("simple graph");
        }
        b.build()
    }
}
