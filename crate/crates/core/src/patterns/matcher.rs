//! Non-induced subdigraph matching by backtracking.

use crate::digraph::Digraph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    AllOccurrences,
    FirstOnly,
}

/// Injective, arc-preserving maps from `pattern` into `host`.
///
/// Each map is indexed by pattern vertex. Maps come out in the order the
/// search visits them, which is deterministic.
pub fn find_embeddings(host: &Digraph, pattern: &Digraph, mode: MatchMode) -> Vec<Vec<usize>> {
    let p = pattern.order();
    if p > host.order() {
        return Vec::new();
    }
    if p == 0 {
        return vec![Vec::new()];
    }
    let order = search_order(pattern);
    let mut state = Search {
        host,
        pattern,
        order: &order,
        map: vec![usize::MAX; p],
        used: VertexSet::new(host.order()),
        mode,
        found: Vec::new(),
    };
    state.extend(0);
    state.found
}

pub fn contains_subdigraph(host: &Digraph, pattern: &Digraph) -> bool {
    !find_embeddings(host, pattern, MatchMode::FirstOnly).is_empty()
}

/// Pattern vertices by descending total degree, ties by index.
fn search_order(pattern: &Digraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pattern.order()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pattern.in_degree(v) + pattern.out_degree(v)), v));
    order
}

struct Search<'a> {
    host: &'a Digraph,
    pattern: &'a Digraph,
    order: &'a [usize],
    map: Vec<usize>,
    used: VertexSet,
    mode: MatchMode,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.mode == MatchMode::FirstOnly && !self.found.is_empty()
    }

    fn candidates(&self, pv: usize) -> VertexSet {
        let host = self.host;
        let mut cand = host.vertex_set();
        cand.difference_with(&self.used);
        // Constrain by already-mapped neighbors in both directions.
        for w in self.pattern.out_neighbors(pv) {
            let hw = self.map[w];
            if hw != usize::MAX {
                cand.intersect_with(host.in_neighbors(hw));
            }
        }
        for w in self.pattern.in_neighbors(pv) {
            let hw = self.map[w];
            if hw != usize::MAX {
                cand.intersect_with(host.out_neighbors(hw));
            }
        }
        cand
    }

    fn extend(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.found.push(self.map.clone());
            return;
        }
        let pv = self.order[depth];
        let need_in = self.pattern.in_degree(pv);
        let need_out = self.pattern.out_degree(pv);
        for hv in &self.candidates(pv) {
            if self.host.in_degree(hv) < need_in || self.host.out_degree(hv) < need_out {
                continue;
            }
            self.map[pv] = hv;
            self.used.insert(hv);
            self.extend(depth + 1);
            self.used.remove(hv);
            self.map[pv] = usize::MAX;
            if self.done() {
                return;
            }
        }
    }
}
