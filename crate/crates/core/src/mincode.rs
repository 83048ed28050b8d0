//! Minimum (1,≤ℓ)-identifying codes as minimum hitting sets of the
//! separation diffs.

use std::cmp::Reverse;

use crate::digraph::Digraph;
use crate::idcode::{distinct_diffs, CodeError, Limits};
use crate::vertex_set::VertexSet;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Found,
    NotAdmissible,
    /// The search was cut off; `code` holds the best code seen.
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub code: Option<VertexSet>,
    pub size: Option<usize>,
    pub nodes_explored: u64,
}

impl SolveResult {
    fn not_admissible() -> Self {
        SolveResult { status: SolveStatus::NotAdmissible, code: None, size: None, nodes_explored: 0 }
    }

    fn with_code(status: SolveStatus, code: VertexSet, nodes_explored: u64) -> Self {
        let size = code.len();
        SolveResult { status, code: Some(code), size: Some(size), nodes_explored }
    }
}

/// Diffs sorted by size with supersets of other diffs dropped; a set that
/// meets every kept diff meets all of them.
fn reduced_diffs(mut diffs: Vec<VertexSet>) -> Vec<VertexSet> {
    diffs.sort_by_key(|s| (s.len(), s.to_vec()));
    let mut kept: Vec<VertexSet> = Vec::with_capacity(diffs.len());
    for s in diffs {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

fn greedy_cover(n: usize, diffs: &[VertexSet]) -> VertexSet {
    let mut code = VertexSet::new(n);
    let mut open: Vec<&VertexSet> = diffs.iter().collect();
    while !open.is_empty() {
        let mut counts = vec![0usize; n];
        for s in &open {
            for v in s.iter() {
                counts[v] += 1;
            }
        }
        let v = (0..n).min_by_key(|&v| Reverse(counts[v])).expect("nonempty diffs");
        code.insert(v);
        open.retain(|s| !s.contains(v));
    }
    code
}

/// Greedy code: repeatedly add the vertex meeting the most unmet diffs,
/// ties to the lowest index.
pub fn greedy_code(d: &Digraph, ell: usize) -> Result<SolveResult, CodeError> {
    let Some(diffs) = distinct_diffs(d, ell, &Limits::default())? else {
        return Ok(SolveResult::not_admissible());
    };
    let code = greedy_cover(d.order(), &diffs);
    Ok(SolveResult::with_code(SolveStatus::Found, code, 0))
}

/// Exact minimum code by branch and bound, visiting at most `budget`
/// search nodes ([`DEFAULT_NODE_BUDGET`] is a sensible default).
pub fn minimum_identifying_code(d: &Digraph, ell: usize, budget: u64) -> Result<SolveResult, CodeError> {
    let Some(diffs) = distinct_diffs(d, ell, &Limits::default())? else {
        return Ok(SolveResult::not_admissible());
    };
    let n = d.order();
    let diffs = reduced_diffs(diffs);
    let incumbent = greedy_cover(n, &diffs);
    let mut search = Search { n, diffs: &diffs, best: incumbent, nodes: 0, budget, exhausted: false };
    let open: Vec<usize> = (0..diffs.len()).collect();
    search.branch(VertexSet::new(n), VertexSet::full(n), open);
    let status = if search.exhausted { SolveStatus::BudgetExceeded } else { SolveStatus::Found };
    Ok(SolveResult::with_code(status, search.best, search.nodes))
}

struct Search<'a> {
    n: usize,
    diffs: &'a [VertexSet],
    best: VertexSet,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    /// Disjoint diffs among `open`, restricted to `avail`; each needs its
    /// own code vertex.
    fn packing_bound(&self, open: &[usize], avail: &VertexSet) -> usize {
        let mut used = VertexSet::new(self.n);
        let mut count = 0;
        for &i in open {
            let s = self.diffs[i].intersection(avail);
            if !s.intersects(&used) {
                used.union_with(&s);
                count += 1;
            }
        }
        count
    }

    /// `chosen` is in the code, vertices outside `avail ∪ chosen` are
    /// excluded, `open` lists the diffs not yet met (ascending size).
    fn branch(&mut self, mut chosen: VertexSet, mut avail: VertexSet, mut open: Vec<usize>) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }

        // Unit propagation.
        loop {
            let mut forced = None;
            for &i in &open {
                let live = self.diffs[i].intersection_len(&avail);
                if live == 0 {
                    return;
                }
                if live == 1 {
                    forced = self.diffs[i].intersection(&avail).first();
                    break;
                }
            }
            let Some(v) = forced else { break };
            chosen.insert(v);
            avail.remove(v);
            open.retain(|&i| !self.diffs[i].contains(v));
        }

        if open.is_empty() {
            if chosen.len() < self.best.len() {
                self.best = chosen;
            }
            return;
        }
        if chosen.len() + self.packing_bound(&open, &avail) >= self.best.len() {
            return;
        }

        let mut counts = vec![0usize; self.n];
        for &i in &open {
            for v in self.diffs[i].intersection(&avail).iter() {
                counts[v] += 1;
            }
        }
        let v = avail.iter().min_by_key(|&v| Reverse(counts[v])).expect("live diffs have vertices");

        let mut with = chosen.clone();
        with.insert(v);
        let mut rest = avail.clone();
        rest.remove(v);
        let still_open: Vec<usize> = open.iter().copied().filter(|&i| !self.diffs[i].contains(v)).collect();
        self.branch(with, rest.clone(), still_open);
        self.branch(chosen, rest, open);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idcode::is_identifying_code;

    fn cycle(n: usize) -> Digraph {
        let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Digraph::from_arc_list(n, &arcs).unwrap()
    }

    /// Smallest code by trying every subset in order of size.
    fn brute_force_minimum(d: &Digraph, ell: usize) -> Option<usize> {
        let n = d.order();
        let mut masks: Vec<u64> = (0..1u64 << n).collect();
        masks.sort_by_key(|m| m.count_ones());
        masks
            .into_iter()
            .find(|&m| is_identifying_code(d, &VertexSet::from_mask(n, m), ell).unwrap().holds)
            .map(|m| m.count_ones() as usize)
    }

    #[test]
    fn cycles() {
        let r = minimum_identifying_code(&cycle(5), 1, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.status, SolveStatus::Found);
        assert_eq!(r.size, Some(3));
        assert_eq!(brute_force_minimum(&cycle(5), 1), Some(3));
        assert_eq!(minimum_identifying_code(&cycle(4), 1, DEFAULT_NODE_BUDGET).unwrap().size, Some(2));
        assert_eq!(brute_force_minimum(&cycle(4), 1), Some(2));
        let g = greedy_code(&cycle(5), 1).unwrap();
        assert!(g.size.unwrap() >= 3);
        assert!(is_identifying_code(&cycle(5), g.code.as_ref().unwrap(), 1).unwrap().holds);
    }

    #[test]
    fn digon_is_not_admissible() {
        let digon = cycle(2);
        for ell in 1..=2 {
            assert_eq!(
                minimum_identifying_code(&digon, ell, DEFAULT_NODE_BUDGET).unwrap().status,
                SolveStatus::NotAdmissible
            );
            assert_eq!(greedy_code(&digon, ell).unwrap().status, SolveStatus::NotAdmissible);
        }
    }

    #[test]
    fn ell_out_of_range() {
        assert!(matches!(
            minimum_identifying_code(&cycle(3), 0, DEFAULT_NODE_BUDGET),
            Err(CodeError::EllOutOfRange { .. })
        ));
        assert!(matches!(greedy_code(&cycle(3), 4), Err(CodeError::EllOutOfRange { .. })));
    }

    #[test]
    fn tiny_budget_returns_an_incumbent() {
        let c = cycle(9);
        let r = minimum_identifying_code(&c, 1, 1).unwrap();
        assert_eq!(r.status, SolveStatus::BudgetExceeded);
        assert!(is_identifying_code(&c, r.code.as_ref().unwrap(), 1).unwrap().holds);
        let full = minimum_identifying_code(&c, 1, DEFAULT_NODE_BUDGET).unwrap();
        assert!(full.size <= r.size);
    }

    #[test]
    fn superset_diffs_are_dropped() {
        let n = 4;
        let kept = reduced_diffs(vec![
            VertexSet::from_indices(n, [0, 1, 2]),
            VertexSet::from_indices(n, [1]),
            VertexSet::from_indices(n, [1, 3]),
            VertexSet::from_indices(n, [2, 3]),
        ]);
        assert_eq!(kept, vec![VertexSet::from_indices(n, [1]), VertexSet::from_indices(n, [2, 3])]);
    }

    #[test]
    fn matches_brute_force_on_three_vertices() {
        let pairs: Vec<(usize, usize)> =
            (0..3).flat_map(|u| (0..3).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        for mask in 0u64..1 << pairs.len() {
            let arcs: Vec<_> = (0..pairs.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
            let d = Digraph::from_arc_list(3, &arcs).unwrap();
            for ell in 1..=3 {
                let exact = minimum_identifying_code(&d, ell, DEFAULT_NODE_BUDGET).unwrap();
                assert_eq!(exact.size, brute_force_minimum(&d, ell), "{arcs:?} ell={ell}");
                if let Some(code) = &exact.code {
                    assert!(is_identifying_code(&d, code, ell).unwrap().holds);
                }
            }
        }
    }
}
