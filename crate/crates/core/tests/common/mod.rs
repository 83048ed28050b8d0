//! Brute-force oracles shared by the integration tests. Everything here
//! works on bitmasks straight from the arc list and never calls the
//! library's algorithms.
#![allow(dead_code)]

use std::collections::HashSet;

use idcodes::Digraph;

/// Ordered pairs `(u, v)`, `u != v`, in row-major order.
pub fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect()
}

/// The digraph whose arcs are the pairs selected by `mask`.
pub fn digraph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Digraph {
    let arcs: Vec<_> = (0..pairs.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
    Digraph::from_arc_list(n, &arcs).unwrap()
}

pub fn all_digraph_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1))
}

/// Closed in-neighborhood masks.
pub fn closed_in(d: &Digraph) -> Vec<u64> {
    let mut m: Vec<u64> = (0..d.order()).map(|v| 1u64 << v).collect();
    for (u, v) in d.arcs() {
        m[v] |= 1 << u;
    }
    m
}

/// Nonempty subsets of `0..n` with at most `ell` elements.
pub fn small_subsets(n: usize, ell: usize) -> Vec<u64> {
    (1u64..1 << n).filter(|s| s.count_ones() as usize <= ell).collect()
}

pub fn union_of(masks: &[u64], set: u64) -> u64 {
    (0..masks.len()).filter(|&v| set >> v & 1 == 1).fold(0, |acc, v| acc | masks[v])
}

/// Whether the traces `N⁻[X] ∩ code` are pairwise distinct.
pub fn is_code(d: &Digraph, code: u64, ell: usize) -> bool {
    let masks = closed_in(d);
    let mut seen = HashSet::new();
    small_subsets(d.order(), ell).into_iter().all(|x| seen.insert(union_of(&masks, x) & code))
}

pub fn admits(d: &Digraph, ell: usize) -> bool {
    is_code(d, (1u64 << d.order()) - 1, ell)
}

/// Size of a smallest code, trying all `2^n` vertex sets.
pub fn min_code_size(d: &Digraph, ell: usize) -> Option<usize> {
    let n = d.order();
    let masks = closed_in(d);
    let subsets = small_subsets(n, ell);
    (0..=n).find(|&k| {
        (0u64..1 << n).filter(|c| c.count_ones() as usize == k).any(|code| {
            let mut seen = HashSet::new();
            subsets.iter().all(|&x| seen.insert(union_of(&masks, x) & code))
        })
    })
}

pub fn twin_free(d: &Digraph) -> bool {
    let masks = closed_in(d);
    let distinct: HashSet<u64> = masks.iter().copied().collect();
    distinct.len() == masks.len()
}

/// Length of a shortest cycle by listing every simple cycle; `None` for
/// acyclic digraphs.
pub fn girth(d: &Digraph) -> Option<usize> {
    let n = d.order();
    let mut best: Option<usize> = None;
    // Each cycle is found from its smallest vertex.
    fn walk(d: &Digraph, start: usize, at: usize, len: usize, used: u64, best: &mut Option<usize>) {
        for w in 0..d.order() {
            if !d.has_arc(at, w) {
                continue;
            }
            if w == start {
                *best = Some(best.map_or(len, |b| b.min(len)));
            } else if w > start && used >> w & 1 == 0 {
                walk(d, start, w, len + 1, used | 1 << w, best);
            }
        }
    }
    for s in 0..n {
        walk(d, s, s, 1, 1 << s, &mut best);
    }
    best
}

pub fn has_digon(d: &Digraph) -> bool {
    d.arcs().any(|(u, v)| d.has_arc(v, u))
}

/// Every injective map of `pattern` into `host` that sends arcs to arcs,
/// by trying all injections. Maps are indexed by pattern vertex.
pub fn embeddings(host: &Digraph, pattern: &Digraph) -> Vec<Vec<usize>> {
    let k = pattern.order();
    let arcs: Vec<(usize, usize)> = pattern.arcs().collect();
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(k);
    fn rec(host: &Digraph, k: usize, arcs: &[(usize, usize)], map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if map.len() == k {
            if arcs.iter().all(|&(a, b)| host.has_arc(map[a], map[b])) {
                out.push(map.clone());
            }
            return;
        }
        for v in 0..host.order() {
            if !map.contains(&v) {
                map.push(v);
                rec(host, k, arcs, map, out);
                map.pop();
            }
        }
    }
    if k <= host.order() {
        rec(host, k, &arcs, &mut map, &mut out);
    }
    out.sort();
    out
}

pub fn contains(host: &Digraph, pattern: &Digraph) -> bool {
    !embeddings(host, pattern).is_empty()
}

/// Isomorphism by trying every bijection.
pub fn isomorphic(a: &Digraph, b: &Digraph) -> bool {
    a.order() == b.order() && a.arc_count() == b.arc_count() && contains(b, a)
}

pub fn directed_cycle(n: usize) -> Digraph {
    let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Digraph::from_arc_list(n, &arcs).unwrap()
}

/// `min(d⁻(u) + 1)` over vertices with an out-arc, `d⁻(u)` on a digon.
pub fn ell_bound(d: &Digraph) -> Option<usize> {
    let n = d.order();
    let indeg = |v: usize| (0..n).filter(|&u| d.has_arc(u, v)).count();
    (0..n)
        .filter(|&u| (0..n).any(|w| d.has_arc(u, w)))
        .map(|u| {
            let digon = (0..n).any(|w| d.has_arc(u, w) && d.has_arc(w, u));
            if digon {
                indeg(u)
            } else {
                indeg(u) + 1
            }
        })
        .min()
}
