//! Canonical forms for small digraphs.
//!
//! The form is the lexicographically least adjacency encoding over all
//! vertex orders that list vertices by their colour-refinement class.
//! Refinement colours are isomorphism-invariant, so isomorphic digraphs
//! search the same family of encodings and reach the same minimum; the
//! encoding determines the digraph, so equal forms imply isomorphism.
//!
//! Entries are emitted in the order `(k,0),(0,k),(k,1),(1,k),..,(k,k-1),
//! (k-1,k)` for `k = 1, 2, ..`, so every prefix of a vertex order fixes a
//! prefix of the encoding and partial orders can be pruned.

use std::cmp::Ordering;

use crate::digraph::Digraph;

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

/// Colour refinement with canonically numbered colours.
pub(crate) fn refined_colours(d: &Digraph) -> Vec<usize> {
    let n = d.order();
    let mut colours: Vec<usize> = vec![0; n];
    let mut classes = 1usize.min(n);
    loop {
        let signatures: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut outs: Vec<usize> = d.out_neighbors(v).iter().map(|w| colours[w]).collect();
                let mut ins: Vec<usize> = d.in_neighbors(v).iter().map(|w| colours[w]).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                (colours[v], outs, ins)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> =
            signatures.iter().map(|s| distinct.binary_search(s).expect("signature present")).collect();
        colours = next;
        if distinct.len() == classes {
            return colours;
        }
        classes = distinct.len();
    }
}

/// Canonical bytes of `d`, or `None` when `d` is too large.
pub fn canonical_form(d: &Digraph) -> Option<CanonicalForm> {
    let n = d.order();
    if n > CANONICAL_MAX_VERTICES {
        return None;
    }
    let colours = refined_colours(d);
    let mut slots: Vec<usize> = colours.clone();
    slots.sort_unstable();

    let mut search = Search {
        d,
        colours: &colours,
        slots: &slots,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        current: Vec::with_capacity(n * n),
        best: None,
        generation: 0,
    };
    search.run(Ordering::Less);

    let mut bytes = Vec::with_capacity(1 + n + n * n);
    bytes.push(n as u8);
    bytes.extend(slots.iter().map(|&c| c as u8));
    bytes.extend(search.best.unwrap_or_default());
    Some(CanonicalForm(bytes))
}

fn block(d: &Digraph, order: &[usize], out: &mut Vec<u8>) {
    let k = order.len() - 1;
    let vk = order[k];
    for &vi in &order[..k] {
        out.push(d.has_arc(vk, vi) as u8);
        out.push(d.has_arc(vi, vk) as u8);
    }
}

struct Search<'a> {
    d: &'a Digraph,
    colours: &'a [usize],
    slots: &'a [usize],
    order: Vec<usize>,
    used: Vec<bool>,
    current: Vec<u8>,
    best: Option<Vec<u8>>,
    generation: u64,
}

impl Search<'_> {
    /// `status` compares the current prefix with the same span of `best`;
    /// `Less` also stands for "no best yet".
    fn run(&mut self, mut status: Ordering) {
        let n = self.d.order();
        let depth = self.order.len();
        if depth == n {
            if status == Ordering::Less {
                self.best = Some(self.current.clone());
                self.generation += 1;
            }
            return;
        }
        let slot = self.slots[depth];
        for v in 0..n {
            if self.used[v] || self.colours[v] != slot {
                continue;
            }
            let start = self.current.len();
            self.order.push(v);
            block(self.d, &self.order, &mut self.current);
            let child = match (status, &self.best) {
                (Ordering::Equal, Some(best)) => self.current[start..].cmp(&best[start..self.current.len()]),
                _ => Ordering::Less,
            };
            if child != Ordering::Greater {
                let generation = self.generation;
                self.used[v] = true;
                self.run(child);
                self.used[v] = false;
                // A new best found below extends this prefix, so siblings
                // now compare equal up to here.
                if self.generation != generation {
                    status = Ordering::Equal;
                }
            }
            self.current.truncate(start);
            self.order.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(d: &Digraph, perm: &[usize]) -> Digraph {
        let arcs: Vec<_> = d.arcs().map(|(u, v)| (perm[u], perm[v])).collect();
        Digraph::from_arc_list(d.order(), &arcs).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn relabelings_of_c3_agree() {
        let c3 = Digraph::from_arc_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let base = canonical_form(&c3).unwrap();
        for p in permutations(3) {
            assert_eq!(canonical_form(&relabel(&c3, &p)).unwrap(), base);
        }
    }

    #[test]
    fn distinguishes_small_digraphs() {
        let c3 = Digraph::from_arc_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let tt3 = Digraph::from_arc_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_ne!(canonical_form(&c3), canonical_form(&tt3));
        let digon = Digraph::from_arc_list(2, &[(0, 1), (1, 0)]).unwrap();
        let arc = Digraph::from_arc_list(2, &[(0, 1)]).unwrap();
        assert_ne!(canonical_form(&digon), canonical_form(&arc));
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(canonical_form(&Digraph::empty(11).unwrap()).is_none());
        assert!(canonical_form(&Digraph::empty(10).unwrap()).is_some());
    }

    /// Lex-least adjacency matrix over every vertex order.
    fn brute_force_form(d: &Digraph) -> Vec<bool> {
        permutations(d.order())
            .into_iter()
            .map(|p| {
                let mut m = Vec::new();
                for i in 0..d.order() {
                    for j in 0..d.order() {
                        m.push(d.has_arc(p[i], p[j]));
                    }
                }
                m
            })
            .min()
            .unwrap()
    }

    fn from_mask(n: usize, mask: u64) -> Digraph {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        let arcs: Vec<_> = (0..pairs.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
        Digraph::from_arc_list(n, &arcs).unwrap()
    }

    #[test]
    fn agrees_with_unrestricted_search_on_four_vertices() {
        let all: Vec<Digraph> = (0..1u64 << 12).map(|m| from_mask(4, m)).collect();
        let fast: Vec<CanonicalForm> = all.iter().map(|d| canonical_form(d).unwrap()).collect();
        let slow: Vec<Vec<bool>> = all.iter().map(brute_force_form).collect();
        let mut fast_classes = fast.clone();
        fast_classes.sort();
        fast_classes.dedup();
        // 218 isomorphism classes of digraphs on four vertices.
        assert_eq!(fast_classes.len(), 218);
        for i in (0..all.len()).step_by(7) {
            for j in 0..all.len() {
                assert_eq!(fast[i] == fast[j], slow[i] == slow[j], "{i} {j}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn relabeling_preserves_form(mask in 0u64..1 << 30, seed in proptest::collection::vec(0usize..6, 6)) {
            let d = from_mask(6, mask);
            let mut perm: Vec<usize> = (0..6).collect();
            for (i, s) in seed.iter().enumerate() {
                perm.swap(i, *s);
            }
            proptest::prop_assert_eq!(canonical_form(&d), canonical_form(&relabel(&d, &perm)));
        }
    }
}
