//! Enumeration of minimal obstructions for `d`-in-regular hosts.
//!
//! An obstruction is a small digraph `H` with anchor sets `X ≠ Y`,
//! `|X|, |Y| ≤ ell`, such that
//!
//! * every vertex of `X ∪ Y` has in-degree exactly `d` in `H`,
//! * every arc of `H` ends in `X ∪ Y`,
//! * `V(H) = N⁻[X] = N⁻[Y]`.
//!
//! In a `d`-in-regular host an embedded copy of `H` reproduces the
//! in-neighborhoods of the anchors exactly, so the images of `X` and `Y`
//! collide and the host admits no (1,≤ell)-identifying code. Conversely
//! any colliding pair in such a host restricts to an obstruction, so the
//! members that contain no other member characterize admissibility.
//!
//! The search fixes the shape of the anchors (sizes of `X \ Y`, `X ∩ Y`,
//! `Y \ X`), assigns in-neighborhoods to `X` (which determines the vertex
//! set), then to `Y \ X` under a coverage bound, and deduplicates by
//! canonical form before the minimality pass.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalForm, CANONICAL_MAX_VERTICES};
use super::matcher::contains_subdigraph;
use super::{Anchors, ObstructionCatalog, Pattern, PatternError, Provenance};
use crate::digraph::Digraph;
use crate::vertex_set::VertexSet;

/// Largest possible obstruction order: `|N⁻[X]| ≤ (d + 1)·ell`.
pub fn obstruction_size_bound(d: usize, ell: usize) -> usize {
    (d + 1) * ell
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    /// `|X \ Y|`
    only_x: usize,
    /// `|X ∩ Y|`
    both: usize,
    /// `|Y \ X|`
    only_y: usize,
}

impl Shape {
    fn core(&self) -> usize {
        self.only_x + self.both + self.only_y
    }

    fn x_count(&self) -> usize {
        self.only_x + self.both
    }
}

/// Anchor shapes up to swapping `X` and `Y`.
fn shapes(ell: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for only_x in 0..=ell {
        for both in 0..=ell - only_x {
            for only_y in 0..=only_x.min(ell - both) {
                if only_x + both == 0 || both + only_y == 0 || only_x + only_y == 0 {
                    continue;
                }
                out.push(Shape { only_x, both, only_y });
            }
        }
    }
    out
}

/// `k`-subsets of the set bits of `pool`, as masks, in lexicographic order.
fn combinations(pool: u32, k: usize) -> Vec<u32> {
    fn rec(bits: &[u32], k: usize, start: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..bits.len() {
            if bits.len() - i < k {
                break;
            }
            rec(bits, k - 1, i + 1, acc | bits[i], out);
        }
    }
    let bits: Vec<u32> = (0..32).filter(|b| pool >> b & 1 == 1).map(|b| 1u32 << b).collect();
    let mut out = Vec::new();
    rec(&bits, k, 0, 0, &mut out);
    out
}

fn low_bits(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn range_mask(lo: usize, hi: usize) -> u32 {
    low_bits(hi) & !low_bits(lo)
}

type Found = (CanonicalForm, Digraph, Anchors);

struct ShapeSearch {
    d: usize,
    cap: usize,
    shape: Shape,
    /// In-neighborhood masks of the core vertices.
    in_sets: Vec<u32>,
    seen: HashSet<CanonicalForm>,
    found: Vec<Found>,
}

impl ShapeSearch {
    fn new(d: usize, cap: usize, shape: Shape) -> Self {
        ShapeSearch { d, cap, shape, in_sets: vec![0; shape.core()], seen: HashSet::new(), found: Vec::new() }
    }

    /// Choices for the in-neighborhood of `X` vertex `i` when the digraph
    /// currently has `order` vertices. Fresh vertices are taken in label
    /// order so each labeled structure is produced once.
    fn x_choices(&self, i: usize, order: usize) -> Vec<u32> {
        let limit = (order + self.d).min(self.cap);
        let pool = low_bits(limit) & !(1 << i);
        combinations(pool, self.d)
            .into_iter()
            .filter(|&c| {
                let fresh = c & !low_bits(order);
                fresh == 0 || (fresh >> order).trailing_ones() == fresh.count_ones()
            })
            .collect()
    }

    fn grown(order: usize, choice: u32) -> usize {
        order.max(32 - choice.leading_zeros() as usize)
    }

    fn assign_x(&mut self, i: usize, order: usize) {
        let core = self.shape.core();
        let x_count = self.shape.x_count();
        let only_y = range_mask(x_count, core);
        let covered = self.in_sets[..i].iter().fold(0, |acc, &s| acc | s);
        // Every vertex of Y \ X must end up in N⁻(X).
        let missing = (only_y & !covered).count_ones() as usize;
        if missing > self.d * (x_count - i) {
            return;
        }
        if i == x_count {
            self.assign_only_y(x_count, order);
            return;
        }
        for choice in self.x_choices(i, order) {
            self.in_sets[i] = choice;
            self.assign_x(i + 1, Self::grown(order, choice));
        }
        self.in_sets[i] = 0;
    }

    fn assign_only_y(&mut self, j: usize, order: usize) {
        let core = self.shape.core();
        let all = low_bits(order);
        let y_mask = range_mask(self.shape.only_x, core);
        let covered = self.in_sets[self.shape.only_x..j].iter().fold(y_mask, |acc, &s| acc | s);
        let missing = (all & !covered).count_ones() as usize;
        if missing > self.d * (core - j) {
            return;
        }
        if j == core {
            self.record(order);
            return;
        }
        for choice in combinations(all & !(1 << j), self.d) {
            self.in_sets[j] = choice;
            self.assign_only_y(j + 1, order);
        }
        self.in_sets[j] = 0;
    }

    fn record(&mut self, order: usize) {
        let mut arcs = Vec::with_capacity(self.d * self.in_sets.len());
        for (v, &mask) in self.in_sets.iter().enumerate() {
            for u in 0..order {
                if mask >> u & 1 == 1 {
                    arcs.push((u, v));
                }
            }
        }
        let body = Digraph::from_arc_list(order, &arcs).expect("in-sets exclude loops");
        let form = canonical_form(&body).expect("order within canonical limit");
        if self.seen.insert(form.clone()) {
            let core = self.shape.core();
            let anchors = Anchors {
                x: VertexSet::from_indices(order, 0..self.shape.x_count()),
                y: VertexSet::from_indices(order, self.shape.only_x..core),
            };
            self.found.push((form, body, anchors));
        }
    }
}

/// Candidates for one shape and one in-neighborhood of the first `X`
/// vertex; the unit of parallel work.
fn search_branch(d: usize, cap: usize, shape: Shape, first: u32) -> Vec<Found> {
    let mut s = ShapeSearch::new(d, cap, shape);
    s.in_sets[0] = first;
    s.assign_x(1, ShapeSearch::grown(shape.core(), first));
    s.found
}

/// Derives the minimal obstructions for `d`-in-regular hosts at `ell`.
///
/// `max_size` caps the order of the bodies searched and must reach
/// [`obstruction_size_bound`], otherwise members could be missed. Members
/// are ordered by arc count, then order, then canonical form, and named
/// `obs-<d>-<ell>-NN`.
pub fn enumerate_obstructions(d: usize, ell: usize, max_size: usize) -> Result<ObstructionCatalog, PatternError> {
    if d == 0 || ell == 0 {
        return Err(PatternError::BadParameters(format!("d and ell must be positive (d={d}, ell={ell})")));
    }
    let bound = obstruction_size_bound(d, ell);
    if max_size < bound {
        return Err(PatternError::SizeCapTooSmall { d, ell, max_size, bound });
    }
    if bound > CANONICAL_MAX_VERTICES {
        return Err(PatternError::TooLarge { n: bound, max: CANONICAL_MAX_VERTICES });
    }

    let mut tasks = Vec::new();
    for shape in shapes(ell) {
        let probe = ShapeSearch::new(d, bound, shape);
        for first in probe.x_choices(0, shape.core()) {
            tasks.push((shape, first));
        }
    }
    let batches: Vec<Vec<Found>> =
        tasks.par_iter().map(|&(shape, first)| search_branch(d, bound, shape, first)).collect();

    // Keep the first labeled representative of each class.
    let mut classes: HashMap<CanonicalForm, (Digraph, Anchors)> = HashMap::new();
    let mut order = Vec::new();
    for (form, body, anchors) in batches.into_iter().flatten() {
        if let std::collections::hash_map::Entry::Vacant(e) = classes.entry(form.clone()) {
            e.insert((body, anchors));
            order.push(form);
        }
    }
    let mut candidates: Vec<(CanonicalForm, Digraph, Anchors)> = order
        .into_iter()
        .map(|f| {
            let (b, a) = classes.remove(&f).expect("recorded above");
            (f, b, a)
        })
        .collect();
    candidates.sort_by(|a, b| (a.1.arc_count(), a.1.order(), &a.0).cmp(&(b.1.arc_count(), b.1.order(), &b.0)));

    // Minimality: a candidate survives unless it contains a smaller member.
    // Bodies have no isolated vertices, so containment between bodies with
    // equal arc counts forces isomorphism and only smaller groups matter.
    let mut accepted: Vec<(Digraph, Anchors)> = Vec::new();
    let mut i = 0;
    while i < candidates.len() {
        let m = candidates[i].1.arc_count();
        let j = candidates[i..].iter().position(|c| c.1.arc_count() != m).map_or(candidates.len(), |p| i + p);
        let survivors: Vec<bool> = candidates[i..j]
            .par_iter()
            .map(|(_, body, _)| !accepted.iter().any(|(small, _)| contains_subdigraph(body, small)))
            .collect();
        for (c, keep) in candidates[i..j].iter().zip(survivors) {
            if keep {
                accepted.push((c.1.clone(), c.2.clone()));
            }
        }
        i = j;
    }

    let members = accepted
        .into_iter()
        .enumerate()
        .map(|(k, (body, anchors))| Pattern::new(format!("obs-{d}-{ell}-{:02}", k + 1), body, Some(anchors)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ObstructionCatalog { d, ell, members, provenance: Provenance::Derived })
}
