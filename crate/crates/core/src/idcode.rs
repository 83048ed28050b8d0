//! (1,≤ℓ)-identifying codes: verification, admissibility, the in-degree
//! bound on ℓ, and the reduction of code search to hitting set.
//!
//! A set `C` is a code when the traces `N⁻[X] ∩ C` are pairwise distinct
//! over all nonempty vertex sets `X` with `|X| ≤ ℓ`. Subsets are always
//! visited by cardinality, then lexicographically on sorted indices, so
//! the first collision found is a canonical witness.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::digraph::Digraph;
use crate::vertex_set::VertexSet;

/// Default cap on the number of subsets visited by one check.
pub const DEFAULT_SUBSET_BUDGET: u64 = 5_000_000;
/// Default cap on the number of subset pairs in a separation instance.
pub const DEFAULT_PAIR_BUDGET: u64 = 20_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("ell = {ell} must satisfy 1 <= ell <= n = {n}")]
    EllOutOfRange { ell: usize, n: usize },
    #[error("code is over {got} vertices but the digraph has {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("{what} count {count} exceeds the budget of {budget}")]
    ConfigLimit { what: &'static str, count: u128, budget: u64 },
}

/// Work limits for subset enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub subset_budget: u64,
    pub pair_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { subset_budget: DEFAULT_SUBSET_BUDGET, pair_budget: DEFAULT_PAIR_BUDGET }
    }
}

/// Two distinct vertex sets whose closed in-neighborhoods agree on `scope`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessPair {
    pub x: VertexSet,
    pub y: VertexSet,
    pub scope: VertexSet,
}

impl WitnessPair {
    /// Re-checks the witness against `d` for parameter `ell`.
    pub fn holds_in(&self, d: &Digraph, ell: usize) -> bool {
        let sizes_ok = |s: &VertexSet| (1..=ell).contains(&s.len());
        self.x != self.y
            && sizes_ok(&self.x)
            && sizes_ok(&self.y)
            && d.closed_in_neighborhood(&self.x).intersection(&self.scope)
                == d.closed_in_neighborhood(&self.y).intersection(&self.scope)
    }
}

impl fmt::Display for WitnessPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X={} Y={}", self.x, self.y)
    }
}

/// Outcome of a code or admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<WitnessPair>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn fail(witness: WitnessPair) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `Σ_{1≤k≤ell} C(n, k)`.
pub fn subset_count(n: usize, ell: usize) -> u128 {
    (1..=ell.min(n)).map(|k| binomial(n, k)).sum()
}

fn check_ell(d: &Digraph, ell: usize) -> Result<(), CodeError> {
    if ell == 0 || ell > d.order() {
        return Err(CodeError::EllOutOfRange { ell, n: d.order() });
    }
    Ok(())
}

fn check_subset_budget(n: usize, ell: usize, limits: &Limits) -> Result<(), CodeError> {
    let count = subset_count(n, ell);
    if count > limits.subset_budget as u128 {
        return Err(CodeError::ConfigLimit { what: "subset", count, budget: limits.subset_budget });
    }
    Ok(())
}

/// Visits every nonempty subset of `0..sets.len()` of size at most `ell`,
/// by cardinality then lexicographically, passing the subset and the union
/// of the corresponding `sets`.
pub(crate) fn visit_subsets<F>(sets: &[VertexSet], ambient: usize, ell: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[usize], &VertexSet) -> ControlFlow<()>,
{
    let n = sets.len();
    let mut chosen = Vec::with_capacity(ell);
    let mut unions = vec![VertexSet::new(ambient); ell + 1];
    for k in 1..=ell.min(n) {
        visit_k(sets, k, 0, &mut chosen, &mut unions, &mut f)?;
    }
    ControlFlow::Continue(())
}

fn visit_k<F>(
    sets: &[VertexSet],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    unions: &mut [VertexSet],
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &VertexSet) -> ControlFlow<()>,
{
    let depth = chosen.len();
    if depth == k {
        return f(chosen, &unions[depth]);
    }
    let remaining = k - depth;
    for v in start..=sets.len() - remaining {
        let (lo, hi) = unions.split_at_mut(depth + 1);
        hi[0].clone_from(&lo[depth]);
        hi[0].union_with(&sets[v]);
        chosen.push(v);
        let flow = visit_k(sets, k, v + 1, chosen, unions, f);
        chosen.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

fn set_of(n: usize, subset: &[usize]) -> VertexSet {
    VertexSet::from_indices(n, subset.iter().copied())
}

/// First colliding pair of traces `N⁻[X] ∩ scope`, in enumeration order.
fn first_collision(d: &Digraph, scope: &VertexSet, ell: usize) -> Option<WitnessPair> {
    let n = d.order();
    let traces: Vec<VertexSet> = (0..n).map(|v| d.closed_in_neighborhood_of(v).intersection(scope)).collect();
    let mut seen: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    let mut witness = None;
    let _ = visit_subsets(&traces, n, ell, |subset, trace| {
        // Keys are full bitsets, so a hit is an exact set equality.
        match seen.get(trace) {
            Some(first) => {
                witness = Some(WitnessPair { x: set_of(n, first), y: set_of(n, subset), scope: scope.clone() });
                ControlFlow::Break(())
            }
            None => {
                seen.insert(trace.clone(), subset.to_vec());
                ControlFlow::Continue(())
            }
        }
    });
    witness
}

pub fn is_identifying_code(d: &Digraph, code: &VertexSet, ell: usize) -> Result<Verdict, CodeError> {
    is_identifying_code_with(d, code, ell, &Limits::default())
}

pub fn is_identifying_code_with(
    d: &Digraph,
    code: &VertexSet,
    ell: usize,
    limits: &Limits,
) -> Result<Verdict, CodeError> {
    check_ell(d, ell)?;
    if code.ambient() != d.order() {
        return Err(CodeError::AmbientMismatch { expected: d.order(), got: code.ambient() });
    }
    check_subset_budget(d.order(), ell, limits)?;
    Ok(match first_collision(d, code, ell) {
        Some(w) => Verdict::fail(w),
        None => Verdict::pass(),
    })
}

/// Whether `d` has any (1,≤ell)-identifying code, i.e. whether the whole
/// vertex set is one.
pub fn admits(d: &Digraph, ell: usize) -> Result<Verdict, CodeError> {
    admits_with(d, ell, &Limits::default())
}

pub fn admits_with(d: &Digraph, ell: usize, limits: &Limits) -> Result<Verdict, CodeError> {
    is_identifying_code_with(d, &d.vertex_set(), ell, limits)
}

/// Upper bound on any admissible `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllBound {
    AtMost(usize),
    /// No arcs: no vertex constrains `ell`.
    Unbounded,
}

impl EllBound {
    /// The bound as a count, reporting `Unbounded` as `n`.
    pub fn as_count(self, n: usize) -> usize {
        match self {
            EllBound::AtMost(b) => b,
            EllBound::Unbounded => n,
        }
    }
}

impl fmt::Display for EllBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllBound::AtMost(b) => write!(f, "{b}"),
            EllBound::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// `min(d⁻(u) + 1 : d⁺(u) ≥ 1)`, tightened to `d⁻(u)` for vertices on a
/// digon.
pub fn max_ell_upper_bound(d: &Digraph) -> EllBound {
    let mut best: Option<usize> = None;
    for u in 0..d.order() {
        if d.out_degree(u) == 0 {
            continue;
        }
        let b = if d.lies_on_digon(u) { d.in_degree(u) } else { d.in_degree(u) + 1 };
        best = Some(best.map_or(b, |x| x.min(b)));
    }
    best.map_or(EllBound::Unbounded, EllBound::AtMost)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationPair {
    pub x: VertexSet,
    pub y: VertexSet,
    /// `N⁻[X] Δ N⁻[Y]`; a code must meet it.
    pub diff: VertexSet,
}

/// All constraints a (1,≤ell)-identifying code must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationInstance {
    pub ell: usize,
    pub pairs: Vec<SeparationPair>,
    /// Some diff is empty, so no code exists.
    pub inadmissible: bool,
}

impl SeparationInstance {
    /// Whether `code` meets every diff.
    pub fn is_hit_by(&self, code: &VertexSet) -> bool {
        self.pairs.iter().all(|p| p.diff.intersects(code))
    }
}

fn closed_sets(d: &Digraph, ell: usize, limits: &Limits) -> Result<Vec<(VertexSet, VertexSet)>, CodeError> {
    check_ell(d, ell)?;
    check_subset_budget(d.order(), ell, limits)?;
    let count = subset_count(d.order(), ell);
    let pairs = count * count.saturating_sub(1) / 2;
    if pairs > limits.pair_budget as u128 {
        return Err(CodeError::ConfigLimit { what: "pair", count: pairs, budget: limits.pair_budget });
    }
    let n = d.order();
    let closed: Vec<VertexSet> = (0..n).map(|v| d.closed_in_neighborhood_of(v)).collect();
    let mut out = Vec::with_capacity(count as usize);
    let _ = visit_subsets(&closed, n, ell, |subset, nbhd| {
        out.push((set_of(n, subset), nbhd.clone()));
        ControlFlow::Continue(())
    });
    Ok(out)
}

pub fn separation_instance(d: &Digraph, ell: usize) -> Result<SeparationInstance, CodeError> {
    separation_instance_with(d, ell, &Limits::default())
}

pub fn separation_instance_with(d: &Digraph, ell: usize, limits: &Limits) -> Result<SeparationInstance, CodeError> {
    let sets = closed_sets(d, ell, limits)?;
    let mut pairs = Vec::with_capacity(sets.len() * sets.len().saturating_sub(1) / 2);
    let mut inadmissible = false;
    for (i, (x, nx)) in sets.iter().enumerate() {
        for (y, ny) in &sets[i + 1..] {
            let diff = nx.symmetric_difference(ny);
            inadmissible |= diff.is_empty();
            pairs.push(SeparationPair { x: x.clone(), y: y.clone(), diff });
        }
    }
    Ok(SeparationInstance { ell, pairs, inadmissible })
}

/// Distinct diffs only, each listed once; `None` when some diff is empty.
pub(crate) fn distinct_diffs(d: &Digraph, ell: usize, limits: &Limits) -> Result<Option<Vec<VertexSet>>, CodeError> {
    let sets = closed_sets(d, ell, limits)?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (i, (_, nx)) in sets.iter().enumerate() {
        for (_, ny) in &sets[i + 1..] {
            let diff = nx.symmetric_difference(ny);
            if diff.is_empty() {
                return Ok(None);
            }
            if seen.insert(diff.clone()) {
                out.push(diff);
            }
        }
    }
    Ok(Some(out))
}
