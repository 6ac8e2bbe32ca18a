//! Geodetic convexity in the permutohedral graph.
//!
//! A non-empty set of enumerations is the set of linear extensions of a poset
//! exactly when it is geodetically convex, and the poset can then be read off
//! the set: its covering relation consists of the directed boundary edges.
//! This module decides convexity through the Galois fixpoint (the cheap
//! route), reconstructs the poset, computes the height and diameter of a set,
//! searches for the order dimension of a poset, and encodes posets as
//! intervals of pairs relative to a reference enumeration.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::enumerations::{EdgeLabel, Enumeration};
use crate::extensions::{enumset_closure, linear_extensions, upper_galois, EnumSet};
use crate::relations::{ElementSet, Poset, Relation, RelationError};

/// Raised when a poset is asked for a set that does not describe one.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConvexityError {
    #[error("the empty set describes no poset")]
    EmptySet,
    #[error("the set is not geodetically convex")]
    NotConvex,
}

/// A witness that a set is not geodetically convex: `witness` lies on a
/// geodesic between two members but is excluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolatingTriple {
    pub left: Enumeration,
    pub witness: Enumeration,
    pub right: Enumeration,
}

/// The verdict of [`is_geodetically_convex`], carrying its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexityReport {
    /// The empty set, convex vacuously.
    ConvexEmpty,
    /// Convex and non-empty: the reconstructed poset with this extension set.
    Convex(Poset),
    /// Not convex: a triple exhibiting the violation.
    NotConvex(ViolatingTriple),
}

impl ConvexityReport {
    pub fn is_convex(&self) -> bool {
        !matches!(self, ConvexityReport::NotConvex(_))
    }
}

/// The labels occurring on edges inside the induced subgraph on `S`.
///
/// Found by probing each member's n−1 neighbors, so the complement is never
/// touched.
pub fn inversions_within(s: &EnumSet) -> BTreeSet<EdgeLabel> {
    assert!(!s.is_empty(), "inversions are defined for non-empty sets");
    let n = s.base().n();
    let mut labels = BTreeSet::new();
    for e in s.iter() {
        for i in 1..n {
            let neighbor = e.swap_at(i);
            if s.contains(&neighbor) {
                labels.insert(EdgeLabel::new(e.index_at(i - 1), e.index_at(i)));
            }
        }
    }
    labels
}

/// The covering relation of `S`: pairs `(u, v)` with a boundary edge labeled
/// `{u,v}` leaving `S` from a member that places `u` before `v`.
pub fn covering_of(s: &EnumSet) -> Relation {
    assert!(!s.is_empty(), "the covering relation is defined for non-empty sets");
    let n = s.base().n();
    let mut cov = Relation::empty(s.base().clone());
    for e in s.iter() {
        for i in 1..n {
            let neighbor = e.swap_at(i);
            if !s.contains(&neighbor) {
                cov.set(e.index_at(i - 1), e.index_at(i));
            }
        }
    }
    cov
}

/// Decides geodetic convexity via the Galois fixpoint `closure(S) = S`.
///
/// A convex non-empty set is returned with its reconstructed poset; a
/// non-convex set with a violating triple found from the direct definition,
/// scanning member pairs in lexicographic order and stopping at the first
/// strictly-between excluded node.
pub fn is_geodetically_convex(s: &EnumSet) -> ConvexityReport {
    if s.is_empty() {
        return ConvexityReport::ConvexEmpty;
    }
    if enumset_closure(s) == *s {
        let poset = reconstruct_poset(s).expect("a closure fixpoint is poset-interpretable");
        ConvexityReport::Convex(poset)
    } else {
        let triple = violating_triple(s).expect("a non-fixpoint has a violating triple");
        ConvexityReport::NotConvex(triple)
    }
}

fn violating_triple(s: &EnumSet) -> Option<ViolatingTriple> {
    for left in s.iter() {
        for right in s.iter() {
            // the nodes between two enumerations are the linear extensions of
            // the intersection of their tosets
            let between = left
                .toset()
                .as_relation()
                .intersection(right.toset().as_relation())
                .expect("members share a base");
            for witness in linear_extensions(&between).iter() {
                if !s.contains(witness) {
                    return Some(ViolatingTriple {
                        left: left.clone(),
                        witness: witness.clone(),
                        right: right.clone(),
                    });
                }
            }
        }
    }
    None
}

/// Rebuilds the poset whose linear extensions are `S`: `tr(Δ ∪ Cov(S))`.
///
/// Fails when `S` is empty or not geodetically convex; success is certified
/// by regenerating the extension set.
pub fn reconstruct_poset(s: &EnumSet) -> Result<Poset, ConvexityError> {
    if s.is_empty() {
        return Err(ConvexityError::EmptySet);
    }
    let candidate = covering_of(s)
        .with_diagonal()
        .transitive_closure()
        .validate_poset()
        .map_err(|_| ConvexityError::NotConvex)?;
    if linear_extensions(&candidate.full_relation()) != *s {
        return Err(ConvexityError::NotConvex);
    }
    Ok(candidate)
}

/// The three-way test every extension set passes: each unordered pair is an
/// inversion within `S`, or comparable one way in `tr(Cov(S))`, or the other —
/// exactly one of the three.
///
/// This is a necessary condition for being an extension set, not a decision
/// procedure.
pub fn trichotomy_check(s: &EnumSet) -> bool {
    assert!(!s.is_empty(), "the trichotomy is stated for non-empty sets");
    let inv = inversions_within(s);
    let tc = covering_of(s).transitive_closure();
    let n = s.base().n();
    for u in 0..n {
        for v in (u + 1)..n {
            let hits = usize::from(inv.contains(&EdgeLabel::new(u, v)))
                + usize::from(tc.contains_ix(u, v))
                + usize::from(tc.contains_ix(v, u));
            if hits != 1 {
                return false;
            }
        }
    }
    true
}

/// The height of `S` in the lattice of convex sets: |Inv(S)|, with the empty
/// set graded −1.
pub fn height(s: &EnumSet) -> i64 {
    if s.is_empty() {
        -1
    } else {
        inversions_within(s).len() as i64
    }
}

/// Largest pairwise distance within a non-empty set.
///
/// For convex sets this never exceeds the height, and for n ≤ 5 the two
/// coincide; the six-element example below separates them.
pub fn diameter(s: &EnumSet) -> usize {
    assert!(!s.is_empty(), "the diameter is defined for non-empty sets");
    let mut max = 0;
    for a in s.iter() {
        for b in s.iter() {
            max = max.max(crate::enumerations::distance(a, b));
        }
    }
    max
}

/// Multi-word bitmask over the strictly-missing ordered pairs of a poset.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PairMask(Vec<u64>);

impl PairMask {
    fn zeros(words: usize) -> Self {
        PairMask(vec![0; words])
    }

    fn set(&mut self, bit: usize) {
        self.0[bit / 64] |= 1 << (bit % 64);
    }

    fn or_assign(&mut self, other: &PairMask) {
        for (w, o) in self.0.iter_mut().zip(&other.0) {
            *w |= o;
        }
    }

    fn covers(&self, other: &PairMask) -> bool {
        self.0.iter().zip(&other.0).all(|(w, o)| o & !w == 0)
    }
}

/// Least k ≤ `max_k` such that k linear extensions of `P` intersect to `P`
/// exactly; `None` when no realizer that small exists.
///
/// Candidates are restricted to `L(P)` (any realizer consists of linear
/// extensions). An extension contributes the set of missing ordered pairs it
/// reverses; a family realizes `P` exactly when those sets cover all missing
/// pairs, which prunes the subset search to mask arithmetic before the final
/// Galois confirmation.
pub fn poset_dimension(p: &Poset, max_k: usize) -> Option<usize> {
    assert!(max_k >= 1, "the search needs at least one candidate slot");
    let full = p.full_relation();
    let n = p.base().n();
    let mut missing = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && !full.contains_ix(u, v) {
                missing.push((u, v));
            }
        }
    }
    let exts: Vec<Enumeration> = linear_extensions(&full).iter().cloned().collect();
    if missing.is_empty() {
        // a toset is realized by its own enumeration
        return Some(1);
    }
    let words = missing.len().div_ceil(64);
    let mut target = PairMask::zeros(words);
    for bit in 0..missing.len() {
        target.set(bit);
    }
    // distinct reversal profiles are all that matter for coverage
    let mut masks: Vec<PairMask> = Vec::new();
    let mut profile_rep: Vec<usize> = Vec::new();
    for (eix, e) in exts.iter().enumerate() {
        let mut m = PairMask::zeros(words);
        for (bit, &(u, v)) in missing.iter().enumerate() {
            if e.position0(v) < e.position0(u) {
                m.set(bit);
            }
        }
        if !masks.contains(&m) {
            masks.push(m);
            profile_rep.push(eix);
        }
    }
    // suffix unions let the search cut branches that can no longer cover
    let mut suffix = vec![PairMask::zeros(words); masks.len() + 1];
    for i in (0..masks.len()).rev() {
        suffix[i] = suffix[i + 1].clone();
        suffix[i].or_assign(&masks[i]);
    }
    for k in 1..=max_k {
        let mut chosen = Vec::with_capacity(k);
        if search_cover(&masks, &suffix, &target, &PairMask::zeros(words), 0, k, &mut chosen) {
            let members: Vec<Enumeration> =
                chosen.iter().map(|&i| exts[profile_rep[i]].clone()).collect();
            let s = EnumSet::new(p.base().clone(), members).expect("candidates share the base");
            debug_assert_eq!(upper_galois(&s), full);
            if upper_galois(&s) == full {
                return Some(k);
            }
        }
    }
    None
}

fn search_cover(
    masks: &[PairMask],
    suffix: &[PairMask],
    target: &PairMask,
    acc: &PairMask,
    start: usize,
    slots: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if acc.covers(target) {
        return true;
    }
    if slots == 0 || start == masks.len() {
        return false;
    }
    let mut reachable = acc.clone();
    reachable.or_assign(&suffix[start]);
    if !reachable.covers(target) {
        return false;
    }
    for i in start..masks.len() {
        let mut next = acc.clone();
        next.or_assign(&masks[i]);
        chosen.push(i);
        if search_cover(masks, suffix, target, &next, i + 1, slots - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// The fixed six-element poset whose extension set separates diameter from
/// height: `a, b, c` each below two of `d, e, f`.
///
/// Its 48 extensions split into four face sets, its height is 9, its diameter
/// 8, and its order dimension 3.
pub fn example_dim3() -> Poset {
    let base = ElementSet::new(["a", "b", "c", "d", "e", "f"]).expect("six distinct names");
    Poset::from_strict_pairs(
        base,
        [
            ("a", "e"),
            ("a", "f"),
            ("b", "d"),
            ("b", "f"),
            ("c", "d"),
            ("c", "e"),
        ],
    )
    .expect("the relation is transitive and acyclic")
}

/// Raised when an interval code's pair sets are malformed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalCodeError {
    #[error(transparent)]
    Base(#[from] RelationError),
    #[error("pair ({0},{1}) is not strictly increasing in the reference")]
    NotInReference(String, String),
    #[error("lower set is not contained in the upper set")]
    LowerExceedsUpper,
}

/// A poset encoded against a reference enumeration `D`: a pair of sets
/// `A ⊆ B` of strict reference pairs.
///
/// The code selects the enumerations whose disagreement with the reference
/// lies between `A` and `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalCode {
    reference: Enumeration,
    lower: Relation,
    upper: Relation,
}

impl IntervalCode {
    /// Builds a code, checking `A ⊆ B ⊆ T_D ∖ Δ`.
    pub fn new<'a, I, J>(reference: Enumeration, lower: I, upper: J) -> Result<Self, IntervalCodeError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
        J: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let base = reference.base().clone();
        let lower = Relation::from_pairs(base.clone(), lower)?;
        let upper = Relation::from_pairs(base, upper)?;
        Self::from_relations(reference, lower, upper)
    }

    pub(crate) fn from_relations(
        reference: Enumeration,
        lower: Relation,
        upper: Relation,
    ) -> Result<Self, IntervalCodeError> {
        let strict_ref = reference.toset().as_relation().strict_part();
        for rel in [&lower, &upper] {
            for (u, v) in rel.pair_ixs() {
                if !strict_ref.contains_ix(u, v) {
                    return Err(IntervalCodeError::NotInReference(
                        reference.base().name(u).to_string(),
                        reference.base().name(v).to_string(),
                    ));
                }
            }
        }
        if !lower.is_subset_of(&upper) {
            return Err(IntervalCodeError::LowerExceedsUpper);
        }
        Ok(IntervalCode {
            reference,
            lower,
            upper,
        })
    }

    pub fn reference(&self) -> &Enumeration {
        &self.reference
    }

    /// The set `A` of reference pairs every selected enumeration reverses.
    pub fn lower(&self) -> &Relation {
        &self.lower
    }

    /// The set `B` of reference pairs a selected enumeration may reverse.
    pub fn upper(&self) -> &Relation {
        &self.upper
    }
}

/// The enumerations selected by an interval code: those reversing every pair
/// of `A` and no pair outside `B`. Always geodetically convex.
pub fn interval_extensions(code: &IntervalCode) -> EnumSet {
    // forcing the A-pairs reversed and the (T_D ∖ B)-pairs kept is a plain
    // constraint relation, so the set is a linear-extension set
    let strict_ref = code.reference.toset().as_relation().strict_part();
    let kept = strict_ref
        .difference(&code.upper)
        .expect("code pairs live over the reference base");
    let constraints = code
        .lower
        .opposite()
        .union(&kept)
        .expect("both parts live over the reference base");
    linear_extensions(&constraints)
}

/// Encodes a poset against a reference enumeration as the unique minimal
/// interval: `A = (T_D ∩ P^op) ∖ Δ` and `B = T_D ∖ P`.
///
/// Decoding the result with [`interval_extensions`] yields `L(P)` again.
pub fn encode_interval(p: &Poset, reference: &Enumeration) -> IntervalCode {
    assert!(p.base() == reference.base(), "reference must list the poset's base");
    let strict_ref = reference.toset().as_relation().strict_part();
    let full = p.full_relation();
    let lower = strict_ref
        .intersection(&full.opposite())
        .expect("same base");
    let upper = strict_ref.difference(&full).expect("same base");
    IntervalCode::from_relations(reference.clone(), lower, upper)
        .expect("construction satisfies A ⊆ B ⊆ T_D ∖ Δ")
}

/// The same minimal code computed from the extension set instead of the
/// poset: `A` intersects and `B` unions the members' disagreement with the
/// reference. Coincides with [`encode_interval`] on `S = L(P)`.
pub fn encode_interval_from_extensions(s: &EnumSet, reference: &Enumeration) -> IntervalCode {
    assert!(!s.is_empty(), "the minimal code is defined for non-empty sets");
    assert!(s.base() == reference.base(), "reference must list the set's base");
    let strict_ref = reference.toset().as_relation().strict_part();
    let mut lower = strict_ref.clone();
    let mut upper = Relation::empty(s.base().clone());
    for e in s.iter() {
        let disagreement = strict_ref
            .difference(e.toset().as_relation())
            .expect("same base");
        lower = lower.intersection(&disagreement).expect("same base");
        upper = upper.union(&disagreement).expect("same base");
    }
    IntervalCode::from_relations(reference.clone(), lower, upper)
        .expect("intersection and union of disagreements are nested")
}
