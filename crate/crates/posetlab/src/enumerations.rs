//! Enumerations of the element set and the permutohedral graph.
//!
//! An enumeration is an ordered listing of all elements, written `|a|b|c|`.
//! Two enumerations are adjacent when they differ by an adjacent
//! transposition; the resulting graph on all n! enumerations is the
//! permutohedral graph. Its metric is computed combinatorially — the distance
//! between two enumerations is their number of inversions — so the graph
//! itself is never materialized outside of test oracles.
//!
//! Positions are 1-based throughout: an enumeration is a bijection from
//! {1, …, n} onto the element set.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::extensions::EnumSet;
use crate::relations::{ElementSet, PosetDefect, Relation, RelationError};

/// Raised by [`edge_bipartition`] when its arguments are not adjacent.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("enumerations are not adjacent in the permutohedral graph")]
pub struct NotAdjacent;

/// A bijection from positions {1, …, n} onto the element set.
///
/// Holds both directions of the bijection: `order` lists the element at each
/// position and the inverse (the rank vector) maps each element to its
/// position.
#[derive(Clone)]
pub struct Enumeration {
    base: ElementSet,
    order: Vec<usize>,
    inverse: Vec<usize>,
}

impl Enumeration {
    /// Builds an enumeration from identifiers listed first to last.
    pub fn new<I, S>(base: ElementSet, order: I) -> Result<Self, RelationError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut ixs = Vec::with_capacity(base.n());
        for name in order {
            ixs.push(base.require(name.as_ref())?);
        }
        let mut seen = 0u64;
        for &ix in &ixs {
            if seen & (1 << ix) != 0 {
                return Err(RelationError::DuplicateElement(base.name(ix).to_string()));
            }
            seen |= 1 << ix;
        }
        if ixs.len() != base.n() {
            return Err(RelationError::BaseMismatch);
        }
        Ok(Self::from_order(base, ixs))
    }

    pub(crate) fn from_order(base: ElementSet, order: Vec<usize>) -> Self {
        let mut inverse = vec![0; order.len()];
        for (pos0, &u) in order.iter().enumerate() {
            inverse[u] = pos0;
        }
        Enumeration { base, order, inverse }
    }

    /// The lexicographic enumeration of the base.
    pub fn identity(base: ElementSet) -> Self {
        let order = (0..base.n()).collect();
        Self::from_order(base, order)
    }

    pub fn base(&self) -> &ElementSet {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// The element at position `i`, 1-based.
    pub fn at(&self, i: usize) -> &str {
        assert!((1..=self.n()).contains(&i), "position {i} out of range");
        self.base.name(self.order[i - 1])
    }

    /// The 1-based position of an element (the rank vector evaluated at it).
    pub fn position(&self, name: &str) -> Result<usize, RelationError> {
        Ok(self.inverse[self.base.require(name)?] + 1)
    }

    pub(crate) fn index_at(&self, i0: usize) -> usize {
        self.order[i0]
    }

    pub(crate) fn position0(&self, u: usize) -> usize {
        self.inverse[u]
    }

    /// Elements in listed order.
    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(|&u| self.base.name(u))
    }

    /// The toset this enumeration induces: `(u, v)` compared iff `u` comes no
    /// later than `v`.
    pub fn toset(&self) -> Toset {
        let n = self.n();
        let mut rows = vec![0u64; n];
        // suffix[p] = elements at positions ≥ p (0-based)
        let mut suffix = self.base.full_mask();
        for p in 0..n {
            rows[self.order[p]] = suffix;
            suffix &= !(1 << self.order[p]);
        }
        Toset {
            relation: Relation::from_rows(self.base.clone(), rows),
        }
    }

    /// Swaps the elements at positions `i` and `i + 1` (1-based, `i < n`).
    ///
    /// The result is adjacent to `self` with edge label `{π(i), π(i+1)}`.
    pub fn swap_at(&self, i: usize) -> Enumeration {
        assert!((1..self.n()).contains(&i), "swap position {i} out of range");
        let mut order = self.order.clone();
        order.swap(i - 1, i);
        Self::from_order(self.base.clone(), order)
    }

    /// The reversed listing.
    pub fn reversal(&self) -> Enumeration {
        let order = self.order.iter().rev().copied().collect();
        Self::from_order(self.base.clone(), order)
    }

    /// The record `|a|b|c|`.
    pub fn record(&self) -> String {
        let mut s = String::from("|");
        for name in self.iter() {
            s.push_str(name);
            s.push('|');
        }
        s
    }
}

impl fmt::Debug for Enumeration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.record())
    }
}

impl fmt::Display for Enumeration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.record())
    }
}

impl PartialEq for Enumeration {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.order == other.order
    }
}

impl Eq for Enumeration {}

impl PartialOrd for Enumeration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Enumeration {
    fn cmp(&self, other: &Self) -> Ordering {
        // indices follow identifier order, so comparing index sequences over a
        // shared base is the lexicographic order on records
        self.base
            .cmp(&other.base)
            .then_with(|| self.order.cmp(&other.order))
    }
}

/// A total order on the element set, kept as its full relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Toset {
    relation: Relation,
}

/// Why a relation failed to be a total order.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TosetError {
    #[error(transparent)]
    Defect(#[from] PosetDefect),
    #[error("not-total")]
    NotTotal,
}

impl Toset {
    /// Validates that a relation is a reflexive, transitive, anti-symmetric,
    /// total order.
    pub fn try_new(relation: Relation) -> Result<Self, TosetError> {
        let poset = relation.validate_poset()?;
        if !poset.is_toset() {
            return Err(TosetError::NotTotal);
        }
        Ok(Toset { relation })
    }

    pub fn base(&self) -> &ElementSet {
        self.relation.base()
    }

    /// The full relation, diagonal included.
    pub fn as_relation(&self) -> &Relation {
        &self.relation
    }

    pub fn into_relation(self) -> Relation {
        self.relation
    }

    pub fn contains_ix(&self, u: usize, v: usize) -> bool {
        self.relation.contains_ix(u, v)
    }

    /// The enumeration listing elements in increasing order.
    pub fn enumeration(&self) -> Enumeration {
        let n = self.base().n();
        let mut order: Vec<usize> = (0..n).collect();
        // u precedes v exactly when u's row covers v's, so row popcount sorts
        order.sort_by_key(|&u| std::cmp::Reverse(self.relation.row(u).count_ones()));
        Enumeration::from_order(self.base().clone(), order)
    }
}

/// A two-element subset of the base, labelling an edge of the permutohedral
/// graph. Held as a pair of canonical indices with `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeLabel {
    lo: usize,
    hi: usize,
}

impl EdgeLabel {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "edge labels are two-element sets");
        EdgeLabel {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    /// Builds a label from identifiers.
    pub fn of(base: &ElementSet, a: &str, b: &str) -> Result<Self, RelationError> {
        let a = base.require(a)?;
        let b = base.require(b)?;
        if a == b {
            return Err(RelationError::DuplicateElement(base.name(a).to_string()));
        }
        Ok(EdgeLabel::new(a, b))
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn names<'a>(&self, base: &'a ElementSet) -> (&'a str, &'a str) {
        (base.name(self.lo), base.name(self.hi))
    }

    /// Renders as `{u,v}` with identifiers in lexicographic order.
    pub fn render(&self, base: &ElementSet) -> String {
        format!("{{{},{}}}", base.name(self.lo), base.name(self.hi))
    }
}

/// Streams all n! enumerations in lexicographic identifier order.
///
/// The stream is deterministic and restartable; nothing is materialized.
pub fn all_enumerations(base: &ElementSet) -> AllEnumerations {
    AllEnumerations {
        base: base.clone(),
        next: Some((0..base.n()).collect()),
    }
}

/// Iterator returned by [`all_enumerations`].
pub struct AllEnumerations {
    base: ElementSet,
    next: Option<Vec<usize>>,
}

impl Iterator for AllEnumerations {
    type Item = Enumeration;

    fn next(&mut self) -> Option<Enumeration> {
        let current = self.next.take()?;
        let out = Enumeration::from_order(self.base.clone(), current.clone());
        self.next = next_permutation(current);
        Some(out)
    }
}

fn next_permutation(mut seq: Vec<usize>) -> Option<Vec<usize>> {
    let n = seq.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    Some(seq)
}

fn assert_same_base(a: &Enumeration, b: &Enumeration) {
    assert!(a.base() == b.base(), "enumerations over different element sets");
}

/// The set of pairs whose mutual order differs between the two enumerations.
///
/// Symmetric in its arguments and empty exactly when they are equal.
pub fn inversions_between(a: &Enumeration, b: &Enumeration) -> std::collections::BTreeSet<EdgeLabel> {
    assert_same_base(a, b);
    let n = a.n();
    let mut out = std::collections::BTreeSet::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let in_a = a.position0(u) < a.position0(v);
            let in_b = b.position0(u) < b.position0(v);
            if in_a != in_b {
                out.insert(EdgeLabel::new(u, v));
            }
        }
    }
    out
}

/// Graph distance in the permutohedral graph: the number of inversions.
pub fn distance(a: &Enumeration, b: &Enumeration) -> usize {
    assert_same_base(a, b);
    let n = a.n();
    let mut count = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if (a.position0(u) < a.position0(v)) != (b.position0(u) < b.position0(v)) {
                count += 1;
            }
        }
    }
    count
}

/// The combinatorial label when the enumerations differ by one adjacent
/// transposition, `None` otherwise. Equivalent to distance 1.
pub fn adjacency(a: &Enumeration, b: &Enumeration) -> Option<EdgeLabel> {
    assert_same_base(a, b);
    let n = a.n();
    let mut swap_pos = None;
    let mut p = 0;
    while p < n {
        if a.order[p] == b.order[p] {
            p += 1;
            continue;
        }
        if p + 1 < n && a.order[p] == b.order[p + 1] && a.order[p + 1] == b.order[p] {
            if swap_pos.is_some() {
                return None;
            }
            swap_pos = Some(p);
            p += 2;
        } else {
            return None;
        }
    }
    swap_pos.map(|p| EdgeLabel::new(a.order[p], a.order[p + 1]))
}

/// Whether `mid` lies on some geodesic between `a` and `b`.
///
/// Decided by the toset criterion T_a ∩ T_b ⊆ T_mid, which agrees with
/// additivity of distances.
pub fn is_between(a: &Enumeration, mid: &Enumeration, b: &Enumeration) -> bool {
    assert_same_base(a, b);
    assert_same_base(a, mid);
    let n = a.n();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let in_a = a.position0(u) < a.position0(v);
            let in_b = b.position0(u) < b.position0(v);
            if in_a && in_b && !(mid.position0(u) < mid.position0(v)) {
                return false;
            }
        }
    }
    true
}

/// A canonical geodesic from `a` to `b`.
///
/// Each step swaps, at the lowest eligible position, an adjacent pair that
/// the target orders the other way. The walk has length `distance(a, b)`, no
/// edge label repeats, and the labels are exactly the inversions between the
/// endpoints.
pub fn geodesic(a: &Enumeration, b: &Enumeration) -> Vec<Enumeration> {
    assert_same_base(a, b);
    let n = a.n();
    let mut walk = vec![a.clone()];
    let mut current = a.clone();
    loop {
        let mut swapped = false;
        for p in 0..n.saturating_sub(1) {
            let (u, v) = (current.order[p], current.order[p + 1]);
            if b.position0(u) > b.position0(v) {
                current = current.swap_at(p + 1);
                walk.push(current.clone());
                swapped = true;
                break;
            }
        }
        if !swapped {
            debug_assert_eq!(&current, b);
            return walk;
        }
    }
}

/// Applies the transposition τ_{uv} after the enumeration: each occurrence of
/// `u` becomes `v` and conversely. A self-inverse automorphism of the
/// permutohedral graph that exchanges the coatoms S_{u≺v} and S_{v≺u}.
pub fn transposition_automorphism(label: EdgeLabel, e: &Enumeration) -> Enumeration {
    let (lo, hi) = label.indices();
    let order = e
        .order
        .iter()
        .map(|&w| {
            if w == lo {
                hi
            } else if w == hi {
                lo
            } else {
                w
            }
        })
        .collect();
    Enumeration::from_order(e.base.clone(), order)
}

/// Splits all enumerations by which endpoint of an edge they are closer to.
///
/// For an edge labeled `{u,v}` with `u` before `v` in `a`, the parts are
/// exactly the coatoms S_{u≺v} and S_{v≺u}; they partition the node set, so
/// two edges share a label exactly when they induce the same bipartition.
pub fn edge_bipartition(a: &Enumeration, b: &Enumeration) -> Result<(EnumSet, EnumSet), NotAdjacent> {
    adjacency(a, b).ok_or(NotAdjacent)?;
    let mut closer_a = EnumSet::empty(a.base().clone());
    let mut closer_b = EnumSet::empty(a.base().clone());
    for e in all_enumerations(a.base()) {
        // adjacency makes the two distances differ by exactly one
        if distance(&e, a) < distance(&e, b) {
            closer_a.insert(e);
        } else {
            closer_b.insert(e);
        }
    }
    Ok((closer_a, closer_b))
}
