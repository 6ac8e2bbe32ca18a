//! Down-set families as finite topologies.
//!
//! The down sets of a preposet form a family containing ∅ and N that is
//! closed under intersection and union — a finite topology — and the
//! assignment is an anti-isomorphism onto such families, with preposets
//! recovered by specialization. Posets correspond to the topologies that
//! distinguish points. The family of a poset also drives the dynamic program
//! that counts linear extensions without listing them: extensions are the
//! saturated chains from ∅ to N in the down-set lattice.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num::BigUint;
use thiserror::Error;

use crate::enumerations::Enumeration;
use crate::extensions::EnumSet;
use crate::relations::{bits, ElementSet, Poset, Preposet, Relation};

/// Cap on how many down sets [`down_sets`] will materialize.
pub const DEFAULT_FAMILY_CAP: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("the down-set family exceeds {0} members")]
    FamilyCapExceeded(usize),
    #[error("the family is not a topology on its base")]
    NotATopology,
}

/// A family of subsets of the base, each held as a bitmask.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    base: ElementSet,
    sets: BTreeSet<u64>,
}

impl SetFamily {
    /// Collects a family from subsets given as identifier lists.
    pub fn new<I, B, S>(base: ElementSet, sets: I) -> Result<Self, crate::relations::RelationError>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut masks = BTreeSet::new();
        for set in sets {
            let mut mask = 0u64;
            for name in set {
                mask |= 1 << base.require(name.as_ref())?;
            }
            masks.insert(mask);
        }
        Ok(SetFamily { base, sets: masks })
    }

    pub(crate) fn from_masks(base: ElementSet, sets: BTreeSet<u64>) -> Self {
        SetFamily { base, sets }
    }

    pub fn base(&self) -> &ElementSet {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.sets.contains(&mask)
    }

    /// Whether the family contains the given subset.
    pub fn contains<S: AsRef<str>>(&self, set: &[S]) -> bool {
        let mut mask = 0u64;
        for name in set {
            match self.base.index_of(name.as_ref()) {
                Some(ix) => mask |= 1 << ix,
                None => return false,
            }
        }
        self.sets.contains(&mask)
    }

    pub(crate) fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.sets.iter().copied()
    }

    /// Members in canonical order: by size, then lexicographically.
    pub fn members(&self) -> Vec<Vec<&str>> {
        let mut out: Vec<Vec<&str>> = self
            .sets
            .iter()
            .map(|&mask| bits(mask).map(|u| self.base.name(u)).collect())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn is_subset_of(&self, other: &SetFamily) -> bool {
        self.base == other.base && self.sets.is_subset(&other.sets)
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.members().iter().map(|s| format!("{{{}}}", s.join(","))))
            .finish()
    }
}

/// The down sets of a relation: subsets containing, with each member, every
/// element related into it.
///
/// A down set of `T` is a down set of the reflexive-transitive closure of
/// `T`, so the family is enumerated by walking the ideal lattice of the
/// closure's quotient — equivalence classes enter a down set all at once.
/// Uses [`DEFAULT_FAMILY_CAP`]; see [`down_sets_capped`].
pub fn down_sets(t: &Relation) -> Result<SetFamily, TopologyError> {
    down_sets_capped(t, DEFAULT_FAMILY_CAP)
}

/// [`down_sets`] with an explicit cap on the family size; the family can be
/// exponential in n.
pub fn down_sets_capped(t: &Relation, cap: usize) -> Result<SetFamily, TopologyError> {
    let pre = Preposet::closure_of(t);
    let quotient = pre.quotient();
    let base = t.base();
    let class_masks: Vec<u64> = quotient
        .classes()
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|name| 1u64 << base.index_of(name).expect("class member in base"))
                .sum()
        })
        .collect();
    let class_poset = quotient.class_poset();
    // strict predecessor classes of each class, as element masks
    let pred_masks: Vec<u64> = (0..class_masks.len())
        .map(|b| {
            let mut mask = 0u64;
            for (a, &amask) in class_masks.iter().enumerate() {
                if a != b && class_poset.lt_ix(a, b) {
                    mask |= amask;
                }
            }
            mask
        })
        .collect();
    let mut seen = BTreeSet::new();
    seen.insert(0u64);
    let mut queue = VecDeque::from([0u64]);
    while let Some(current) = queue.pop_front() {
        for (c, &cmask) in class_masks.iter().enumerate() {
            if current & cmask == 0 && pred_masks[c] & !current == 0 {
                let next = current | cmask;
                if seen.insert(next) {
                    if seen.len() > cap {
                        return Err(TopologyError::FamilyCapExceeded(cap));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(SetFamily::from_masks(t.base().clone(), seen))
}

/// Whether a family is a topology: ∅ and N present, closed under pairwise
/// intersection and union.
pub fn is_topology(d: &SetFamily) -> bool {
    if !d.contains_mask(0) || !d.contains_mask(d.base.full_mask()) {
        return false;
    }
    let masks: Vec<u64> = d.masks().collect();
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            if !d.contains_mask(a & b) || !d.contains_mask(a | b) {
                return false;
            }
        }
    }
    true
}

/// The specialization preposet of a topology: `(u, v)` related when every
/// member containing `v` contains `u`.
///
/// Inverse to [`down_sets`] on both sides.
pub fn specialization_preposet(d: &SetFamily) -> Result<Preposet, TopologyError> {
    if !is_topology(d) {
        return Err(TopologyError::NotATopology);
    }
    let n = d.base.n();
    let mut rows = vec![0u64; n];
    for v in 0..n {
        let mut meet = d.base.full_mask();
        for mask in d.masks() {
            if mask & (1 << v) != 0 {
                meet &= mask;
            }
        }
        for u in bits(meet) {
            rows[u] |= 1 << v;
        }
    }
    Ok(Relation::from_rows(d.base.clone(), rows)
        .validate_preposet()
        .expect("specialization of a topology is reflexive and transitive"))
}

/// Whether every pair of distinct elements is separated by some member.
///
/// For the down-set family of a preposet this holds exactly when the preposet
/// is a poset, and exactly when the family contains a maximal chain.
pub fn distinguishes_points(d: &SetFamily) -> bool {
    let n = d.base.n();
    for u in 0..n {
        for v in (u + 1)..n {
            let separated = d
                .masks()
                .any(|mask| (mask >> u) & 1 != (mask >> v) & 1);
            if !separated {
                return false;
            }
        }
    }
    true
}

/// The maximal chain of prefixes of an enumeration:
/// ∅ ⊂ {π(1)} ⊂ {π(1),π(2)} ⊂ … ⊂ N.
pub fn chain_of(e: &Enumeration) -> SetFamily {
    let mut sets = BTreeSet::new();
    let mut mask = 0u64;
    sets.insert(mask);
    for i in 0..e.n() {
        mask |= 1 << e.index_at(i);
        sets.insert(mask);
    }
    SetFamily::from_masks(e.base().clone(), sets)
}

/// The linear extensions of a poset recovered from its topology: the
/// enumerations whose prefix chain stays inside the down-set family.
pub fn extensions_via_chains(p: &Poset) -> Result<EnumSet, TopologyError> {
    let family = down_sets(&p.full_relation())?;
    let base = p.base().clone();
    let mut out = EnumSet::empty(base.clone());
    let mut prefix = Vec::with_capacity(base.n());
    extend_prefix(&family, &base, 0u64, &mut prefix, &mut out);
    Ok(out)
}

fn extend_prefix(
    family: &SetFamily,
    base: &ElementSet,
    mask: u64,
    prefix: &mut Vec<usize>,
    out: &mut EnumSet,
) {
    if prefix.len() == base.n() {
        out.insert(Enumeration::from_order(base.clone(), prefix.clone()));
        return;
    }
    for u in 0..base.n() {
        if mask & (1 << u) == 0 && family.contains_mask(mask | (1 << u)) {
            prefix.push(u);
            extend_prefix(family, base, mask | (1 << u), prefix, out);
            prefix.pop();
        }
    }
}

/// Counts linear extensions without enumerating them.
///
/// Counts the saturated chains from ∅ to N in the down-set lattice by
/// memoized recursion: a down set is left by removing one of its maximal
/// elements. States are down-set bitmasks, reached lazily, so the memo holds
/// exactly the down sets that exist.
pub fn count_extensions(p: &Poset) -> BigUint {
    let n = p.base().n();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, BigUint> = HashMap::new();
    chains_to(full, p, &mut memo)
}

fn chains_to(mask: u64, p: &Poset, memo: &mut HashMap<u64, BigUint>) -> BigUint {
    if mask == 0 {
        return BigUint::from(1u32);
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let mut total = BigUint::ZERO;
    for u in bits(mask) {
        // u is maximal in the down set when nothing above it remains
        if p.strict_row(u) & mask == 0 {
            total += chains_to(mask & !(1 << u), p, memo);
        }
    }
    memo.insert(mask, total.clone());
    total
}

/// The join-irreducible members of the down-set lattice, one per element:
/// each element's principal ideal `I(v) = {w : w ⪯ v}`.
///
/// Inclusion between the ideals mirrors comparability in the poset.
pub fn join_irreducibles(p: &Poset) -> Vec<(String, Vec<String>)> {
    let n = p.base().n();
    let mut cols = vec![0u64; n];
    for u in 0..n {
        for v in bits(p.strict_row(u)) {
            cols[v] |= 1 << u;
        }
    }
    (0..n)
        .map(|v| {
            let ideal = cols[v] | (1 << v);
            (
                p.base().name(v).to_string(),
                bits(ideal).map(|w| p.base().name(w).to_string()).collect(),
            )
        })
        .collect()
}

/// The width of a poset: the largest antichain, found by branch-and-bound
/// over incomparable extensions.
pub fn width(p: &Poset) -> usize {
    let n = p.base().n();
    let mut incomparable = vec![0u64; n];
    for (u, mask) in incomparable.iter_mut().enumerate() {
        for v in 0..n {
            if u != v && !p.lt_ix(u, v) && !p.lt_ix(v, u) {
                *mask |= 1 << v;
            }
        }
    }
    let mut best = 0;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    grow_antichain(0, full, &incomparable, &mut best);
    best
}

fn grow_antichain(size: usize, candidates: u64, incomparable: &[u64], best: &mut usize) {
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    if size > *best {
        *best = size;
    }
    let mut rest = candidates;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // keep candidates above u only, so each antichain is built once
        grow_antichain(size + 1, rest & incomparable[u], incomparable, best);
    }
}
