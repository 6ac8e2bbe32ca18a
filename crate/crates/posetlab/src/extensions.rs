//! The precedence Galois connection between enumeration sets and relations.
//!
//! An enumeration set is sent to the intersection of its members' tosets; a
//! relation is sent to its set of linear extensions. The two maps are
//! antitone, their composites are closure operations, and the non-empty
//! closed enumeration sets are exactly the sets `L(P)` for posets `P`.
//! Ordered partitions of the base describe permutohedron faces and sit inside
//! the same picture: each face's vertex set is a closed enumeration set.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::enumerations::{all_enumerations, Enumeration};
use crate::relations::{bits, ElementSet, Poset, Relation, RelationError};

/// A finite set of enumerations over a shared base.
///
/// Members are kept sorted lexicographically, so iteration order and
/// serialization are stable.
#[derive(Clone, PartialEq, Eq)]
pub struct EnumSet {
    base: ElementSet,
    members: BTreeSet<Enumeration>,
}

impl EnumSet {
    pub fn empty(base: ElementSet) -> Self {
        EnumSet {
            base,
            members: BTreeSet::new(),
        }
    }

    /// Collects members, checking they live over the given base.
    pub fn new<I>(base: ElementSet, members: I) -> Result<Self, RelationError>
    where
        I: IntoIterator<Item = Enumeration>,
    {
        let mut set = EnumSet::empty(base);
        for e in members {
            if e.base() != &set.base {
                return Err(RelationError::BaseMismatch);
            }
            set.members.insert(e);
        }
        Ok(set)
    }

    /// Every enumeration of the base: the full node set of the permutohedral
    /// graph. Materializes n! members.
    pub fn all(base: &ElementSet) -> Self {
        EnumSet {
            base: base.clone(),
            members: all_enumerations(base).collect(),
        }
    }

    pub fn base(&self) -> &ElementSet {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &Enumeration) -> bool {
        self.members.contains(e)
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Enumeration> {
        self.members.iter()
    }

    pub(crate) fn insert(&mut self, e: Enumeration) -> bool {
        debug_assert!(e.base() == &self.base);
        self.members.insert(e)
    }

    pub fn is_subset_of(&self, other: &EnumSet) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl fmt::Debug for EnumSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a EnumSet {
    type Item = &'a Enumeration;
    type IntoIter = std::collections::btree_set::Iter<'a, Enumeration>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Whether an enumeration satisfies every pair of a relation as a non-strict
/// precedence constraint.
fn consonant(e: &Enumeration, t: &Relation) -> bool {
    let n = t.base().n();
    for u in 0..n {
        for v in bits(t.row(u)) {
            if e.position0(u) > e.position0(v) {
                return false;
            }
        }
    }
    true
}

/// The set of linear extensions of an arbitrary relation.
///
/// When the relation is a valid poset the set is generated directly by
/// recursive choice of minimal elements in lexicographic identifier order;
/// otherwise every enumeration is filtered against the constraints. The
/// result is empty exactly when the off-diagonal part has a cycle.
pub fn linear_extensions(t: &Relation) -> EnumSet {
    match t.validate_poset() {
        Ok(poset) => linear_extensions_of_poset(&poset),
        Err(_) => {
            let mut out = EnumSet::empty(t.base().clone());
            for e in all_enumerations(t.base()) {
                if consonant(&e, t) {
                    out.insert(e);
                }
            }
            out
        }
    }
}

fn linear_extensions_of_poset(p: &Poset) -> EnumSet {
    let base = p.base().clone();
    let n = base.n();
    // strict predecessors of each element, as a mask
    let mut preds = vec![0u64; n];
    for u in 0..n {
        for v in bits(p.strict_row(u)) {
            preds[v] |= 1 << u;
        }
    }
    let mut out = EnumSet::empty(base.clone());
    let mut prefix = Vec::with_capacity(n);
    place_minimal(&base, &preds, 0u64, &mut prefix, &mut out);
    out
}

fn place_minimal(
    base: &ElementSet,
    preds: &[u64],
    placed: u64,
    prefix: &mut Vec<usize>,
    out: &mut EnumSet,
) {
    if prefix.len() == preds.len() {
        out.insert(Enumeration::from_order(base.clone(), prefix.clone()));
        return;
    }
    for u in 0..preds.len() {
        if placed & (1 << u) == 0 && preds[u] & !placed == 0 {
            prefix.push(u);
            place_minimal(base, preds, placed | (1 << u), prefix, out);
            prefix.pop();
        }
    }
}

/// The forward Galois map: the intersection of the members' tosets, or the
/// full relation for the empty set.
///
/// The result is always a member of the relation-side lattice — a poset when
/// the set is non-empty, the full relation otherwise.
pub fn upper_galois(s: &EnumSet) -> Relation {
    let mut acc = Relation::full(s.base().clone());
    for e in s.iter() {
        acc = acc
            .intersection(e.toset().as_relation())
            .expect("members share the set's base");
    }
    acc
}

/// The closure on the relation side: `tr(T ∪ Δ)` when the off-diagonal part
/// is acyclic, the full relation otherwise.
///
/// Coincides with `upper_galois(linear_extensions(T))` and is idempotent.
pub fn relation_closure(t: &Relation) -> Relation {
    if t.strict_part().is_acyclic() {
        t.with_diagonal().transitive_closure()
    } else {
        Relation::full(t.base().clone())
    }
}

/// The closure on the enumeration side: `linear_extensions(upper_galois(S))`.
///
/// Extensive, isotone, and idempotent; its fixpoints are the
/// poset-interpretable sets together with the empty set (for n ≥ 2).
pub fn enumset_closure(s: &EnumSet) -> EnumSet {
    linear_extensions(&upper_galois(s))
}

/// The coatom S_{u≺v}: all enumerations placing `u` strictly before `v`.
pub fn coatom(base: &ElementSet, u: &str, v: &str) -> Result<EnumSet, RelationError> {
    let u = base.require(u)?;
    let v = base.require(v)?;
    if u == v {
        return Err(RelationError::DuplicateElement(base.name(u).to_string()));
    }
    let mut out = EnumSet::empty(base.clone());
    for e in all_enumerations(base) {
        if e.position0(u) < e.position0(v) {
            out.insert(e);
        }
    }
    Ok(out)
}

/// Raised when an ordered partition's blocks do not partition the base.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error(transparent)]
    Base(#[from] RelationError),
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("element `{0}` appears in more than one block")]
    Overlap(String),
    #[error("blocks do not cover the element set")]
    Incomplete,
}

/// An ordered partition `|A₁|…|A_m|` of the base into non-empty blocks.
///
/// Describes a non-empty face of the permutohedron; singleton blocks describe
/// a vertex, a single block the whole polytope.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedPartition {
    base: ElementSet,
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new<I, B, S>(base: ElementSet, blocks: I) -> Result<Self, PartitionError>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for (i, block) in blocks.into_iter().enumerate() {
            let mut ixs = Vec::new();
            for name in block {
                let ix = base.require(name.as_ref())?;
                if seen & (1 << ix) != 0 {
                    return Err(PartitionError::Overlap(base.name(ix).to_string()));
                }
                seen |= 1 << ix;
                ixs.push(ix);
            }
            if ixs.is_empty() {
                return Err(PartitionError::EmptyBlock(i + 1));
            }
            ixs.sort_unstable();
            out.push(ixs);
        }
        if seen != base.full_mask() {
            return Err(PartitionError::Incomplete);
        }
        Ok(OrderedPartition { base, blocks: out })
    }

    /// Builds the partition putting every element in its own block, ordered as
    /// in the enumeration.
    pub fn vertex(e: &Enumeration) -> Self {
        OrderedPartition {
            base: e.base().clone(),
            blocks: (0..e.n()).map(|i| vec![e.index_at(i)]).collect(),
        }
    }

    pub fn base(&self) -> &ElementSet {
        &self.base
    }

    /// Number of blocks m.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks as identifier lists, each sorted.
    pub fn blocks(&self) -> Vec<Vec<&str>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&u| self.base.name(u)).collect())
            .collect()
    }
}

/// The enumerations consistent with an ordered partition: all of A₁ first,
/// then A₂, and so on. Cardinality ∏ |Aᵢ|!.
pub fn face_enum_set(p: &OrderedPartition) -> EnumSet {
    let mut out = EnumSet::empty(p.base.clone());
    let mut prefix: Vec<usize> = Vec::with_capacity(p.base.n());
    fill_blocks(p, 0, &mut prefix, &mut out);
    out
}

fn fill_blocks(p: &OrderedPartition, depth: usize, prefix: &mut Vec<usize>, out: &mut EnumSet) {
    if depth == p.blocks.len() {
        out.insert(Enumeration::from_order(p.base.clone(), prefix.clone()));
        return;
    }
    let block = &p.blocks[depth];
    permute_block(block, 0u64, p, depth, prefix, out);
}

fn permute_block(
    block: &[usize],
    used: u64,
    p: &OrderedPartition,
    depth: usize,
    prefix: &mut Vec<usize>,
    out: &mut EnumSet,
) {
    if used.count_ones() as usize == block.len() {
        fill_blocks(p, depth + 1, prefix, out);
        return;
    }
    for (i, &u) in block.iter().enumerate() {
        if used & (1 << i) == 0 {
            prefix.push(u);
            permute_block(block, used | (1 << i), p, depth, prefix, out);
            prefix.pop();
        }
    }
}

/// The partial order a face carries: `u ≺ v` whenever `u`'s block comes
/// before `v`'s. Its linear extensions are exactly the face's enumerations.
pub fn face_poset(p: &OrderedPartition) -> Poset {
    let mut strict = Relation::empty(p.base.clone());
    for i in 0..p.blocks.len() {
        for j in (i + 1)..p.blocks.len() {
            for &u in &p.blocks[i] {
                for &v in &p.blocks[j] {
                    strict.set(u, v);
                }
            }
        }
    }
    strict
        .with_diagonal()
        .validate_poset()
        .expect("block order is transitive and acyclic")
}

/// Euclidean dimension of the face: n − m.
pub fn face_dimension(p: &OrderedPartition) -> usize {
    p.base.n() - p.block_count()
}

/// Raised when [`sandwich_step`] is called on posets that are not strictly
/// nested.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SandwichError {
    #[error("posets are over different element sets")]
    BaseMismatch,
    #[error("inner poset is not strictly contained in the outer one")]
    NotNested,
}

/// One step of the sandwich principle: given posets P' ⊂ P, returns a poset
/// P'' with P' ⊆ P'' ⊂ P and exactly one pair of P removed.
///
/// The removed pair is a covering pair of the outer poset absent from the
/// inner one; the lexicographically least eligible pair is chosen so the
/// descent is deterministic. Iterating until the inner poset is reached walks
/// a maximal chain of the poset lattice.
pub fn sandwich_step(sub: &Poset, sup: &Poset) -> Result<Poset, SandwichError> {
    if sub.base() != sup.base() {
        return Err(SandwichError::BaseMismatch);
    }
    let sub_full = sub.full_relation();
    let sup_full = sup.full_relation();
    if !sub_full.is_subset_of(&sup_full) || sub_full == sup_full {
        return Err(SandwichError::NotNested);
    }
    let covers = sup.cover_relation();
    let n = sup.base().n();
    let mut choice = None;
    'outer: for u in 0..n {
        for v in bits(covers.row(u)) {
            if !sub_full.contains_ix(u, v) {
                choice = Some((u, v));
                break 'outer;
            }
        }
    }
    let (u, v) = choice.expect("a covering pair of the outer poset lies outside the inner one");
    let mut trimmed = sup_full;
    trimmed.clear(u, v);
    Ok(trimmed
        .validate_poset()
        .expect("removing a covering pair preserves the poset axioms"))
}
