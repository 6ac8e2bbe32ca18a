//! Binary relations on a finite unordered element set.
//!
//! The basic set `N` is a collection of distinct string identifiers with no
//! intrinsic order; a lexicographic order on the identifiers is used only to
//! canonicalize output and break ties, never to change results. Relations are
//! stored as bitsets over the canonical index assignment, which keeps every
//! operation here exact and cheap for the small `n` this library targets.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Errors raised when constructing element sets and relations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("element set is empty")]
    EmptyBase,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("element sets of more than 64 identifiers are not supported")]
    TooManyElements,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("operands are defined over different element sets")]
    BaseMismatch,
}

/// Failure to assemble a poset from pairs: either a bad identifier or a
/// broken order axiom.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetBuildError {
    #[error(transparent)]
    Base(#[from] RelationError),
    #[error("not a poset: {0}")]
    Defect(#[from] PosetDefect),
}

/// The axiom that failed while validating a poset or preposet.
///
/// Validation reports the first broken axiom in the fixed order
/// missing-diagonal, not-transitive, cyclic.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PosetDefect {
    #[error("missing-diagonal")]
    MissingDiagonal,
    #[error("not-transitive")]
    NotTransitive,
    #[error("cyclic")]
    Cyclic,
}

/// A finite set of distinct, opaque element identifiers.
///
/// Identifiers are held in lexicographic order; the position of an identifier
/// in that order is its canonical index, used by every bitset in the crate.
/// Cloning is cheap (the name table is shared).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ElementSet {
    names: Arc<[String]>,
}

impl ElementSet {
    /// Builds an element set from identifiers, sorting them lexicographically.
    pub fn new<I, S>(names: I) -> Result<Self, RelationError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        names.sort();
        if names.is_empty() {
            return Err(RelationError::EmptyBase);
        }
        if names.len() > 64 {
            return Err(RelationError::TooManyElements);
        }
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(RelationError::DuplicateElement(pair[0].clone()));
            }
        }
        Ok(ElementSet { names: names.into() })
    }

    /// Number of elements `n`.
    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Identifier at canonical index `ix`.
    pub fn name(&self, ix: usize) -> &str {
        &self.names[ix]
    }

    /// Canonical index of an identifier, if present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|probe| probe.as_str().cmp(name)).ok()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize, RelationError> {
        self.index_of(name)
            .ok_or_else(|| RelationError::UnknownElement(name.to_string()))
    }

    /// Identifiers in canonical (lexicographic) order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// Bitmask with one bit per element.
    pub(crate) fn full_mask(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.names.iter()).finish()
    }
}

/// Iterates the set bits of a mask as indices.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let ix = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(ix)
        }
    })
}

/// A set of ordered pairs over an element set.
///
/// `rows[u]` holds the targets of `u` as a bitmask, so bit `v` of `rows[u]`
/// means `(u, v)` is in the relation. Diagonal pairs `(u, u)` are stored like
/// any other pair; the relation is whatever set of pairs it was built from.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    base: ElementSet,
    rows: Vec<u64>,
}

impl Relation {
    /// The empty relation.
    pub fn empty(base: ElementSet) -> Self {
        let rows = vec![0; base.n()];
        Relation { base, rows }
    }

    /// The diagonal Δ = {(u, u)}.
    pub fn diagonal(base: ElementSet) -> Self {
        let rows = (0..base.n()).map(|u| 1u64 << u).collect();
        Relation { base, rows }
    }

    /// The full relation N × N.
    pub fn full(base: ElementSet) -> Self {
        let mask = base.full_mask();
        let rows = vec![mask; base.n()];
        Relation { base, rows }
    }

    /// Builds a relation from named pairs.
    pub fn from_pairs<'a, I>(base: ElementSet, pairs: I) -> Result<Self, RelationError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut rel = Relation::empty(base);
        for (u, v) in pairs {
            let u = rel.base.require(u)?;
            let v = rel.base.require(v)?;
            rel.rows[u] |= 1 << v;
        }
        Ok(rel)
    }

    pub(crate) fn from_rows(base: ElementSet, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), base.n());
        Relation { base, rows }
    }

    pub fn base(&self) -> &ElementSet {
        &self.base
    }

    pub(crate) fn row(&self, u: usize) -> u64 {
        self.rows[u]
    }

    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
    }

    pub(crate) fn clear(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
    }

    /// Whether `(u, v)` is in the relation, by canonical index.
    pub fn contains_ix(&self, u: usize, v: usize) -> bool {
        self.rows[u] & (1 << v) != 0
    }

    /// Whether `(u, v)` is in the relation, by identifier.
    pub fn contains(&self, u: &str, v: &str) -> bool {
        match (self.base.index_of(u), self.base.index_of(v)) {
            (Some(u), Some(v)) => self.contains_ix(u, v),
            _ => false,
        }
    }

    /// Number of pairs, diagonal included.
    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// All pairs as identifier tuples, in canonical index order.
    pub fn pairs(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for u in 0..self.base.n() {
            for v in bits(self.rows[u]) {
                out.push((self.base.name(u), self.base.name(v)));
            }
        }
        out
    }

    /// Pairs as index tuples.
    pub(crate) fn pair_ixs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.base.n() {
            for v in bits(self.rows[u]) {
                out.push((u, v));
            }
        }
        out
    }

    /// The relation with diagonal pairs removed.
    pub fn strict_part(&self) -> Relation {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(u, &r)| r & !(1 << u))
            .collect();
        Relation::from_rows(self.base.clone(), rows)
    }

    /// The relation with all diagonal pairs added.
    pub fn with_diagonal(&self) -> Relation {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(u, &r)| r | (1 << u))
            .collect();
        Relation::from_rows(self.base.clone(), rows)
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows.iter().enumerate().all(|(u, &r)| r & (1 << u) != 0)
    }

    pub fn is_transitive(&self) -> bool {
        for u in 0..self.base.n() {
            let mut reach = 0u64;
            for v in bits(self.rows[u]) {
                reach |= self.rows[v];
            }
            if reach & !self.rows[u] != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_antisymmetric(&self) -> bool {
        for u in 0..self.base.n() {
            for v in bits(self.rows[u]) {
                if v != u && self.contains_ix(v, u) {
                    return false;
                }
            }
        }
        true
    }

    /// Set union; the operands must share a base.
    pub fn union(&self, other: &Relation) -> Result<Relation, RelationError> {
        if self.base != other.base {
            return Err(RelationError::BaseMismatch);
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(&a, &b)| a | b)
            .collect();
        Ok(Relation::from_rows(self.base.clone(), rows))
    }

    /// Set intersection; the operands must share a base.
    pub fn intersection(&self, other: &Relation) -> Result<Relation, RelationError> {
        if self.base != other.base {
            return Err(RelationError::BaseMismatch);
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(&a, &b)| a & b)
            .collect();
        Ok(Relation::from_rows(self.base.clone(), rows))
    }

    /// Set difference; the operands must share a base.
    pub fn difference(&self, other: &Relation) -> Result<Relation, RelationError> {
        if self.base != other.base {
            return Err(RelationError::BaseMismatch);
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(&a, &b)| a & !b)
            .collect();
        Ok(Relation::from_rows(self.base.clone(), rows))
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.base == other.base
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(&a, &b)| a & !b == 0)
    }

    /// Least transitive relation containing this one.
    ///
    /// Computed by iterated squaring: each round replaces `T` by `T ∪ T∘T`
    /// until nothing changes, so a pair `(u, v)` ends up included exactly when
    /// a chain `u = u₁, …, u_k = v` of original pairs exists.
    pub fn transitive_closure(&self) -> Relation {
        let mut rows = self.rows.clone();
        loop {
            let prev = rows.clone();
            let mut changed = false;
            for u in 0..self.base.n() {
                let mut acc = prev[u];
                for v in bits(prev[u]) {
                    acc |= prev[v];
                }
                if acc != rows[u] {
                    rows[u] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Relation::from_rows(self.base.clone(), rows)
    }

    /// Whether no walk returns to its starting element: Δ ∩ tr(R) = ∅.
    ///
    /// A diagonal pair counts as a cycle of length one.
    pub fn is_acyclic(&self) -> bool {
        let closure = self.transitive_closure();
        (0..self.base.n()).all(|u| !closure.contains_ix(u, u))
    }

    /// The opposite relation `{(v, u) : (u, v) ∈ R}`; an involution.
    pub fn opposite(&self) -> Relation {
        let n = self.base.n();
        let mut rows = vec![0u64; n];
        for u in 0..n {
            for v in bits(self.rows[u]) {
                rows[v] |= 1 << u;
            }
        }
        Relation::from_rows(self.base.clone(), rows)
    }

    /// Validates the poset axioms: Δ ⊆ R with R∖Δ transitive and acyclic.
    ///
    /// The first broken axiom is reported, in the fixed order missing-diagonal,
    /// not-transitive, cyclic. Transitivity is judged on the full relation so
    /// that a relation breaking only anti-symmetry (a transitive relation with
    /// a cycle through the diagonal) is reported as cyclic; for the
    /// accept/reject decision the two readings agree.
    pub fn validate_poset(&self) -> Result<Poset, PosetDefect> {
        if !self.is_reflexive() {
            return Err(PosetDefect::MissingDiagonal);
        }
        if !self.is_transitive() {
            return Err(PosetDefect::NotTransitive);
        }
        let strict = self.strict_part();
        if !strict.is_acyclic() {
            return Err(PosetDefect::Cyclic);
        }
        Ok(Poset {
            base: self.base.clone(),
            strict_rows: strict.rows,
        })
    }

    /// Validates the preposet axioms: Δ ⊆ R and R transitive.
    pub fn validate_preposet(&self) -> Result<Preposet, PosetDefect> {
        if !self.is_reflexive() {
            return Err(PosetDefect::MissingDiagonal);
        }
        if !self.is_transitive() {
            return Err(PosetDefect::NotTransitive);
        }
        Ok(Preposet {
            base: self.base.clone(),
            rows: self.rows.clone(),
        })
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.pairs().iter().map(|(u, v)| format!("({u},{v})")))
            .finish()
    }
}

/// How two elements of a poset relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparability {
    Equal,
    StrictlyBelow,
    StrictlyAbove,
    Incomparable,
}

/// A partial order, held as its strict part.
///
/// The strict part is transitive and acyclic (equivalently irreflexive,
/// equivalently asymmetric); the full relation is Δ ∪ strict.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    base: ElementSet,
    strict_rows: Vec<u64>,
}

impl Poset {
    /// The trivial poset (antichain): Δ alone.
    pub fn trivial(base: ElementSet) -> Self {
        let strict_rows = vec![0; base.n()];
        Poset { base, strict_rows }
    }

    /// Builds and validates a poset from strict (off-diagonal) pairs.
    pub fn from_strict_pairs<'a, I>(base: ElementSet, pairs: I) -> Result<Self, PosetBuildError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let strict = Relation::from_pairs(base, pairs)?;
        Ok(strict.with_diagonal().validate_poset()?)
    }

    pub fn base(&self) -> &ElementSet {
        &self.base
    }

    pub(crate) fn strict_row(&self, u: usize) -> u64 {
        self.strict_rows[u]
    }

    /// The strict part P∖Δ as a relation.
    pub fn strict(&self) -> Relation {
        Relation::from_rows(self.base.clone(), self.strict_rows.clone())
    }

    /// The full relation Δ ∪ strict.
    pub fn full_relation(&self) -> Relation {
        self.strict().with_diagonal()
    }

    /// Number of strictly compared pairs |P∖Δ|.
    pub fn strict_pair_count(&self) -> usize {
        self.strict_rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Non-strict comparison u ⪯ v.
    pub fn le_ix(&self, u: usize, v: usize) -> bool {
        u == v || self.strict_rows[u] & (1 << v) != 0
    }

    /// Strict comparison u ≺ v.
    pub fn lt_ix(&self, u: usize, v: usize) -> bool {
        self.strict_rows[u] & (1 << v) != 0
    }

    /// Exactly one of equal, strictly-below, strictly-above, incomparable.
    ///
    /// `StrictlyBelow` means u ≺ v.
    pub fn comparability(&self, u: &str, v: &str) -> Result<Comparability, RelationError> {
        let u = self.base.require(u)?;
        let v = self.base.require(v)?;
        Ok(if u == v {
            Comparability::Equal
        } else if self.lt_ix(u, v) {
            Comparability::StrictlyBelow
        } else if self.lt_ix(v, u) {
            Comparability::StrictlyAbove
        } else {
            Comparability::Incomparable
        })
    }

    /// The covering relation: pairs u ⋖ v with nothing strictly between.
    ///
    /// This is the least relation whose transitive closure is the strict part,
    /// and it is anti-transitive; its directed graph is the Hasse diagram.
    pub fn cover_relation(&self) -> Relation {
        let n = self.base.n();
        let mut rows = vec![0u64; n];
        for (u, row) in rows.iter_mut().enumerate() {
            let above = self.strict_rows[u];
            'pair: for v in bits(above) {
                for w in bits(above) {
                    if w != v && self.strict_rows[w] & (1 << v) != 0 {
                        continue 'pair;
                    }
                }
                *row |= 1 << v;
            }
        }
        Relation::from_rows(self.base.clone(), rows)
    }

    /// Whether every pair is comparable.
    pub fn is_toset(&self) -> bool {
        let n = self.base.n();
        self.strict_pair_count() == n * (n - 1) / 2
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strict = self.strict();
        write!(f, "Poset")?;
        f.debug_set()
            .entries(strict.pairs().iter().map(|(u, v)| format!("{u}<{v}")))
            .finish()
    }
}

/// A reflexive, transitive relation; anti-symmetry is not required.
#[derive(Clone, PartialEq, Eq)]
pub struct Preposet {
    base: ElementSet,
    rows: Vec<u64>,
}

impl Preposet {
    pub fn base(&self) -> &ElementSet {
        &self.base
    }

    /// The underlying full relation.
    pub fn as_relation(&self) -> Relation {
        Relation::from_rows(self.base.clone(), self.rows.clone())
    }

    pub(crate) fn row(&self, u: usize) -> u64 {
        self.rows[u]
    }

    pub fn contains_ix(&self, u: usize, v: usize) -> bool {
        self.rows[u] & (1 << v) != 0
    }

    /// Whether the preposet is in fact a poset.
    pub fn is_poset(&self) -> bool {
        self.as_relation().is_antisymmetric()
    }

    /// The reflexive-transitive closure of an arbitrary relation, tr(R ∪ Δ).
    pub fn closure_of(relation: &Relation) -> Preposet {
        let closed = relation.with_diagonal().transitive_closure();
        Preposet {
            base: closed.base.clone(),
            rows: closed.rows,
        }
    }

    /// Collapses the inner equivalence E = Q ∩ Q^op into classes and returns
    /// the induced partial order on them.
    pub fn quotient(&self) -> Quotient {
        let n = self.base.n();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for u in 0..n {
            if class_of[u] != usize::MAX {
                continue;
            }
            let ix = classes.len();
            let members: Vec<usize> = (u..n)
                .filter(|&v| self.contains_ix(u, v) && self.contains_ix(v, u))
                .collect();
            for &v in &members {
                class_of[v] = ix;
            }
            classes.push(members);
        }
        // classes are named by their least member, which is also their least
        // identifier since indices follow lexicographic order
        let reps: Vec<String> = classes
            .iter()
            .map(|c| self.base.name(c[0]).to_string())
            .collect();
        let class_base = ElementSet::new(reps.clone()).expect("class representatives are distinct");
        let mut strict = Relation::empty(class_base.clone());
        for (a, class) in classes.iter().enumerate() {
            for (b, other) in classes.iter().enumerate() {
                if a != b && self.contains_ix(class[0], other[0]) {
                    let u = class_base.index_of(&reps[a]).expect("rep in class base");
                    let v = class_base.index_of(&reps[b]).expect("rep in class base");
                    strict.set(u, v);
                }
            }
        }
        let class_poset = strict
            .with_diagonal()
            .validate_poset()
            .expect("quotient of a preposet is a poset");
        Quotient {
            base: self.base.clone(),
            classes: classes
                .iter()
                .map(|c| c.iter().map(|&u| self.base.name(u).to_string()).collect())
                .collect(),
            class_poset,
        }
    }
}

impl fmt::Debug for Preposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preposet")?;
        f.debug_set()
            .entries(
                self.as_relation()
                    .pairs()
                    .iter()
                    .map(|(u, v)| format!("({u},{v})")),
            )
            .finish()
    }
}

/// The result of collapsing a preposet: equivalence classes plus the partial
/// order they carry.
#[derive(Clone, Debug)]
pub struct Quotient {
    base: ElementSet,
    classes: Vec<Vec<String>>,
    class_poset: Poset,
}

impl Quotient {
    /// Equivalence classes of E = Q ∩ Q^op, each sorted, listed by least member.
    pub fn classes(&self) -> &[Vec<String>] {
        &self.classes
    }

    /// The partial order induced on the classes (elements named by their least
    /// class member).
    pub fn class_poset(&self) -> &Poset {
        &self.class_poset
    }

    /// Rebuilds the original preposet; `expand ∘ quotient` is the identity.
    pub fn expand(&self) -> Preposet {
        let n = self.base.n();
        let mut class_of = vec![usize::MAX; n];
        for (ix, class) in self.classes.iter().enumerate() {
            for name in class {
                let u = self.base.index_of(name).expect("class member in base");
                class_of[u] = ix;
            }
        }
        let rep_ix: Vec<usize> = self
            .classes
            .iter()
            .map(|c| {
                self.class_poset
                    .base()
                    .index_of(&c[0])
                    .expect("class representative in class base")
            })
            .collect();
        let mut rows = vec![0u64; n];
        for (u, row) in rows.iter_mut().enumerate() {
            for v in 0..n {
                if self.class_poset.le_ix(rep_ix[class_of[u]], rep_ix[class_of[v]]) {
                    *row |= 1 << v;
                }
            }
        }
        Preposet {
            base: self.base.clone(),
            rows,
        }
    }
}
