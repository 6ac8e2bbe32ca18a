//! Braid cones and Weyl chambers with exact rational arithmetic.
//!
//! A relation `T` carries the polyhedral cone of vectors satisfying
//! `x_u ≤ x_v` for every related pair; the cones of tosets are the Weyl
//! chambers, and a poset's cone is the union of its extensions' chambers.
//! Every coordinate in this module is an exact rational — membership is a
//! strict inequality system and any tolerance would corrupt it. Cones are
//! kept in half-space (preposet) form; a V-side description appears only
//! through the constructive conic decomposition.

use num::{BigInt, BigRational, BigUint, One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::enumerations::Enumeration;
use crate::extensions::{linear_extensions, EnumSet};
use crate::relations::{bits, ElementSet, Poset, Preposet, Relation, RelationError};
use crate::topology::{down_sets, SetFamily, TopologyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Base(#[from] RelationError),
    #[error("vector lies outside the cone")]
    OutsideCone,
    #[error(transparent)]
    Family(#[from] TopologyError),
}

/// A point of the ambient space, with one exact rational coordinate per
/// element of the base.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalVector {
    base: ElementSet,
    coords: Vec<BigRational>,
}

impl RationalVector {
    pub fn new(base: ElementSet, coords: Vec<BigRational>) -> Result<Self, RelationError> {
        if coords.len() != base.n() {
            return Err(RelationError::BaseMismatch);
        }
        Ok(RationalVector { base, coords })
    }

    /// The origin.
    pub fn zero(base: ElementSet) -> Self {
        let coords = vec![BigRational::zero(); base.n()];
        RationalVector { base, coords }
    }

    /// The incidence vector χ_A of a subset given as a bitmask.
    pub fn incidence(base: ElementSet, mask: u64) -> Self {
        let coords = (0..base.n())
            .map(|u| {
                if mask & (1 << u) != 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        RationalVector { base, coords }
    }

    /// The rank vector of an enumeration: the element at position i gets
    /// coordinate i.
    pub fn rank_vector(e: &Enumeration) -> Self {
        let coords = (0..e.n())
            .map(|u| BigRational::from_integer(BigInt::from(e.position0(u) as i64 + 1)))
            .collect();
        RationalVector {
            base: e.base().clone(),
            coords,
        }
    }

    pub fn base(&self) -> &ElementSet {
        &self.base
    }

    pub fn coord_ix(&self, u: usize) -> &BigRational {
        &self.coords[u]
    }

    pub fn coord(&self, name: &str) -> Result<&BigRational, RelationError> {
        Ok(&self.coords[self.base.require(name)?])
    }

    /// Coordinates in canonical element order.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn add(&self, other: &RationalVector) -> Result<RationalVector, RelationError> {
        if self.base != other.base {
            return Err(RelationError::BaseMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RationalVector {
            base: self.base.clone(),
            coords,
        })
    }

    pub fn scale(&self, c: &BigRational) -> RationalVector {
        RationalVector {
            base: self.base.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn has_distinct_coords(&self) -> bool {
        let mut sorted = self.coords.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// A braid cone in half-space form: the vectors satisfying `x_u ≤ x_v` for
/// every pair of the generator preposet.
///
/// Built from an arbitrary relation by closing it reflexively and
/// transitively, which leaves membership unchanged.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidCone {
    generator: Preposet,
}

/// The braid cone of a relation. The cone of a toset is a Weyl chamber; the
/// cone of the empty relation is the whole space.
pub fn cone_of(t: &Relation) -> BraidCone {
    BraidCone {
        generator: Preposet::closure_of(t),
    }
}

impl BraidCone {
    pub fn base(&self) -> &ElementSet {
        self.generator.base()
    }

    /// The preposet describing the cone's inequalities.
    pub fn generator(&self) -> &Preposet {
        &self.generator
    }
}

/// Exact membership: every inequality of the cone holds.
pub fn membership(cone: &BraidCone, x: &RationalVector) -> bool {
    assert!(cone.base() == x.base(), "vector over a different element set");
    let n = cone.base().n();
    for u in 0..n {
        for v in bits(cone.generator.row(u)) {
            if x.coord_ix(u) > x.coord_ix(v) {
                return false;
            }
        }
    }
    true
}

/// The chambers covering a poset's cone: the enumerations whose chamber is
/// contained in it, which are exactly the linear extensions.
pub fn chamber_cover(p: &Poset) -> EnumSet {
    // ν^π ⊆ ν_P reduces to the constraint implication P ⊆ T_π
    linear_extensions(&p.full_relation())
}

/// The unique chamber containing a vector with pairwise distinct coordinates;
/// `None` when coordinates tie.
pub fn chamber_of(x: &RationalVector) -> Option<Enumeration> {
    if !x.has_distinct_coords() {
        return None;
    }
    let mut order: Vec<usize> = (0..x.base().n()).collect();
    order.sort_by(|&a, &b| x.coord_ix(a).cmp(x.coord_ix(b)));
    Some(Enumeration::from_order(x.base().clone(), order))
}

/// Whether the cone of a preposet has full dimension n, which happens exactly
/// when the preposet is a poset.
///
/// Decided constructively: an anti-symmetric preposet yields a linear
/// extension whose rank vector is an all-distinct member; otherwise a
/// two-way-related pair forces equal coordinates everywhere in the cone.
pub fn is_full_dimensional(t: &Preposet) -> bool {
    let relation = t.as_relation();
    match relation.validate_poset() {
        Ok(poset) => {
            let witness = topological_enumeration(&poset);
            let rank = RationalVector::rank_vector(&witness);
            debug_assert!(membership(&cone_of(&relation), &rank));
            debug_assert!(rank.has_distinct_coords());
            true
        }
        Err(_) => false,
    }
}

/// One linear extension, built by repeatedly taking the least minimal element.
fn topological_enumeration(p: &Poset) -> Enumeration {
    let n = p.base().n();
    let mut preds = vec![0u64; n];
    for u in 0..n {
        for v in bits(p.strict_row(u)) {
            preds[v] |= 1 << u;
        }
    }
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let u = (0..n)
            .find(|&u| placed & (1 << u) == 0 && preds[u] & !placed == 0)
            .expect("a poset always has a minimal element");
        placed |= 1 << u;
        order.push(u);
    }
    Enumeration::from_order(p.base().clone(), order)
}

/// The topology a cone carries: the subsets whose negated incidence vector
/// lies in the cone. Equals the down-set family of the generator preposet.
pub fn cone_to_topology(cone: &BraidCone) -> SetFamily {
    let base = cone.base().clone();
    let n = base.n();
    let mut masks = std::collections::BTreeSet::new();
    for mask in 0..(1u64 << n) {
        let neg = RationalVector::incidence(base.clone(), mask).scale(&-BigRational::one());
        if membership(cone, &neg) {
            masks.insert(mask);
        }
    }
    SetFamily::from_masks(base, masks)
}

/// One term of a conic decomposition: the ambient generator χ_N, or a down
/// set contributing its negated incidence vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicGenerator {
    /// χ_N, whose coefficient may take any sign.
    Ambient,
    /// −χ_D for a down set D of the preposet, with a non-negative coefficient.
    DownSet(Vec<String>),
}

/// Writes a cone member as `c₀·χ_N + Σ cᵢ·(−χ_{Dᵢ})` with each `Dᵢ` a down
/// set of the preposet and each `cᵢ ≥ 0`.
///
/// The generators are nested prefix unions of the preposet's equivalence
/// classes, ordered consonantly with the quotient and by coordinate value;
/// evaluating the returned combination reproduces the vector exactly.
pub fn conic_decomposition(
    x: &RationalVector,
    t: &Preposet,
) -> Result<Vec<(ConicGenerator, BigRational)>, GeometryError> {
    let relation = t.as_relation();
    let cone = cone_of(&relation);
    if !membership(&cone, x) {
        return Err(GeometryError::OutsideCone);
    }
    let base = t.base();
    let quotient = t.quotient();
    let classes = quotient.classes();
    let class_poset = quotient.class_poset();
    let m = classes.len();
    // membership makes x constant on classes; read each class's shared value
    let value_of = |c: usize| -> &BigRational {
        let member = base
            .index_of(&classes[c][0])
            .expect("class member in base");
        x.coord_ix(member)
    };
    // a topological total order on classes breaks coordinate ties consonantly
    let mut topo_rank = vec![0usize; m];
    {
        let mut placed = vec![false; m];
        for rank in 0..m {
            let next = (0..m)
                .find(|&c| {
                    !placed[c]
                        && (0..m).all(|a| a == c || placed[a] || !class_poset.lt_ix(a, c))
                })
                .expect("quotient poset always has a minimal class");
            placed[next] = true;
            topo_rank[next] = rank;
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| value_of(a).cmp(value_of(b)).then(topo_rank[a].cmp(&topo_rank[b])));

    let mut terms = Vec::new();
    let top_value = value_of(order[m - 1]).clone();
    if !top_value.is_zero() {
        terms.push((ConicGenerator::Ambient, top_value));
    }
    let mut prefix: Vec<String> = Vec::new();
    for i in 0..m - 1 {
        prefix.extend(classes[order[i]].iter().cloned());
        let step = value_of(order[i + 1]) - value_of(order[i]);
        debug_assert!(!step.is_negative(), "class values ascend along the order");
        if !step.is_zero() {
            let mut names = prefix.clone();
            names.sort();
            terms.push((ConicGenerator::DownSet(names), step));
        }
    }
    Ok(terms)
}

/// Evaluates a combination produced by [`conic_decomposition`].
pub fn evaluate_decomposition(
    base: &ElementSet,
    terms: &[(ConicGenerator, BigRational)],
) -> Result<RationalVector, RelationError> {
    let mut acc = RationalVector::zero(base.clone());
    for (generator, coefficient) in terms {
        let direction = match generator {
            ConicGenerator::Ambient => RationalVector::incidence(base.clone(), base.full_mask()),
            ConicGenerator::DownSet(names) => {
                let mut mask = 0u64;
                for name in names {
                    mask |= 1 << base.require(name)?;
                }
                RationalVector::incidence(base.clone(), mask).scale(&-BigRational::one())
            }
        };
        acc = acc.add(&direction.scale(coefficient))?;
    }
    Ok(acc)
}

/// Draws members of a cone as random non-negative combinations of its
/// constructive generators plus a signed multiple of χ_N.
///
/// Membership holds by construction. The generator family is materialized
/// once; identical seeds give identical samples.
pub struct ConeSampler {
    base: ElementSet,
    family: Vec<u64>,
}

impl ConeSampler {
    pub fn new(cone: &BraidCone) -> Result<Self, TopologyError> {
        let family: Vec<u64> = down_sets(&cone.generator().as_relation())?
            .masks()
            .collect();
        Ok(ConeSampler {
            base: cone.base().clone(),
            family,
        })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> RationalVector {
        let mut acc = RationalVector::incidence(self.base.clone(), self.base.full_mask())
            .scale(&small_rational(rng, true));
        let picks = rng.gen_range(1..=self.base.n() + 2);
        for _ in 0..picks {
            let mask = self.family[rng.gen_range(0..self.family.len())];
            let coefficient = small_rational(rng, false);
            let term = RationalVector::incidence(self.base.clone(), mask)
                .scale(&-coefficient);
            acc = acc.add(&term).expect("sampler vectors share the base");
        }
        acc
    }
}

fn small_rational<R: Rng>(rng: &mut R, signed: bool) -> BigRational {
    let numer = if signed {
        rng.gen_range(-9i64..=9)
    } else {
        rng.gen_range(0i64..=9)
    };
    let denom = rng.gen_range(1i64..=4);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// |L(P)| / n! as an exact rational, counted through the down-set dynamic
/// program.
pub fn extension_fraction(p: &Poset) -> BigRational {
    let count = crate::topology::count_extensions(p);
    let mut factorial = BigUint::from(1u32);
    for k in 2..=p.base().n() {
        factorial *= BigUint::from(k);
    }
    BigRational::new(BigInt::from(count), BigInt::from(factorial))
}
