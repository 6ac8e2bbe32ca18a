//! JSON wire formats for every view.
//!
//! - relation: `{"elements": [...], "pairs": [["u","v"], ...], "reflexive": bool}`;
//!   with `"reflexive": true` the diagonal is implied and must not be listed.
//! - enumeration: an ordered array of identifiers.
//! - enumeration set: an array of enumerations.
//! - ordered partition: an array of arrays of identifiers.
//! - interval code: `{"reference": [...], "lower": [["u","v"], ...], "upper": [...]}`.
//! - set family: an array of arrays, canonically ordered by size then
//!   lexicographically.
//! - rational vector: a map from identifier to a `"p/q"` string.
//!
//! Serialization is canonical, so equal values print byte-identically.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convexity::{IntervalCode, IntervalCodeError};
use crate::enumerations::Enumeration;
use crate::extensions::{EnumSet, OrderedPartition, PartitionError};
use crate::geometry::RationalVector;
use crate::relations::{ElementSet, Relation, RelationError};
use crate::topology::SetFamily;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Base(#[from] RelationError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    IntervalCode(#[from] IntervalCodeError),
    #[error("{0}")]
    Semantic(String),
}

#[derive(Serialize, Deserialize)]
struct RelationDoc {
    elements: Vec<String>,
    pairs: Vec<(String, String)>,
    reflexive: bool,
}

pub fn relation_from_str(s: &str) -> Result<Relation, FormatError> {
    let doc: RelationDoc = serde_json::from_str(s)?;
    let base = ElementSet::new(doc.elements)?;
    let mut relation = if doc.reflexive {
        Relation::diagonal(base.clone())
    } else {
        Relation::empty(base.clone())
    };
    for (u, v) in &doc.pairs {
        if doc.reflexive && u == v {
            return Err(FormatError::Semantic(format!(
                "diagonal pair [\"{u}\",\"{u}\"] must not be listed when \"reflexive\" is true"
            )));
        }
        let u = base.require(u)?;
        let v = base.require(v)?;
        relation.set(u, v);
    }
    Ok(relation)
}

pub fn relation_to_string(r: &Relation) -> String {
    let reflexive = r.is_reflexive();
    let listed = if reflexive { r.strict_part() } else { r.clone() };
    let doc = RelationDoc {
        elements: r.base().names().map(str::to_string).collect(),
        pairs: listed
            .pairs()
            .iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect(),
        reflexive,
    };
    serde_json::to_string(&doc).expect("relation doc serializes")
}

pub fn enumeration_from_str(s: &str) -> Result<Enumeration, FormatError> {
    let names: Vec<String> = serde_json::from_str(s)?;
    let base = ElementSet::new(names.clone())?;
    Ok(Enumeration::new(base, names)?)
}

/// Reads an enumeration over an already-known base.
pub fn enumeration_from_value(base: &ElementSet, names: &[String]) -> Result<Enumeration, FormatError> {
    Ok(Enumeration::new(base.clone(), names.iter())?)
}

pub fn enumeration_to_string(e: &Enumeration) -> String {
    let names: Vec<&str> = e.iter().collect();
    serde_json::to_string(&names).expect("name list serializes")
}

/// Reads an enumeration set from an array of arrays; `None` for the empty
/// array, whose base is unknowable.
pub fn enum_set_from_str(s: &str) -> Result<Option<EnumSet>, FormatError> {
    let rows: Vec<Vec<String>> = serde_json::from_str(s)?;
    let Some(first) = rows.first() else {
        return Ok(None);
    };
    let base = ElementSet::new(first.clone())?;
    let mut set = EnumSet::empty(base.clone());
    for row in &rows {
        set.insert(Enumeration::new(base.clone(), row.iter())?);
    }
    Ok(Some(set))
}

pub fn enum_set_to_string(s: &EnumSet) -> String {
    let rows: Vec<Vec<&str>> = s.iter().map(|e| e.iter().collect()).collect();
    serde_json::to_string(&rows).expect("enumeration rows serialize")
}

pub fn partition_from_str(s: &str) -> Result<OrderedPartition, FormatError> {
    let blocks: Vec<Vec<String>> = serde_json::from_str(s)?;
    let base = ElementSet::new(blocks.iter().flatten().cloned())?;
    Ok(OrderedPartition::new(base, blocks)?)
}

pub fn partition_to_string(p: &OrderedPartition) -> String {
    serde_json::to_string(&p.blocks()).expect("blocks serialize")
}

#[derive(Serialize, Deserialize)]
struct IntervalCodeDoc {
    reference: Vec<String>,
    lower: Vec<(String, String)>,
    upper: Vec<(String, String)>,
}

pub fn interval_code_from_str(s: &str) -> Result<IntervalCode, FormatError> {
    let doc: IntervalCodeDoc = serde_json::from_str(s)?;
    let base = ElementSet::new(doc.reference.clone())?;
    let reference = Enumeration::new(base, doc.reference.iter())?;
    let lower: Vec<(&str, &str)> = doc.lower.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
    let upper: Vec<(&str, &str)> = doc.upper.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
    Ok(IntervalCode::new(reference, lower, upper)?)
}

pub fn interval_code_to_string(code: &IntervalCode) -> String {
    let doc = IntervalCodeDoc {
        reference: code.reference().iter().map(str::to_string).collect(),
        lower: code
            .lower()
            .pairs()
            .iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect(),
        upper: code
            .upper()
            .pairs()
            .iter()
            .map(|(u, v)| (u.to_string(), v.to_string()))
            .collect(),
    };
    serde_json::to_string(&doc).expect("interval code serializes")
}

pub fn set_family_from_str(s: &str) -> Result<SetFamily, FormatError> {
    let rows: Vec<Vec<String>> = serde_json::from_str(s)?;
    let base = ElementSet::new(rows.iter().flatten().cloned().collect::<std::collections::BTreeSet<_>>())?;
    Ok(SetFamily::new(base, rows)?)
}

/// Reads a set family over an explicitly supplied base (needed when no member
/// lists every element).
pub fn set_family_from_str_with_base(base: &ElementSet, s: &str) -> Result<SetFamily, FormatError> {
    let rows: Vec<Vec<String>> = serde_json::from_str(s)?;
    Ok(SetFamily::new(base.clone(), rows)?)
}

pub fn set_family_to_string(d: &SetFamily) -> String {
    serde_json::to_string(&d.members()).expect("family members serialize")
}

fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rational_from_string(s: &str) -> Result<BigRational, FormatError> {
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim())
            .map_err(|_| FormatError::Semantic(format!("invalid rational `{s}`")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom == BigInt::from(0) {
                return Err(FormatError::Semantic(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(p)?, denom))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn rational_vector_from_str(s: &str) -> Result<RationalVector, FormatError> {
    let doc: BTreeMap<String, String> = serde_json::from_str(s)?;
    let base = ElementSet::new(doc.keys().cloned())?;
    let mut coords = Vec::with_capacity(base.n());
    for name in base.names() {
        coords.push(rational_from_string(&doc[name])?);
    }
    Ok(RationalVector::new(base, coords)?)
}

pub fn rational_vector_to_string(x: &RationalVector) -> String {
    let doc: BTreeMap<&str, String> = x
        .base()
        .names()
        .zip(x.coords().iter().map(rational_to_string))
        .collect();
    serde_json::to_string(&doc).expect("coordinate map serializes")
}
