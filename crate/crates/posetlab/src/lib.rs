//! Cryptomorphic views of finite posets.
//!
//! A finite partial order can be written down in several equivalent ways: as a
//! binary relation, as the set of its linear extensions inside the
//! permutohedral graph, as a family of down sets (a finite topology), as an
//! interval of pairs relative to a reference order, or as a polyhedral braid
//! cone. This crate implements each view with exact arithmetic and the
//! conversions between all of them, together with the graph-side machinery
//! (distances, geodesics, geodetic convexity) that makes the extension-set
//! view work.
//!
//! The `book/` directory of the repository walks through the concepts chapter
//! by chapter; its code snippets compile and run as doc-tests of this crate.

pub mod book;
pub mod cli;
pub mod convexity;
pub mod dot;
pub mod enumerations;
pub mod extensions;
pub mod geometry;
pub mod json;
pub mod relations;
pub mod topology;

pub use convexity::{ConvexityReport, IntervalCode, ViolatingTriple};
pub use enumerations::{EdgeLabel, Enumeration, Toset};
pub use extensions::EnumSet;
pub use relations::{
    Comparability, ElementSet, Poset, PosetBuildError, PosetDefect, Preposet, Quotient, Relation,
    RelationError,
};
