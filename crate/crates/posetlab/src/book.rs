//! The guide in `book/` rendered as rustdoc, one module per chapter.
//!
//! mdbook cannot run chapter snippets against this crate, so each chapter is
//! also included here as a doc comment: `cargo test --doc` then compiles and
//! runs every Rust block in the book, keeping the prose and the library in
//! lockstep.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/relations.md")]
pub mod relations {}

#[doc = include_str!("../../../book/src/enumerations.md")]
pub mod enumerations {}

#[doc = include_str!("../../../book/src/extensions.md")]
pub mod extensions {}

#[doc = include_str!("../../../book/src/convexity.md")]
pub mod convexity {}

#[doc = include_str!("../../../book/src/topology.md")]
pub mod topology {}

#[doc = include_str!("../../../book/src/geometry.md")]
pub mod geometry {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
