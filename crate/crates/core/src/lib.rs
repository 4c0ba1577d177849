//! Rewriting, normal forms and enumeration for free double interchange
//! semigroups: two associative binary operations linked by the interchange
//! law `(a h b) v (c h d) = (a v c) h (b v d)`.
//!
//! The crate is organized bottom-up:
//!
//! - [`trees`]: binary tree monomials, their text grammar and symmetries.
//! - [`assoc`]: alternating trees, the normal form modulo associativity.
//! - [`geometry`]: dyadic block partitions, the normal form modulo interchange.
//! - [`rewrite`]: redexes, closures, equivalence search and certificates.
//! - [`enumeration`]: counts, the interchange graph and dihedral orbits.
//! - [`interval`]: one-dimensional tree sequences and piecewise-linear maps.
//! - [`search`]: candidate partitions and batch commutativity search.
//! - [`catalog`]: the known relations and negative configurations.

pub mod assoc;
pub mod catalog;
pub mod dyadic;
pub mod enumeration;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod render;
pub mod rewrite;
pub mod search;
pub mod trees;

pub use assoc::AltTree;
pub use dyadic::Dyadic;
pub use error::{Error, ParseError, Result};
pub use geometry::{BlockPartition, Rect};
pub use rewrite::{RewriteCertificate, RewriteStep, RuleSet};
pub use trees::{Op, Position, Symmetry, Tree};
