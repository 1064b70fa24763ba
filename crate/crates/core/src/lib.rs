//! Exact computations on fans of smooth complete toric varieties.
//!
//! The crate models a toric variety by its fan in `Z^d` and works entirely
//! in exact integer and rational arithmetic. On top of the basic fan
//! machinery it provides:
//!
//! * primitive collections and relations, Fano and weak Fano tests, and
//!   extremality in the Mori cone ([`primitive`]);
//! * classification of crepant extremal contractions and the weakened Fano
//!   predicate for 3-folds ([`contraction`]);
//! * the anticanonical polytope and the degree `(-K)^d` ([`polytope`]);
//! * fan isomorphism and canonical keys ([`isomorphism`]);
//! * named fans for the 16 smooth toric weak del Pezzo surfaces and the
//!   15 toric weakened Fano 3-folds ([`catalog`]), and enumerations that
//!   recover both lists ([`classify`]).

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod contraction;
pub mod error;
pub mod fan;
pub mod isomorphism;
pub mod lattice;
pub mod lp;
pub mod polytope;
pub mod primitive;

pub use error::{Error, Result};
pub use fan::{Cone, Fan, Strictness, ValidationReport};
pub use lattice::{IntMatrix, LatticeVector, Rational, UniMatrix};
pub use primitive::PrimitiveRelation;
