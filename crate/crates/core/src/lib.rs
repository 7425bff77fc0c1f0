//! Singular light leaves and double leaves for finite Coxeter systems.
//!
//! The crate enumerates parabolic double cosets and their reduced
//! expressions, expands Bott-Samelson products in the Hecke algebroid,
//! evaluates diagrammatic 2-morphisms as exact bimodule maps over
//! polynomial invariant rings, constructs light and double leaf
//! morphisms, and certifies at desk scale that they form a basis
//! (triangularity plus graded-dimension census).

pub mod bimodule;
pub mod cosets;
pub mod coxeter;
pub mod diagrams;
pub mod hecke;
pub mod invariants;
pub mod laurent;
pub mod leaves;
pub mod poly;
pub mod subset;
pub mod verify;

pub use coxeter::{CoxeterMatrix, CoxeterSystem, Elt};
pub use subset::Subset;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("group order exceeds element cap {0}")]
    GroupTooLarge(usize),
    #[error("group appears infinite: lengths still growing at cap {0}")]
    InfiniteGroupSuspected(usize),
    #[error("invalid Coxeter matrix: {0}")]
    BadMatrix(String),
    #[error("malformed expression: {0}")]
    MalformedExpression(String),
    #[error("expression type mismatch: {0}")]
    TypeMismatch(String),
    #[error("not a coset pair: {0}")]
    NotACosetPair(String),
    #[error("pair is not Grassmannian")]
    NotGrassmannian,
    #[error("polynomial ratio does not divide exactly")]
    NonDivisible,
    #[error("word is not reduced")]
    NonReducedWord,
    #[error("polynomial is not invariant under the required subset")]
    NotInvariant,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("linear solve failed: {0}")]
    SolveFailed(String),
    #[error("root with mixed coordinate signs; realization rejected")]
    SignAmbiguity,
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("box does not match expression at position {0}")]
    PositionMismatch(usize),
    #[error("no rotation sequence found for the requested switchback")]
    NoSequenceFound,
    #[error("ambiguous rotation sequence for the requested switchback")]
    AmbiguousSequence,
    #[error("expressions are not connected by braid moves")]
    NotConnected,
    #[error("alternation condition violated: {0}")]
    AlternationViolated(String),
    #[error("paths are not coterminal")]
    NotCoterminal,
    #[error("bad input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
