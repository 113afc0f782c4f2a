use thiserror::Error;

use crate::poset::Violation;
use crate::quotient::Witness;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation is not a partial order: {0}")]
    InvalidPoset(Violation),

    #[error("size must be positive")]
    ZeroSize,

    #[error("element index {index} is outside a poset of {size} elements")]
    ForeignElement { index: usize, size: usize },

    #[error("unknown element label {0:?}")]
    UnknownLabel(String),

    #[error("{what} has size {size}, above the configured bound {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("map assignment has length {got}, domain has {expected} elements")]
    AssignmentLength { expected: usize, got: usize },

    #[error("maps are not composable: codomain of the first is not the domain of the second")]
    NotComposable,

    #[error("map is not a quotient: {0}")]
    NotQuotient(Witness),

    #[error("maps do not share a codomain")]
    CodomainMismatch,

    #[error("depth {requested} exceeds the configured bound {bound}")]
    DepthBound { requested: usize, bound: usize },

    #[error("invalid level index: {0}")]
    InvalidLevel(String),

    #[error("elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),

    #[error("lattice is not distributive: x={0}, y={1}, z={2} violates x∧(y∨z)=(x∧y)∨(x∧z)")]
    NonDistributive(usize, usize, usize),

    #[error("table is not constant on rank-{rank} cylinders (elements {first} and {second} disagree)")]
    NotCylindrical {
        rank: usize,
        first: usize,
        second: usize,
    },

    #[error("map misses codomain element {0}")]
    NotOnto(usize),

    #[error("level {index} is empty")]
    EmptyLevel { index: usize },

    #[error("inverse system is inconsistent at level {index}: {reason}")]
    InvalidSystem { index: usize, reason: String },

    #[error("thread is not bonding-compatible at level {index}")]
    IncompatibleThread { index: usize },

    #[error("threads have different depths ({0} and {1})")]
    DepthMismatch(usize, usize),

    #[error("operation requires a nonzero thread")]
    ZeroThread,

    #[error("set is not a down-set: {missing} lies below {member} but is missing")]
    NotDownSet { member: usize, missing: usize },

    #[error("invalid word {0:?}")]
    InvalidWord(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
