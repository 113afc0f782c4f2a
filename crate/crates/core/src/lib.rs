//! Finite posets, quotient maps, the sequence P_n = {0,1,2,3}^n and its
//! inverse limit, and down-set lattices over all of them.

pub mod error;
pub mod lattice;
pub mod json;
pub mod limit;
pub mod poset;
pub mod quotient;
pub mod random;
pub mod ternary;
pub mod universal;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{DownSet, FiniteLattice, IdealLattice};
pub use limit::{IdealSystem, IdealThread, InverseSystem, SymbolicPoint, Thread};
pub use poset::{FinitePoset, PosetMap};
pub use quotient::{classify, induce, InducedMap, MapClassification};
pub use ternary::{ComponentIndex, TernaryFunction};
pub use universal::{LevelMapFamily, UniversalSequence};
