//! Dynamical Lie algebras of QAOA MaxCut instances.
//!
//! Exact symbolic Pauli algebra, Lie closure with an echelonized basis,
//! generator sets for the standard / free / reduced / Grover QAOA variants,
//! parity-profile separation analysis, graph extension, closed-form family
//! dimensions, and representation-structure checks.

pub mod closure;
pub mod corpus;
pub mod error;
pub mod extension;
pub mod families;
pub mod generators;
pub mod graph;
pub mod parity;
pub mod pauli;
pub mod repdecomp;
pub mod rng;
pub mod scalar;
pub mod vector;

pub use closure::{close, close_with, BracketSchedule, Budget, ClosureReport, DlaBasis};
pub use error::{ClosureError, GraphError, PauliError};
pub use graph::{BfsLayers, CutAssignment, Graph};
pub use pauli::{PauliLetter, PauliString, PhasedString};
pub use vector::{Element, PauliVector};

/// Exact coefficient type of the public element algebra.
pub type Coefficient = num::BigRational;
