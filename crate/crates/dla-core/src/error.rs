//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("edge endpoint {endpoint} out of range for {n} vertices")]
    EndpointOutOfRange { endpoint: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("size budget exceeded: n = {n} > {max}")]
    SizeBudget { n: usize, max: usize },
    #[error("graph must be connected for this operation")]
    Disconnected,
    #[error("graph must be acyclic for this operation")]
    Cyclic,
    #[error("assignment covers {got} vertices, expected {expected}")]
    AssignmentLength { got: usize, expected: usize },
    #[error("layer index {j} exceeds eccentricity {ecc}")]
    LayerOutOfRange { j: usize, ecc: usize },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },
    #[error("cannot canonicalize the zero vector")]
    ZeroVector,
    #[error("parse error in Pauli expression: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosureError {
    #[error("generator set is empty or all zero")]
    NoGenerators,
    #[error("qubit count mismatch among generators: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },
    #[error("operation requires an exact basis (budget-limited lower bound given)")]
    InexactBasis,
}
