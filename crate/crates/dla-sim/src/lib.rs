//! Statevector QAOA simulation and the gradient-variance experiment
//! harness: alternating-layer circuits over exact-objective phase tables,
//! adjoint-mode gradients, and seeded variance sweeps across vertex
//! reductions and depths.

pub mod qaoa;
pub mod statevector;
pub mod sweep;

pub use qaoa::{Hamiltonian, QaoaCircuitSpec, SimError};
pub use statevector::StateVector;
pub use sweep::{csv_header, leaf_attachment_experiment, records_to_csv, variance_sweep, LeafComparison, VarianceRecord};
