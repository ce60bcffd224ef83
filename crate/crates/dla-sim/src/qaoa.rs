//! QAOA circuit specification, simulation, loss, and adjoint gradients.

use dla_core::graph::Graph;
use dla_core::repdecomp::compact_without;
use num::complex::Complex64;
use thiserror::Error;

use crate::statevector::StateVector;

/// Simulation qubit budget.
pub const SIM_MAX_QUBITS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("effective qubit count {0} exceeds the simulation budget {SIM_MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("expected {expected} parameters per angle family, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("parameters must be finite")]
    NonFiniteParameter,
    #[error("reduction vertex {vertex} out of range for {n} vertices")]
    BadReduction { vertex: usize, n: usize },
}

/// Which problem Hamiltonian drives the phase layers and the loss.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Hamiltonian {
    /// The integer-coefficient QAOA operator: `sum_E Z Z` plus, in the
    /// reduced case, `sum_{neighbors} Z`.
    #[default]
    Raw,
    /// The objective-representing diagonal (cut value, or reduced objective)
    /// normalized by its largest absolute eigenvalue.
    NormalizedObjective,
}

/// One QAOA circuit instance: graph, optional vertex reduction, depth, and
/// parameters in the layer order `(beta_1.., gamma_1..)`.
#[derive(Clone, Debug)]
pub struct QaoaCircuitSpec {
    pub graph: Graph,
    pub reduction: Option<usize>,
    pub depth: usize,
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub hamiltonian: Hamiltonian,
}

impl QaoaCircuitSpec {
    pub fn new(
        graph: Graph,
        reduction: Option<usize>,
        betas: Vec<f64>,
        gammas: Vec<f64>,
    ) -> Result<QaoaCircuitSpec, SimError> {
        Self::with_hamiltonian(graph, reduction, betas, gammas, Hamiltonian::Raw)
    }

    pub fn with_hamiltonian(
        graph: Graph,
        reduction: Option<usize>,
        betas: Vec<f64>,
        gammas: Vec<f64>,
        hamiltonian: Hamiltonian,
    ) -> Result<QaoaCircuitSpec, SimError> {
        let depth = betas.len();
        if depth == 0 {
            return Err(SimError::ZeroDepth);
        }
        if gammas.len() != depth {
            return Err(SimError::ParameterCount { expected: depth, got: gammas.len() });
        }
        if betas.iter().chain(&gammas).any(|v| !v.is_finite()) {
            return Err(SimError::NonFiniteParameter);
        }
        if let Some(v) = reduction {
            if v >= graph.n() {
                return Err(SimError::BadReduction { vertex: v, n: graph.n() });
            }
        }
        let spec = QaoaCircuitSpec { graph, reduction, depth, betas, gammas, hamiltonian };
        if spec.qubits() > SIM_MAX_QUBITS {
            return Err(SimError::TooManyQubits(spec.qubits()));
        }
        Ok(spec)
    }

    /// Effective qubit count (the reduced problem drops one).
    pub fn qubits(&self) -> usize {
        match self.reduction {
            Some(_) => self.graph.n() - 1,
            None => self.graph.n(),
        }
    }

    /// Eigenvalue table of the problem Hamiltonian on the effective qubits.
    pub fn diagonal(&self) -> Vec<f64> {
        match self.reduction {
            None => match self.hamiltonian {
                Hamiltonian::Raw => raw_diagonal(&self.graph, &[]),
                Hamiltonian::NormalizedObjective => {
                    let m = self.graph.n();
                    let values: Vec<f64> = (0..1u64 << m)
                        .map(|x| self.graph.cut_value(x) as f64)
                        .collect();
                    normalize(values)
                }
            },
            Some(v) => {
                let (compact, map) = compact_without(&self.graph, v);
                // neighbors of v, renumbered
                let old_to_new: std::collections::HashMap<usize, usize> =
                    map.iter().enumerate().map(|(new, &old)| (old, new)).collect();
                let nbrs: Vec<usize> =
                    self.graph.neighbors(v).iter().map(|w| old_to_new[w]).collect();
                match self.hamiltonian {
                    Hamiltonian::Raw => raw_diagonal(&compact, &nbrs),
                    Hamiltonian::NormalizedObjective => {
                        let m = compact.n();
                        let values: Vec<f64> = (0..1u64 << m)
                            .map(|x| {
                                let cut = compact.cut_value(x);
                                let ones =
                                    nbrs.iter().filter(|&&w| x >> w & 1 == 1).count();
                                (cut + ones) as f64
                            })
                            .collect();
                        normalize(values)
                    }
                }
            }
        }
    }

    /// Simulate the circuit from `|+...+>`.
    pub fn apply(&self) -> StateVector {
        let diag = self.diagonal();
        let mut state = StateVector::plus_state(self.qubits());
        for j in 0..self.depth {
            state.apply_phase(self.gammas[j], &diag);
            state.apply_mixer(self.betas[j]);
        }
        state
    }

    /// Loss: expectation of the problem Hamiltonian in the final state.
    pub fn loss(&self) -> f64 {
        let diag = self.diagonal();
        let mut state = StateVector::plus_state(self.qubits());
        for j in 0..self.depth {
            state.apply_phase(self.gammas[j], &diag);
            state.apply_mixer(self.betas[j]);
        }
        state.diag_expectation(&diag)
    }

    /// Exact-to-machine-precision gradient via reverse (adjoint) statevector
    /// differentiation. Returns `(d loss / d beta_j, d loss / d gamma_j)`
    /// flattened as `[betas..., gammas...]`.
    pub fn gradient(&self) -> Vec<f64> {
        let diag = self.diagonal();
        let p = self.depth;
        let mut psi = StateVector::plus_state(self.qubits());
        for j in 0..p {
            psi.apply_phase(self.gammas[j], &diag);
            psi.apply_mixer(self.betas[j]);
        }
        // phi = H |psi_final>
        let mut phi = psi.clone();
        for (a, &d) in phi.amplitudes.iter_mut().zip(&diag) {
            *a *= Complex64::new(d, 0.0);
        }
        let mut grad_beta = vec![0.0; p];
        let mut grad_gamma = vec![0.0; p];
        for j in (0..p).rev() {
            grad_beta[j] = 2.0 * phi.mixer_matrix_element(&psi).im;
            psi.apply_mixer_inverse(self.betas[j]);
            phi.apply_mixer_inverse(self.betas[j]);
            grad_gamma[j] = 2.0 * phi.diag_matrix_element(&diag, &psi).im;
            psi.apply_phase_inverse(self.gammas[j], &diag);
            phi.apply_phase_inverse(self.gammas[j], &diag);
        }
        grad_beta.extend(grad_gamma);
        grad_beta
    }

    /// Central finite-difference gradient; the independent oracle for the
    /// adjoint method.
    pub fn gradient_fd(&self, step: f64) -> Vec<f64> {
        let mut grad = vec![];
        let eval = |betas: Vec<f64>, gammas: Vec<f64>| -> f64 {
            QaoaCircuitSpec {
                graph: self.graph.clone(),
                reduction: self.reduction,
                depth: self.depth,
                betas,
                gammas,
                hamiltonian: self.hamiltonian,
            }
            .loss()
        };
        for j in 0..self.depth {
            let mut plus = self.betas.clone();
            let mut minus = self.betas.clone();
            plus[j] += step;
            minus[j] -= step;
            grad.push(
                (eval(plus, self.gammas.clone()) - eval(minus, self.gammas.clone())) / (2.0 * step),
            );
        }
        for j in 0..self.depth {
            let mut plus = self.gammas.clone();
            let mut minus = self.gammas.clone();
            plus[j] += step;
            minus[j] -= step;
            grad.push(
                (eval(self.betas.clone(), plus) - eval(self.betas.clone(), minus)) / (2.0 * step),
            );
        }
        grad
    }
}

fn raw_diagonal(g: &Graph, single_z: &[usize]) -> Vec<f64> {
    let m = g.n();
    (0..1u64 << m)
        .map(|x| {
            let mut acc = 0i64;
            for &(u, v) in g.edges() {
                let sign = if (x >> u ^ x >> v) & 1 == 1 { -1 } else { 1 };
                acc += sign;
            }
            for &w in single_z {
                acc += if x >> w & 1 == 1 { -1 } else { 1 };
            }
            acc as f64
        })
        .collect()
}

fn normalize(values: Vec<f64>) -> Vec<f64> {
    let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        values
    } else {
        values.into_iter().map(|v| v / max).collect()
    }
}
