//! Dense statevector with the handful of layer operations QAOA needs.

use num::complex::Complex64;

/// State over `n` qubits; amplitude index bit `q` is qubit `q`.
#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The uniform superposition `|+...+>`.
    pub fn plus_state(n: usize) -> StateVector {
        let dim = 1usize << n;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        StateVector { n, amplitudes: vec![amp; dim] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Diagonal phase layer `exp(-i gamma D)` for an eigenvalue table `D`.
    pub fn apply_phase(&mut self, gamma: f64, diag: &[f64]) {
        debug_assert_eq!(diag.len(), self.amplitudes.len());
        for (a, &d) in self.amplitudes.iter_mut().zip(diag) {
            *a *= Complex64::from_polar(1.0, -gamma * d);
        }
    }

    /// Inverse of [`Self::apply_phase`].
    pub fn apply_phase_inverse(&mut self, gamma: f64, diag: &[f64]) {
        self.apply_phase(-gamma, diag);
    }

    /// Mixer layer `exp(-i beta sum_q X_q)`: a product of single-qubit X
    /// rotations since the terms commute.
    pub fn apply_mixer(&mut self, beta: f64) {
        let (c, s) = (beta.cos(), beta.sin());
        let m = Complex64::new(0.0, -s);
        for q in 0..self.n {
            let bit = 1usize << q;
            for x in 0..self.amplitudes.len() {
                if x & bit == 0 {
                    let a = self.amplitudes[x];
                    let b = self.amplitudes[x | bit];
                    self.amplitudes[x] = c * a + m * b;
                    self.amplitudes[x | bit] = m * a + c * b;
                }
            }
        }
    }

    pub fn apply_mixer_inverse(&mut self, beta: f64) {
        self.apply_mixer(-beta);
    }

    /// `<self| D |other>` for a diagonal operator.
    pub fn diag_matrix_element(&self, diag: &[f64], other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .zip(diag)
            .map(|((a, b), &d)| a.conj() * b * d)
            .sum()
    }

    /// `<self| sum_q X_q |other>`.
    pub fn mixer_matrix_element(&self, other: &StateVector) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for q in 0..self.n {
            let bit = 1usize << q;
            for x in 0..self.amplitudes.len() {
                acc += self.amplitudes[x].conj() * other.amplitudes[x ^ bit];
            }
        }
        acc
    }

    /// Diagonal expectation `<self| D |self>` (real by construction).
    pub fn diag_expectation(&self, diag: &[f64]) -> f64 {
        self.amplitudes
            .iter()
            .zip(diag)
            .map(|(a, &d)| a.norm_sqr() * d)
            .sum()
    }
}
