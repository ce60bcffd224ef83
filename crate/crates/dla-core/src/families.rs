//! Closed-form DLA dimensions for path, cycle, star, spider, and Grover
//! families. The formulas serve as oracles for the closure engine; the CLI
//! prints both and treats disagreement as a hard error.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("path formulas need n >= 2 (got {0})")]
    PathTooSmall(usize),
    #[error("cycle formula needs n >= 3 (got {0})")]
    CycleTooSmall(usize),
    #[error("spider formula requires pairwise distinct arm lengths >= 1")]
    SpiderArms,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PathVariant {
    Standard,
    Free,
}

/// Path graph dimensions: standard `n^2`, free `2n^2 - n`.
pub fn dim_path(n: usize, variant: PathVariant) -> Result<usize, FamilyError> {
    if n < 2 {
        return Err(FamilyError::PathTooSmall(n));
    }
    Ok(match variant {
        PathVariant::Standard => n * n,
        PathVariant::Free => 2 * n * n - n,
    })
}

/// Cycle graph standard dimension: `3n - 1`.
pub fn dim_cycle_std(n: usize) -> Result<usize, FamilyError> {
    if n < 3 {
        return Err(FamilyError::CycleTooSmall(n));
    }
    Ok(3 * n - 1)
}

/// Star graph reduced at the center: constant 3 for every leaf count.
pub fn dim_star_reduced_center() -> usize {
    3
}

/// Spider graph reduced at the center with pairwise distinct arm lengths:
/// the sum of `2m^2 + m` per arm. Also returns the quadratic bound
/// `2n^2 + n` with `n` the total non-central vertex count.
pub fn dim_spider_reduced(arms: &[usize]) -> Result<(usize, usize), FamilyError> {
    if arms.is_empty() || arms.iter().any(|&m| m == 0) {
        return Err(FamilyError::SpiderArms);
    }
    let mut sorted = arms.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(FamilyError::SpiderArms);
    }
    let dim = arms.iter().map(|&m| 2 * m * m + m).sum();
    let n: usize = arms.iter().sum();
    Ok((dim, 2 * n * n + n))
}

/// Grover-mixer closure dimension in terms of the distinct objective value
/// count `r`.
pub fn dim_grover(r: usize) -> usize {
    r * r + 1
}

/// Grover-search closure dimension on `n` bits; `reduced` fixes one bit.
pub fn dim_grover_search(n: usize, reduced: bool) -> usize {
    if reduced {
        n * n + 1
    } else {
        (n + 1) * (n + 1) + 1
    }
}

/// Full special-unitary dimension on `n_qubits` qubits: `4^n - 1`.
pub fn dim_full_su(n_qubits: usize) -> usize {
    (1usize << (2 * n_qubits)) - 1
}
