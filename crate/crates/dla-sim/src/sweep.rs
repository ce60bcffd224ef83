//! Seeded gradient-variance sweeps across vertex reductions and depths.
//!
//! Parameter draws come from counter-based streams keyed by
//! `(seed, graph id, reduction, depth, sample)`, so any subset of a sweep
//! reproduces independently and results are thread-count invariant.

use std::f64::consts::PI;

use dla_core::graph::Graph;
use dla_core::rng::{fnv1a, Stream};
use rayon::prelude::*;
use serde::Serialize;

use crate::qaoa::{Hamiltonian, QaoaCircuitSpec, SimError};

/// One (graph, reduction, depth) cell of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct VarianceRecord {
    pub graph_id: String,
    /// `None` is the unreduced problem.
    pub reduction: Option<usize>,
    pub depth: usize,
    pub samples: usize,
    pub per_parameter_variance: Vec<f64>,
    /// Mean over the `2p` parameters of the per-parameter sample variance;
    /// the primary plotted statistic.
    pub mean_variance: f64,
    /// Variance of the gradient 2-norm across samples; the secondary
    /// statistic emitted alongside the primary one.
    pub grad_norm_variance: f64,
    pub seed: u64,
}

/// Draw the `2p` parameters of one sample, uniform on `[0, pi]`.
fn draw_parameters(
    seed: u64,
    graph_id: &str,
    reduction: Option<usize>,
    depth: usize,
    sample: usize,
) -> (Vec<f64>, Vec<f64>) {
    let reduction_code = match reduction {
        None => 0u64,
        Some(v) => v as u64 + 1,
    };
    let mut stream = Stream::from_key(&[
        seed,
        fnv1a(graph_id.as_bytes()),
        reduction_code,
        depth as u64,
        sample as u64,
    ]);
    let betas: Vec<f64> = (0..depth).map(|_| stream.next_f64() * PI).collect();
    let gammas: Vec<f64> = (0..depth).map(|_| stream.next_f64() * PI).collect();
    (betas, gammas)
}

fn unbiased_variance(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
}

/// Run one sweep cell.
fn sweep_cell(
    graph: &Graph,
    graph_id: &str,
    reduction: Option<usize>,
    depth: usize,
    samples: usize,
    seed: u64,
    hamiltonian: Hamiltonian,
) -> Result<VarianceRecord, SimError> {
    if samples < 2 {
        return Err(SimError::ParameterCount { expected: 2, got: samples });
    }
    // Per-sample gradients, parallel over samples, deterministic by index.
    let grads: Result<Vec<Vec<f64>>, SimError> = (0..samples)
        .into_par_iter()
        .map(|sample| {
            let (betas, gammas) = draw_parameters(seed, graph_id, reduction, depth, sample);
            let spec = QaoaCircuitSpec::with_hamiltonian(
                graph.clone(),
                reduction,
                betas,
                gammas,
                hamiltonian,
            )?;
            Ok(spec.gradient())
        })
        .collect();
    let grads = grads?;
    let param_count = 2 * depth;
    let per_parameter_variance: Vec<f64> = (0..param_count)
        .map(|k| {
            let column: Vec<f64> = grads.iter().map(|g| g[k]).collect();
            unbiased_variance(&column)
        })
        .collect();
    let mean_variance =
        per_parameter_variance.iter().sum::<f64>() / per_parameter_variance.len() as f64;
    let norms: Vec<f64> = grads
        .iter()
        .map(|g| g.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    Ok(VarianceRecord {
        graph_id: graph_id.to_string(),
        reduction,
        depth,
        samples,
        per_parameter_variance,
        mean_variance,
        grad_norm_variance: unbiased_variance(&norms),
        seed,
    })
}

/// Gradient-variance sweep over reductions and depths.
pub fn variance_sweep(
    graph: &Graph,
    graph_id: &str,
    reductions: &[Option<usize>],
    depths: &[usize],
    samples: usize,
    seed: u64,
    hamiltonian: Hamiltonian,
) -> Result<Vec<VarianceRecord>, SimError> {
    let mut records = vec![];
    for &reduction in reductions {
        for &depth in depths {
            if depth == 0 {
                return Err(SimError::ZeroDepth);
            }
            records.push(sweep_cell(graph, graph_id, reduction, depth, samples, seed, hamiltonian)?);
        }
    }
    Ok(records)
}

/// Paired records of the leaf-attachment comparison: the original graph,
/// unreduced, against the graph with a fresh pendant leaf at `anchor`,
/// reduced at the leaf's neighbor (the anchor itself).
#[derive(Clone, Debug, Serialize)]
pub struct LeafComparison {
    pub original_unreduced: Vec<VarianceRecord>,
    pub extended_reduced_at_anchor: Vec<VarianceRecord>,
    pub leaf: usize,
}

pub fn leaf_attachment_experiment(
    graph: &Graph,
    graph_id: &str,
    anchor: usize,
    depths: &[usize],
    samples: usize,
    seed: u64,
) -> Result<LeafComparison, SimError> {
    let (extended, leaf) = graph
        .with_leaf_at(anchor)
        .map_err(|_| SimError::BadReduction { vertex: anchor, n: graph.n() })?;
    let original_unreduced =
        variance_sweep(graph, graph_id, &[None], depths, samples, seed, Hamiltonian::Raw)?;
    let extended_id = format!("{graph_id}+leaf{anchor}");
    let extended_reduced_at_anchor = variance_sweep(
        &extended,
        &extended_id,
        &[Some(anchor)],
        depths,
        samples,
        seed,
        Hamiltonian::Raw,
    )?;
    Ok(LeafComparison { original_unreduced, extended_reduced_at_anchor, leaf })
}

/// CSV header for [`records_to_csv`].
pub fn csv_header(with_parameters: bool) -> String {
    let mut s = "graph_id,reduction,depth,samples,mean_variance,seed".to_string();
    if with_parameters {
        s.push_str(",grad_norm_variance,per_parameter_variance");
    }
    s
}

/// One row per record; `reduction` renders as `none` or the vertex id.
pub fn records_to_csv(records: &[VarianceRecord], with_parameters: bool) -> String {
    let mut out = csv_header(with_parameters);
    out.push('\n');
    for r in records {
        let reduction = match r.reduction {
            None => "none".to_string(),
            Some(v) => v.to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}",
            r.graph_id, reduction, r.depth, r.samples, r.mean_variance, r.seed
        ));
        if with_parameters {
            let per: Vec<String> = r.per_parameter_variance.iter().map(f64::to_string).collect();
            out.push_str(&format!(",{},{}", r.grad_norm_variance, per.join(";")));
        }
        out.push('\n');
    }
    out
}
