use std::time::Instant;
use dla_core::closure::close_modp_experiment;
use dla_core::generators::standard_generators;
use dla_core::graph::Graph;

fn main() {
    let graphs: Vec<Vec<(usize, usize)>> = vec![
        vec![(6, 3), (6, 2), (6, 1), (4, 6), (4, 1), (1, 5), (5, 2)],
        vec![(1, 4), (2, 6), (2, 5), (6, 1), (5, 6), (3, 5)],
        vec![(4, 2), (6, 2), (5, 1), (3, 5), (3, 6), (6, 4), (4, 1), (5, 4), (1, 6)],
    ];
    for (i, el) in graphs.iter().enumerate() {
        let g = Graph::new(6, el.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap();
        let t = Instant::now();
        let (dim, max_num, max_den, failures, secs) =
            close_modp_experiment(&standard_generators(&g).to_vec(), None).unwrap();
        println!(
            "graph {i}: dim = {dim}, max|num| = {max_num}, max den = {max_den}, failures = {failures}, kernel {secs:.2}s (total {:.2}s)",
            t.elapsed().as_secs_f64()
        );
    }
}
