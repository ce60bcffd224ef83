use std::time::Instant;

use dla_core::closure::close;
use dla_core::generators::{reduced_generators, standard_generators};
use dla_core::graph::Graph;

// Six-vertex graphs drawn from the bundled corpus description (1-indexed
// labels shifted down by one).
fn six_node_corpus() -> Vec<(String, Graph)> {
    let edge_lists: Vec<Vec<(usize, usize)>> = vec![
        vec![(6, 3), (6, 2), (6, 1), (4, 6), (4, 1), (1, 5), (5, 2)],
        vec![(2, 5), (2, 6), (6, 5), (6, 3), (6, 1), (5, 1), (1, 4)],
        vec![(1, 4), (2, 6), (2, 5), (6, 1), (5, 6), (3, 5)],
        vec![(5, 3), (5, 1), (5, 6), (2, 5), (2, 6), (6, 4), (4, 1), (1, 6)],
        vec![(4, 1), (4, 6), (2, 4), (2, 6), (6, 5), (5, 1), (5, 3)],
        vec![(2, 4), (2, 6), (6, 4), (4, 1), (6, 1), (6, 3), (5, 1), (5, 3)],
        vec![(5, 3), (4, 1), (4, 6), (2, 4), (2, 6), (6, 5), (5, 1), (1, 6)],
        vec![(4, 2), (6, 2), (5, 1), (3, 5), (3, 6), (6, 4), (4, 1), (5, 4), (1, 6)],
    ];
    edge_lists
        .into_iter()
        .enumerate()
        .map(|(i, edges)| {
            let shifted: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
            (format!("g6_{}", i + 1), Graph::new(6, shifted).unwrap())
        })
        .collect()
}

fn main() {
    let expected_std = [1984usize, 1970, 1461, 1984, 1908, 1984, 1984, 1984];
    let expected_reduced: [[usize; 6]; 8] = [
        [956, 1020, 1023, 1021, 991, 258],
        [258, 995, 1014, 1023, 957, 258],
        [258, 862, 907, 915, 258, 73],
        [1011, 1022, 1023, 1008, 258, 1023],
        [971, 979, 1023, 909, 258, 890],
        [1013, 1023, 1023, 1023, 1023, 870],
        [987, 964, 1023, 1014, 258, 995],
        [1023, 1023, 1023, 1023, 1023, 1023],
    ];
    let take: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    for (i, (name, g)) in six_node_corpus().into_iter().enumerate().take(take) {
        assert!(g.is_asymmetric().unwrap(), "{name} must be asymmetric");
        let t = Instant::now();
        let (basis, report) = close(&standard_generators(&g).to_vec(), None).unwrap();
        println!(
            "{name}: std dim = {} (expect {}) in {:.2}s, {} brackets",
            basis.dimension(),
            expected_std[i],
            t.elapsed().as_secs_f64(),
            report.brackets_evaluated,
        );
        for v in 0..6 {
            let t = Instant::now();
            let gens = reduced_generators(&g, v, false).unwrap();
            let (rb, _) = close(&gens, None).unwrap();
            println!(
                "  reduced at {v}: dim = {} (expect {}) in {:.2}s",
                rb.dimension(),
                expected_reduced[i][v],
                t.elapsed().as_secs_f64()
            );
        }
    }
}
