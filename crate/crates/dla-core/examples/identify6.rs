use dla_core::closure::close;
use dla_core::corpus::asymmetric_connected_up_to_iso;
use dla_core::generators::{reduced_generators, standard_generators};
use dla_core::graph::Graph;

fn transcriptions() -> Vec<Graph> {
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
        .map(|edges| Graph::new(6, edges.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap())
        .collect()
}

// crude isomorphism via brute permutation (6! = 720)
fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if a.edges().iter().all(|&(u, v)| b.has_edge(perm[u], perm[v])) {
            return true;
        }
        // next permutation
        let mut i = n - 1;
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

fn main() {
    let classes = asymmetric_connected_up_to_iso(6);
    println!("{} asymmetric connected classes on 6 vertices", classes.len());
    let trans = transcriptions();
    for (ti, t) in trans.iter().enumerate() {
        assert!(t.is_asymmetric().unwrap(), "transcription {} not asymmetric!", ti + 1);
        let m: Vec<usize> = classes
            .iter()
            .enumerate()
            .filter(|(_, c)| isomorphic(t, c))
            .map(|(i, _)| i)
            .collect();
        println!("transcription {} -> class {:?}", ti + 1, m);
    }
    // exact fingerprints of the transcriptions
    for (ti, t) in trans.iter().enumerate() {
        let (b, _) = close(&standard_generators(t).to_vec(), None).unwrap();
        let mut reduced = vec![];
        for v in 0..6 {
            let gens = reduced_generators(t, v, false).unwrap();
            let (rb, _) = close(&gens, None).unwrap();
            reduced.push(rb.dimension());
        }
        println!("transcription {}: std = {}, reduced = {:?}", ti + 1, b.dimension(), reduced);
    }
}
