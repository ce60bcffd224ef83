use dla_core::closure::close;
use dla_core::generators::{grover_mixer_generators, grover_search_generators, grover_search_reduced_generators};
use dla_core::graph::Graph;

fn main() {
    let cases: Vec<(&str, Graph)> = vec![
        ("P2", Graph::path(2)),
        ("K3", Graph::complete(3)),
        ("P3", Graph::path(3)),
        ("K13", Graph::star(3)),
        ("C4", Graph::cycle(4)),
        ("P4", Graph::path(4)),
        ("K4", Graph::complete(4)),
    ];
    for (name, g) in &cases {
        let r = g.distinct_value_count().unwrap();
        let gens = grover_mixer_generators(g).unwrap();
        let (basis, _) = close(&gens.to_vec(), None).unwrap();
        println!("{name}: r = {r}, closure dim = {}, r^2+1 = {}", basis.dimension(), r * r + 1);
    }
    for n in 2..=4usize {
        let gens = grover_search_generators(n, 0b1).unwrap();
        let (b, _) = close(&gens.to_vec(), None).unwrap();
        let gens_r = grover_search_reduced_generators(n, 0b1, n - 1).unwrap();
        let (br, _) = close(&gens_r.to_vec(), None).unwrap();
        println!(
            "search n={n}: dim = {} (formula {}), reduced dim = {} (formula {})",
            b.dimension(),
            (n + 1) * (n + 1) + 1,
            br.dimension(),
            n * n + 1
        );
    }
}
