use dla_core::closure::{close, Budget};
use dla_core::corpus::asymmetric_connected_up_to_iso;
use dla_core::generators::reduced_generators;
use rayon::prelude::*;

fn main() {
    let classes = asymmetric_connected_up_to_iso(7);
    eprintln!("{} asymmetric connected classes on 7 vertices", classes.len());
    let results: Vec<(usize, Vec<(usize, bool)>)> = classes
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let dims: Vec<(usize, bool)> = (0..7)
                .map(|v| {
                    let gens = reduced_generators(g, v, false).unwrap();
                    let budget = Budget { max_dim: Some(2400), ..Default::default() };
                    let (b, r) = close(&gens, Some(budget)).unwrap();
                    (b.dimension(), r.exact)
                })
                .collect();
            (i, dims)
        })
        .collect();
    for (i, dims) in &results {
        let edges: Vec<String> = classes[*i]
            .edges()
            .iter()
            .map(|&(u, v)| format!("{u}-{v}"))
            .collect();
        println!("class {i}: reduced {dims:?} edges {}", edges.join(","));
    }
}
