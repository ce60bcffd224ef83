use dla_core::closure::close;
use dla_core::generators::reduced_generators;
use dla_core::graph::Graph;
use rayon::prelude::*;

fn main() {
    let cases: Vec<(&str, Vec<(usize, usize)>)> = vec![
        ("g7_r1", vec![(0, 2), (0, 6), (1, 5), (1, 6), (3, 5), (4, 6)]),
        ("g7_r2", vec![(0, 2), (0, 3), (0, 6), (1, 5), (2, 6), (4, 6), (5, 6)]),
        ("g7_r11", vec![(0, 4), (0, 6), (1, 5), (2, 5), (2, 6), (3, 4), (4, 6)]),
        ("g7_r24", vec![(0, 3), (0, 5), (0, 6), (1, 4), (1, 6), (2, 3), (2, 6)]),
    ];
    let jobs: Vec<(String, Graph, usize)> = cases
        .iter()
        .flat_map(|(id, edges)| {
            let g = Graph::new(7, edges.clone()).unwrap();
            (0..7).map(move |v| (id.to_string(), g.clone(), v)).collect::<Vec<_>>()
        })
        .collect();
    let mut out: Vec<(String, usize, usize, f64)> = jobs
        .par_iter()
        .map(|(id, g, v)| {
            let gens = reduced_generators(g, *v, false).unwrap();
            let (b, r) = close(&gens, None).unwrap();
            (id.clone(), *v, b.dimension(), r.wall_time_seconds)
        })
        .collect();
    out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    for (id, v, dim, secs) in out {
        println!("{id} v{v}: {dim} ({secs:.1}s)");
    }
}
