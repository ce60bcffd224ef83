use std::time::Instant;
use dla_core::closure::close;
use dla_core::generators::standard_generators;
use dla_core::graph::Graph;

fn main() {
    let cases: Vec<(&str, Vec<(usize, usize)>)> = vec![
        ("class0/row1", vec![(0,2),(0,4),(0,6),(1,4),(1,5),(2,3)]),
        ("class4/row11", vec![(0,2),(0,4),(0,6),(1,3),(1,5),(2,3),(2,4)]),
        ("class6/row24", vec![(0,3),(0,4),(0,6),(1,3),(1,5),(2,3),(2,4)]),
        ("class1/row2", vec![(0,1),(0,2),(0,4),(0,6),(1,4),(1,5),(2,3)]),
    ];
    for (name, edges) in cases {
        let g = Graph::new(7, edges).unwrap();
        let t = Instant::now();
        let (b, r) = close(&standard_generators(&g).to_vec(), None).unwrap();
        println!(
            "{name}: std dim = {} exact = {} in {:.1}s",
            b.dimension(),
            r.exact,
            t.elapsed().as_secs_f64()
        );
    }
}
