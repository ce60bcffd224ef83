use std::time::Instant;
use dla_core::closure::close;
use dla_core::generators::{reduced_generators, standard_generators};
use dla_core::graph::Graph;

fn main() {
    let expected = [9usize, 24, 33, 66, 81, 138, 161];
    for (k, &exp) in (2..=8).zip(&expected) {
        let g = Graph::star(k);
        let t = Instant::now();
        let (b, _) = close(&standard_generators(&g).to_vec(), None).unwrap();
        println!(
            "K(1,{k}): std dim = {} (expect {exp}) in {:.2}s",
            b.dimension(),
            t.elapsed().as_secs_f64()
        );
        assert_eq!(b.dimension(), exp);
    }
    for k in [9usize, 10] {
        let g = Graph::star(k);
        let t = Instant::now();
        let gens = reduced_generators(&g, 0, false).unwrap();
        let (b, _) = close(&gens, None).unwrap();
        println!(
            "K(1,{k}) reduced at center: dim = {} in {:.2}s",
            b.dimension(),
            t.elapsed().as_secs_f64()
        );
    }
}
