use dla_core::graph::Graph;
use dla_sim::{variance_sweep, Hamiltonian};

fn main() {
    for id in ["g7_r2", "g7_r11", "g7_r24"] {
        let path = format!("corpus/{id}.json");
        let g = Graph::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let reductions: Vec<Option<usize>> = std::iter::once(None).chain((0..7).map(Some)).collect();
        let mut ok = true;
        for seed in [1u64, 2, 3] {
            let records =
                variance_sweep(&g, id, &reductions, &[1, 50], 400, seed, Hamiltonian::Raw).unwrap();
            let mean = |reduction: Option<usize>, depth: usize| {
                records
                    .iter()
                    .find(|r| r.reduction == reduction && r.depth == depth)
                    .map(|r| r.mean_variance)
                    .unwrap()
            };
            let u50 = mean(None, 50);
            let u1 = mean(None, 1);
            for v in 0..7 {
                let r50 = mean(Some(v), 50);
                let r1 = mean(Some(v), 1);
                if r50 <= u50 {
                    println!("{id} seed {seed}: v{v} depth50 {r50:.4} <= unreduced {u50:.4}");
                    ok = false;
                }
                if u1 <= r1 {
                    println!("{id} seed {seed}: v{v} depth1 unreduced {u1:.4} <= {r1:.4}");
                    ok = false;
                }
            }
        }
        println!("{id}: {}", if ok { "ALL ORDERINGS HOLD" } else { "violations above" });
    }
}
