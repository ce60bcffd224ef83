use dla_core::graph::Graph;

fn main() {
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
    for (i, edges) in edge_lists.iter().enumerate() {
        let g = Graph::new(6, edges.iter().map(|&(a, b)| (a - 1, b - 1))).unwrap();
        let id = format!("g6_{}", i + 1);
        let json = g.to_json_string_with_meta(Some(&id), Some("transcribed-from-figure"));
        std::fs::write(format!("corpus/{id}.json"), json + "\n").unwrap();
    }
    println!("wrote 8 corpus graphs");
}
