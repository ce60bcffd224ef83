use dla_core::graph::Graph;

fn main() {
    // Vertex ids match the table column order of the bundled references.
    let cases: Vec<(&str, Vec<(usize, usize)>)> = vec![
        ("g7_r1", vec![(0, 2), (0, 6), (1, 5), (1, 6), (3, 5), (4, 6)]),
        ("g7_r2", vec![(0, 2), (0, 3), (0, 6), (1, 5), (2, 6), (4, 6), (5, 6)]),
        ("g7_r11", vec![(0, 4), (0, 6), (1, 5), (2, 5), (2, 6), (3, 4), (4, 6)]),
        ("g7_r24", vec![(0, 3), (0, 5), (0, 6), (1, 4), (1, 6), (2, 3), (2, 6)]),
    ];
    for (id, edges) in cases {
        let g = Graph::new(7, edges).unwrap();
        assert!(g.is_asymmetric().unwrap() && g.is_connected());
        let json = g.to_json_string_with_meta(Some(id), Some("identified-by-dimension-fingerprint"));
        std::fs::write(format!("corpus/{id}.json"), json + "\n").unwrap();
    }
    println!("wrote 4 corpus graphs");
}
