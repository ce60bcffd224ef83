//! Small-graph corpora: exhaustive enumeration up to isomorphism, tree and
//! asymmetric-graph listings, and seeded random connected graphs.
//!
//! Everything here targets n <= 7 vertices, where bitmask adjacency rows and
//! permutation backtracking are exhaustive and fast.

use crate::graph::Graph;
use crate::rng::Stream;

/// Adjacency as one bitmask row per vertex.
type Adj = Vec<u8>;

fn adj_of_mask(n: usize, mask: u32) -> Adj {
    let mut adj = vec![0u8; n];
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> bit & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            bit += 1;
        }
    }
    adj
}

fn graph_of_adj(adj: &Adj) -> Graph {
    let n = adj.len();
    let mut edges = vec![];
    for u in 0..n {
        for v in (u + 1)..n {
            if adj[u] >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("valid by construction")
}

fn is_connected_adj(adj: &Adj) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let mut seen = 1u8;
    let mut frontier = 1u8;
    while frontier != 0 {
        let mut next = 0u8;
        for u in 0..n {
            if frontier >> u & 1 == 1 {
                next |= adj[u];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    (seen.count_ones() as usize) == n
}

/// Isomorphism test via degree-pruned backtracking; exhaustive for n <= 8.
fn isomorphic(a: &Adj, b: &Adj) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let deg = |adj: &Adj, v: usize| adj[v].count_ones();
    let mut da: Vec<u32> = (0..n).map(|v| deg(a, v)).collect();
    let mut db: Vec<u32> = (0..n).map(|v| deg(b, v)).collect();
    {
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        a: &Adj,
        b: &Adj,
        da: &[u32],
        db: &[u32],
        v: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = a.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || da[v] != db[w] {
                continue;
            }
            let ok = (0..v).all(|u| (a[u] >> v & 1) == (b[image[u]] >> w & 1));
            if !ok {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if rec(a, b, da, db, v + 1, image, used) {
                return true;
            }
            used[w] = false;
            image[v] = usize::MAX;
        }
        false
    }
    rec(a, b, &mut da, &mut db, 0, &mut image, &mut used)
}

fn has_nontrivial_automorphism(adj: &Adj) -> bool {
    let n = adj.len();
    let deg: Vec<u32> = (0..n).map(|v| adj[v].count_ones()).collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        adj: &Adj,
        deg: &[u32],
        v: usize,
        image: &mut [usize],
        used: &mut [bool],
        moved: bool,
    ) -> bool {
        let n = adj.len();
        if v == n {
            return moved;
        }
        for w in 0..n {
            if used[w] || deg[v] != deg[w] {
                continue;
            }
            let ok = (0..v).all(|u| (adj[u] >> v & 1) == (adj[image[u]] >> w & 1));
            if !ok {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if rec(adj, deg, v + 1, image, used, moved || w != v) {
                return true;
            }
            used[w] = false;
            image[v] = usize::MAX;
        }
        false
    }
    rec(adj, &deg, 0, &mut image, &mut used, false)
}

/// Cheap isomorphism-invariant bucket key.
fn invariant(adj: &Adj) -> (Vec<u32>, Vec<(u32, u32)>, u32) {
    let n = adj.len();
    let mut degs: Vec<u32> = (0..n).map(|v| adj[v].count_ones()).collect();
    degs.sort_unstable();
    let mut edge_degs: Vec<(u32, u32)> = vec![];
    let mut triangles = 0u32;
    for u in 0..n {
        for v in (u + 1)..n {
            if adj[u] >> v & 1 == 1 {
                let (p, q) = (adj[u].count_ones(), adj[v].count_ones());
                edge_degs.push((p.min(q), p.max(q)));
            }
            for w in (v + 1)..n {
                if adj[u] >> v & 1 == 1 && adj[v] >> w & 1 == 1 && adj[u] >> w & 1 == 1 {
                    triangles += 1;
                }
            }
        }
    }
    edge_degs.sort_unstable();
    (degs, edge_degs, triangles)
}

/// Deduplicate a stream of adjacency lists up to isomorphism.
struct IsoSet {
    classes: Vec<(Vec<u8>, (Vec<u32>, Vec<(u32, u32)>, u32))>,
}

impl IsoSet {
    fn new() -> Self {
        IsoSet { classes: vec![] }
    }

    fn insert(&mut self, adj: Adj) -> bool {
        let inv = invariant(&adj);
        for (rep, rinv) in &self.classes {
            if *rinv == inv && isomorphic(rep, &adj) {
                return false;
            }
        }
        self.classes.push((adj, inv));
        true
    }
}

/// All connected graphs on exactly `n` vertices, up to isomorphism,
/// deterministic order. Exhaustive scan; intended for n <= 6.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&n), "exhaustive scan supports n <= 6");
    let bits = n * (n - 1) / 2;
    let mut set = IsoSet::new();
    let mut out = vec![];
    for mask in 0..(1u32 << bits) {
        let adj = adj_of_mask(n, mask);
        if !is_connected_adj(&adj) {
            continue;
        }
        if set.insert(adj.clone()) {
            out.push(graph_of_adj(&adj));
        }
    }
    out
}

/// All trees on exactly `n` vertices up to isomorphism, via Pruefer
/// sequences.
pub fn trees_up_to_iso(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n));
    if n == 1 {
        return vec![Graph::new(1, []).unwrap()];
    }
    if n == 2 {
        return vec![Graph::path(2)];
    }
    let mut set = IsoSet::new();
    let mut out = vec![];
    let seq_len = n - 2;
    let total = (n as u64).pow(seq_len as u32);
    for code in 0..total {
        // Decode the Pruefer sequence.
        let mut seq = vec![0usize; seq_len];
        let mut c = code;
        for s in seq.iter_mut() {
            *s = (c % n as u64) as usize;
            c /= n as u64;
        }
        // Standard decoding.
        let mut degree = vec![1u32; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut adj = vec![0u8; n];
        let mut degp = degree.clone();
        let mut edges = vec![];
        for &s in &seq {
            let leaf = (0..n).find(|&v| degp[v] == 1).unwrap();
            edges.push((leaf, s));
            degp[leaf] -= 1;
            degp[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degp[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        for &(u, v) in &edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        if set.insert(adj.clone()) {
            out.push(graph_of_adj(&adj));
        }
    }
    out
}

/// All connected asymmetric graphs on exactly `n` vertices up to
/// isomorphism. Exhaustive for n <= 7.
pub fn asymmetric_connected_up_to_iso(n: usize) -> Vec<Graph> {
    assert!((2..=7).contains(&n));
    let bits = n * (n - 1) / 2;
    let mut set = IsoSet::new();
    let mut out = vec![];
    for mask in 0..(1u32 << bits) {
        let adj = adj_of_mask(n, mask);
        if !is_connected_adj(&adj) || has_nontrivial_automorphism(&adj) {
            continue;
        }
        if set.insert(adj.clone()) {
            out.push(graph_of_adj(&adj));
        }
    }
    out
}

/// Seeded random connected graph: edges drawn i.i.d. with the given
/// probability, resampled until connected.
pub fn random_connected_graph(n: usize, edge_prob: f64, stream: &mut Stream) -> Graph {
    assert!(n >= 2 && n <= 16);
    loop {
        let mut edges = vec![];
        for u in 0..n {
            for v in (u + 1)..n {
                if stream.next_f64() < edge_prob {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}
