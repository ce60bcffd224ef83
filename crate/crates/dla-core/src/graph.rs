//! Undirected simple graphs on vertex set `{0..n-1}`, BFS structure, vertex
//! reduction, the brute-force MaxCut oracle, and small corpus utilities.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Exhaustive-enumeration budget for MaxCut and distinct-value counting.
pub const BRUTEFORCE_MAX_N: usize = 24;
/// Budget for the automorphism search in [`Graph::is_asymmetric`].
pub const ASYMMETRY_MAX_N: usize = 10;

/// Undirected simple graph. Vertices are `0..n-1`; edges are stored with
/// `u < v`, sorted, without duplicates.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// BFS distance layers from a root vertex. Layer `j` holds the vertices at
/// distance exactly `j`; vertices unreachable from the root appear in no
/// layer and have no distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsLayers {
    pub root: usize,
    pub layers: Vec<Vec<usize>>,
    pub dist: Vec<Option<usize>>,
}

/// One optimal cut: assignment bits plus the achieved value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutAssignment {
    /// Bit `v` gives the side of vertex `v`.
    pub bits: u64,
    pub value: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    provenance: Option<String>,
}

impl Graph {
    /// Validate and normalize an edge list.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut norm = vec![];
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::EndpointOutOfRange { endpoint: a, n });
            }
            if b >= n {
                return Err(GraphError::EndpointOutOfRange { endpoint: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            norm.push(e);
        }
        norm.sort_unstable();
        let mut adj = vec![vec![]; n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: norm, adj })
    }

    /// Parse either the canonical JSON format `{"n":..,"edges":[[u,v],..]}`
    /// or plain text with one `u v` pair per line (`n` = max id + 1).
    pub fn parse(source: &str) -> Result<Self, GraphError> {
        let trimmed = source.trim_start();
        if trimmed.starts_with('{') {
            Self::from_json_str(source)
        } else {
            Self::from_edge_list_text(source)
        }
    }

    pub fn from_json_str(source: &str) -> Result<Self, GraphError> {
        let parsed: GraphJson =
            serde_json::from_str(source).map_err(|e| GraphError::Parse(e.to_string()))?;
        Graph::new(parsed.n, parsed.edges)
    }

    pub fn from_edge_list_text(source: &str) -> Result<Self, GraphError> {
        let mut edges = vec![];
        let mut max_id = None::<usize>;
        for (lineno, line) in source.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse_id = |tok: Option<&str>| -> Result<usize, GraphError> {
                tok.ok_or_else(|| GraphError::Parse(format!("line {}: expected `u v`", lineno + 1)))?
                    .parse()
                    .map_err(|_| GraphError::Parse(format!("line {}: bad vertex id", lineno + 1)))
            };
            let u = parse_id(it.next())?;
            let v = parse_id(it.next())?;
            if it.next().is_some() {
                return Err(GraphError::Parse(format!("line {}: extra tokens", lineno + 1)));
            }
            max_id = Some(max_id.map_or(u.max(v), |m: usize| m.max(u).max(v)));
            edges.push((u, v));
        }
        let n = max_id.map_or(0, |m| m + 1);
        Graph::new(n, edges)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_string_with_meta(None, None)
    }

    pub fn to_json_string_with_meta(&self, id: Option<&str>, provenance: Option<&str>) -> String {
        serde_json::to_string_pretty(&GraphJson {
            n: self.n,
            edges: self.edges.clone(),
            id: id.map(str::to_owned),
            provenance: provenance.map(str::to_owned),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_layers(0)
            .map(|b| b.reached_count() == self.n)
            .unwrap_or(false)
    }

    /// True iff the graph is acyclic (a forest).
    pub fn is_acyclic(&self) -> bool {
        // A forest has |E| = n - #components.
        let mut seen = vec![false; self.n];
        let mut components = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            components += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        self.edges.len() + components == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![None::<bool>; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    match color[w] {
                        None => {
                            color[w] = Some(!color[u].unwrap());
                            queue.push_back(w);
                        }
                        Some(c) if c == color[u].unwrap() => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// True iff the graph is a single cycle C_n.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3
            && self.edge_count() == self.n
            && self.is_connected()
            && (0..self.n).all(|v| self.degree(v) == 2)
    }

    /// BFS distance layers from `v`.
    pub fn bfs_layers(&self, v: usize) -> Result<BfsLayers, GraphError> {
        self.check_vertex(v)?;
        let mut dist = vec![None; self.n];
        dist[v] = Some(0);
        let mut layers = vec![vec![v]];
        loop {
            let prev = layers.last().unwrap();
            let mut next = vec![];
            for &u in prev {
                for &w in self.neighbors(u) {
                    if dist[w].is_none() {
                        dist[w] = Some(layers.len());
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        Ok(BfsLayers { root: v, layers, dist })
    }

    /// Eccentricity of `v` within its component.
    pub fn eccentricity(&self, v: usize) -> Result<usize, GraphError> {
        Ok(self.bfs_layers(v)?.eccentricity())
    }

    /// The reduced graph at `v`: vertex `v` and its incident edges removed,
    /// remaining vertex ids preserved (no renumbering). The returned graph
    /// keeps `n` vertex slots; `v` simply becomes absent from every edge.
    pub fn reduced_at(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        Graph::new(
            self.n,
            self.edges.iter().copied().filter(|&(a, b)| a != v && b != v),
        )
    }

    /// Insert a fresh pendant vertex attached to `anchor`; returns the new
    /// graph and the id of the added leaf.
    pub fn with_leaf_at(&self, anchor: usize) -> Result<(Graph, usize), GraphError> {
        self.check_vertex(anchor)?;
        let leaf = self.n;
        let mut edges = self.edges.clone();
        edges.push((anchor, leaf));
        Ok((Graph::new(self.n + 1, edges)?, leaf))
    }

    /// Cut value of the assignment given by the low `n` bits of `bits`.
    pub fn cut_value(&self, bits: u64) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| (bits >> u ^ bits >> v) & 1 == 1)
            .count()
    }

    /// Exact MaxCut by exhaustive enumeration: the optimum value and every
    /// optimal assignment (optima come in bit-flip pairs).
    pub fn maxcut_bruteforce(&self) -> Result<(usize, Vec<CutAssignment>), GraphError> {
        if self.n > BRUTEFORCE_MAX_N {
            return Err(GraphError::SizeBudget { n: self.n, max: BRUTEFORCE_MAX_N });
        }
        let mut best = 0;
        let mut optima = vec![];
        for bits in 0..(1u64 << self.n) {
            let value = self.cut_value(bits);
            if value > best {
                best = value;
                optima.clear();
            }
            if value == best {
                optima.push(CutAssignment { bits, value });
            }
        }
        Ok((best, optima))
    }

    /// Reduced MaxCut objective with vertex `v` fixed to the zero side:
    /// cut among edges avoiding `v`, plus one per neighbor of `v` on side 1.
    /// `bits` assigns every vertex except `v` (bit `v` is ignored and must be
    /// provided clear through [`Self::reduced_objective`]'s map argument).
    pub fn reduced_objective(&self, v: usize, bits: &[(usize, bool)]) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        if bits.len() != self.n - 1 {
            return Err(GraphError::AssignmentLength { got: bits.len(), expected: self.n - 1 });
        }
        let mut mask = 0u64;
        let mut covered = 0u64;
        for &(w, side) in bits {
            self.check_vertex(w)?;
            if w == v {
                return Err(GraphError::Invalid(format!("assignment covers the fixed vertex {v}")));
            }
            if covered >> w & 1 == 1 {
                return Err(GraphError::Invalid(format!("vertex {w} assigned twice")));
            }
            covered |= 1 << w;
            if side {
                mask |= 1 << w;
            }
        }
        Ok(self.reduced_objective_bits(v, mask))
    }

    /// Same as [`Self::reduced_objective`] on a packed bitmask whose bit `v`
    /// is ignored.
    pub fn reduced_objective_bits(&self, v: usize, bits: u64) -> usize {
        let bits = bits & !(1u64 << v);
        let cut_avoiding_v = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v && (bits >> a ^ bits >> b) & 1 == 1)
            .count();
        let ones_at_neighbors = self.neighbors(v).iter().filter(|&&w| bits >> w & 1 == 1).count();
        cut_avoiding_v + ones_at_neighbors
    }

    /// Number of distinct values of the cut objective over all assignments.
    /// Coincides with the distinct-value count of the reduced objective.
    pub fn distinct_value_count(&self) -> Result<usize, GraphError> {
        if self.n > BRUTEFORCE_MAX_N {
            return Err(GraphError::SizeBudget { n: self.n, max: BRUTEFORCE_MAX_N });
        }
        let mut seen = vec![false; self.edges.len() + 1];
        let mut count = 0;
        for bits in 0..(1u64 << self.n) {
            let v = self.cut_value(bits);
            if !seen[v] {
                seen[v] = true;
                count += 1;
            }
        }
        Ok(count)
    }

    /// True iff the only automorphism is the identity. Plain backtracking
    /// over degree-refined candidate sets; budgeted to small graphs.
    pub fn is_asymmetric(&self) -> Result<bool, GraphError> {
        if self.n > ASYMMETRY_MAX_N {
            return Err(GraphError::SizeBudget { n: self.n, max: ASYMMETRY_MAX_N });
        }
        Ok(!self.has_nontrivial_automorphism())
    }

    fn has_nontrivial_automorphism(&self) -> bool {
        let n = self.n;
        if n <= 1 {
            return false;
        }
        // candidates[v] = vertices with the same degree as v
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.automorphism_backtrack(0, &mut image, &mut used, &mut false)
    }

    fn automorphism_backtrack(
        &self,
        v: usize,
        image: &mut [usize],
        used: &mut [bool],
        nontrivial_prefix: &mut bool,
    ) -> bool {
        let n = self.n;
        if v == n {
            return *nontrivial_prefix;
        }
        for w in 0..n {
            if used[w] || self.degree(w) != self.degree(v) {
                continue;
            }
            // adjacency with already-mapped vertices must be preserved
            let ok = (0..v).all(|u| self.has_edge(u, v) == self.has_edge(image[u], w));
            if !ok {
                continue;
            }
            image[v] = w;
            used[w] = true;
            let was = *nontrivial_prefix;
            if w != v {
                *nontrivial_prefix = true;
            }
            if self.automorphism_backtrack(v + 1, image, used, nontrivial_prefix) {
                return true;
            }
            *nontrivial_prefix = was;
            used[w] = false;
            image[v] = usize::MAX;
        }
        false
    }

    /// Relabel vertices: `perm[old] = new`. `perm` must be a permutation.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::Invalid("permutation length mismatch".into()));
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    // Small named families used throughout tests and the CLI.

    /// Path P_n on vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// Cycle C_n.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// Star K_{1,k}: center `0`, leaves `1..=k`.
    pub fn star(k: usize) -> Graph {
        Graph::new(k + 1, (1..=k).map(|i| (0, i))).unwrap()
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    /// Spider graph with center `0` and arms of the given lengths; arm `j`
    /// occupies consecutive ids after all previous arms.
    pub fn spider(arms: &[usize]) -> Graph {
        let n = 1 + arms.iter().sum::<usize>();
        let mut edges = vec![];
        let mut next = 1;
        for &m in arms {
            let mut prev = 0;
            for _ in 0..m {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::new(n, edges).unwrap()
    }
}

impl BfsLayers {
    /// Index of the last non-empty layer.
    pub fn eccentricity(&self) -> usize {
        self.layers.len() - 1
    }

    /// Vertices at distance exactly `j` (empty slice when out of range).
    pub fn layer(&self, j: usize) -> &[usize] {
        self.layers.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn reached_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_graph_examples() {
        let k3 = Graph::parse(r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(k3.n(), 3);
        assert_eq!(k3.edge_count(), 3);
        let p2 = Graph::parse(r#"{"n":2,"edges":[[0,1]]}"#).unwrap();
        assert_eq!(p2.edge_count(), 1);
        let err = Graph::parse(r#"{"n":3,"edges":[[0,3]]}"#).unwrap_err();
        assert!(matches!(err, GraphError::EndpointOutOfRange { endpoint: 3, n: 3 }));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        ));
        // plain text form
        let txt = Graph::parse("0 1\n1 2\n").unwrap();
        assert_eq!(txt, Graph::path(3));
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::spider(&[1, 2, 3]);
        let back = Graph::parse(&g.to_json_string()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn bfs_layer_examples() {
        let p3 = Graph::path(3);
        let b = p3.bfs_layers(0).unwrap();
        assert_eq!(b.layers, vec![vec![0], vec![1], vec![2]]);
        let k3 = Graph::complete(3);
        assert_eq!(k3.bfs_layers(0).unwrap().layers, vec![vec![0], vec![1, 2]]);
        let star = Graph::star(5);
        let b = star.bfs_layers(0).unwrap();
        assert_eq!(b.layers, vec![vec![0], vec![1, 2, 3, 4, 5]]);
        assert!(p3.bfs_layers(7).is_err());
    }

    #[test]
    fn reduce_graph_examples() {
        let k3 = Graph::complete(3);
        let r = k3.reduced_at(0).unwrap();
        assert_eq!(r.edges(), &[(1, 2)]);
        let star = Graph::star(4);
        assert_eq!(star.reduced_at(0).unwrap().edge_count(), 0);
        // cycle reduced at any vertex is a path on the remaining ids
        let c5 = Graph::cycle(5);
        let r = c5.reduced_at(0).unwrap();
        assert_eq!(r.edge_count(), 3);
        assert!(r.is_acyclic());
        // edge count drops by deg(v)
        for v in 0..5 {
            let g = Graph::cycle(5);
            assert_eq!(g.reduced_at(v).unwrap().edge_count(), g.edge_count() - g.degree(v));
        }
    }

    #[test]
    fn maxcut_examples() {
        let (v, optima) = Graph::complete(3).maxcut_bruteforce().unwrap();
        assert_eq!(v, 2);
        assert_eq!(optima.len(), 6);
        let (v, optima) = Graph::path(3).maxcut_bruteforce().unwrap();
        assert_eq!(v, 2);
        let bits: Vec<u64> = optima.iter().map(|o| o.bits).collect();
        assert_eq!(bits, vec![0b010, 0b101]);
        assert_eq!(Graph::path(2).maxcut_bruteforce().unwrap().0, 1);
        // optima closed under global flip
        for g in [Graph::cycle(5), Graph::star(3), Graph::complete(4)] {
            let (_, optima) = g.maxcut_bruteforce().unwrap();
            assert_eq!(optima.len() % 2, 0);
            let all = (1u64 << g.n()) - 1;
            for o in &optima {
                assert!(optima.iter().any(|p| p.bits == o.bits ^ all));
            }
        }
    }

    #[test]
    fn reduced_objective_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.reduced_objective(0, &[(1, true), (2, false)]).unwrap(), 2);
        assert_eq!(k3.reduced_objective(0, &[(1, false), (2, false)]).unwrap(), 0);
        let p2 = Graph::path(2);
        assert_eq!(p2.reduced_objective(0, &[(1, true)]).unwrap(), 1);
        assert!(k3.reduced_objective(0, &[(1, true)]).is_err());
        assert!(k3
            .reduced_objective(0, &[(1, true), (1, false)])
            .is_err());
    }

    #[test]
    fn reduced_objective_consistency_with_maxcut() {
        // For every optimum x of F with bit v clear, the restriction maximizes
        // the reduced objective, and conversely.
        for g in [Graph::cycle(5), Graph::complete(4), Graph::spider(&[1, 2]), Graph::path(6)] {
            let (best, optima) = g.maxcut_bruteforce().unwrap();
            for v in 0..g.n() {
                let reduced_best = (0..1u64 << g.n())
                    .filter(|b| b >> v & 1 == 0)
                    .map(|b| g.reduced_objective_bits(v, b))
                    .max()
                    .unwrap();
                assert_eq!(reduced_best, best);
                for o in optima.iter().filter(|o| o.bits >> v & 1 == 0) {
                    assert_eq!(g.reduced_objective_bits(v, o.bits), best);
                }
            }
        }
    }

    #[test]
    fn distinct_value_examples() {
        assert_eq!(Graph::complete(3).distinct_value_count().unwrap(), 2);
        assert_eq!(Graph::path(2).distinct_value_count().unwrap(), 2);
        assert_eq!(Graph::new(3, []).unwrap().distinct_value_count().unwrap(), 1);
    }

    #[test]
    fn asymmetry_examples() {
        assert!(!Graph::path(3).is_asymmetric().unwrap());
        assert!(!Graph::complete(3).is_asymmetric().unwrap());
        // smallest asymmetric tree: the 7-vertex "spider" with arms 1,2,3
        assert!(Graph::spider(&[1, 2, 3]).is_asymmetric().unwrap());
        assert!(Graph::new(11, []).unwrap().is_asymmetric().is_err());
    }

    #[test]
    fn layers_partition_component() {
        for g in [Graph::cycle(6), Graph::spider(&[2, 3]), Graph::complete(5)] {
            for v in 0..g.n() {
                let b = g.bfs_layers(v).unwrap();
                assert_eq!(b.reached_count(), g.n());
                let mut seen = vec![false; g.n()];
                for (j, layer) in b.layers.iter().enumerate() {
                    for &w in layer {
                        assert!(!seen[w]);
                        seen[w] = true;
                        assert_eq!(b.dist[w], Some(j));
                        if j > 0 {
                            assert!(g.neighbors(w).iter().any(|&u| b.dist[u] == Some(j - 1)));
                        }
                    }
                }
            }
        }
    }
}
