//! Parity-degree classes along distance-increasing paths, the pairwise
//! separation check, and the linear-time acyclic-graph criterion.
//!
//! A path of length `j` from the root to a vertex at distance `j` is
//! necessarily distance-increasing, so class membership is decided exactly
//! by dynamic programming over layer-to-layer edges rather than by path
//! enumeration.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::GraphError;
use crate::graph::{BfsLayers, Graph};

/// Direction of the parity profile relative to the root.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Inward,
    Outward,
}

/// A parity-degree class: the vertices of layer `j` reachable with profile
/// `a` (inward: along paths from the root; outward: along paths of length
/// `ell` deeper into the graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityClass {
    pub direction: Direction,
    pub j: usize,
    /// Outward length; absent for inward classes.
    pub ell: Option<usize>,
    /// Profile bits, least significant bit first.
    pub a: u64,
    pub a_len: usize,
    pub members: Vec<usize>,
}

/// Witness that a class separates a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub direction: Direction,
    pub j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    /// Profile rendered as a 0/1 string, first step first.
    pub a: String,
}

/// Verdict for one unordered pair within a layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub pair: (usize, usize),
    pub separated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Set by the optional re-rooted pass; not part of the plain criterion.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rerooted_witness: Option<RerootedWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RerootedWitness {
    pub root: usize,
    pub kind: RerootKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RerootKind {
    DistanceSplit,
    ClassSplit(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerVerdict {
    pub j: usize,
    pub all_separated: bool,
    pub pairs: Vec<PairVerdict>,
}

/// Per-layer verdicts of the separation hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub root: usize,
    pub overall: bool,
    /// Overall verdict after the optional re-rooted extension pass; equals
    /// `overall` when the pass is disabled.
    pub overall_with_rerooting: bool,
    pub layers: Vec<LayerVerdict>,
}

/// One leaf's parity profile in the tree criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeafProfile {
    pub leaf: usize,
    pub j: usize,
    pub profile: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeReport {
    pub root: usize,
    pub distinct: bool,
    pub profiles: Vec<LeafProfile>,
}

fn profile_string(a: u64, len: usize) -> String {
    (0..len).map(|s| if a >> s & 1 == 1 { '1' } else { '0' }).collect()
}

fn check_connected_from(g: &Graph, layers: &BfsLayers) -> Result<(), GraphError> {
    if layers.reached_count() != g.n() {
        return Err(GraphError::Disconnected);
    }
    Ok(())
}

/// Reachable inward parity-prefix sets per vertex, layer by layer.
/// `sets[w]` holds every realizable profile `(a_1..a_dist(w))`, where
/// `a_s` is the degree parity of the s-th path vertex (the endpoint
/// included, the root excluded).
fn inward_sets(g: &Graph, layers: &BfsLayers) -> Vec<BTreeSet<u64>> {
    let mut sets: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); g.n()];
    sets[layers.root].insert(0);
    for j in 1..=layers.eccentricity() {
        for &w in layers.layer(j) {
            let parity = (g.degree(w) % 2) as u64;
            let mut acc = BTreeSet::new();
            for &p in g.neighbors(w) {
                if layers.dist[p] == Some(j - 1) {
                    for &prefix in &sets[p] {
                        acc.insert(prefix | parity << (j - 1));
                    }
                }
            }
            sets[w] = acc;
        }
    }
    sets
}

/// Realizable outward parity-suffix sets of length `ell` per vertex of
/// layer `j`: profiles along distance-increasing paths descending `ell`
/// layers (parities of the visited vertices, the start excluded).
fn outward_sets(g: &Graph, layers: &BfsLayers, j: usize, ell: usize) -> BTreeMap<usize, BTreeSet<u64>> {
    // backward DP from layer j+ell toward layer j
    let mut current: BTreeMap<usize, BTreeSet<u64>> = layers
        .layer(j + ell)
        .iter()
        .map(|&w| (w, BTreeSet::from([0u64])))
        .collect();
    for step in (0..ell).rev() {
        // vertices at layer j+step extend by each deeper neighbor's parity
        let mut next: BTreeMap<usize, BTreeSet<u64>> = BTreeMap::new();
        for &w in layers.layer(j + step) {
            let mut acc = BTreeSet::new();
            for &q in g.neighbors(w) {
                if layers.dist[q] == Some(j + step + 1) {
                    if let Some(suffixes) = current.get(&q) {
                        let parity = (g.degree(q) % 2) as u64;
                        for &suffix in suffixes {
                            acc.insert(parity | suffix << 1);
                        }
                    }
                }
            }
            if !acc.is_empty() {
                next.insert(w, acc);
            }
        }
        current = next;
    }
    current
}

/// Inward classes of layer `j`: one class per realized profile.
pub fn inward_classes(g: &Graph, v: usize, j: usize) -> Result<Vec<ParityClass>, GraphError> {
    let layers = g.bfs_layers(v)?;
    check_connected_from(g, &layers)?;
    if j == 0 || j > layers.eccentricity() {
        return Err(GraphError::LayerOutOfRange { j, ecc: layers.eccentricity() });
    }
    let sets = inward_sets(g, &layers);
    let mut by_profile: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for &w in layers.layer(j) {
        for &a in &sets[w] {
            by_profile.entry(a).or_default().push(w);
        }
    }
    Ok(by_profile
        .into_iter()
        .map(|(a, members)| ParityClass {
            direction: Direction::Inward,
            j,
            ell: None,
            a,
            a_len: j,
            members,
        })
        .collect())
}

/// Outward classes of layer `j` with path length `ell`.
pub fn outward_classes(
    g: &Graph,
    v: usize,
    j: usize,
    ell: usize,
) -> Result<Vec<ParityClass>, GraphError> {
    let layers = g.bfs_layers(v)?;
    check_connected_from(g, &layers)?;
    if ell == 0 || j + ell > layers.eccentricity() {
        return Err(GraphError::LayerOutOfRange { j: j + ell, ecc: layers.eccentricity() });
    }
    let sets = outward_sets(g, &layers, j, ell);
    let mut by_profile: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (&w, suffixes) in &sets {
        for &a in suffixes {
            by_profile.entry(a).or_default().push(w);
        }
    }
    Ok(by_profile
        .into_iter()
        .map(|(a, members)| ParityClass {
            direction: Direction::Outward,
            j,
            ell: Some(ell),
            a,
            a_len: ell,
            members,
        })
        .collect())
}

fn find_witness(
    classes: &[ParityClass],
    w: usize,
    w2: usize,
) -> Option<Witness> {
    for class in classes {
        let has_w = class.members.contains(&w);
        let has_w2 = class.members.contains(&w2);
        if has_w != has_w2 {
            return Some(Witness {
                direction: class.direction,
                j: class.j,
                ell: class.ell,
                a: profile_string(class.a, class.a_len),
            });
        }
    }
    None
}

/// The pairwise separation hypothesis: for every layer and every pair of
/// distinct vertices in it, some inward or outward class contains exactly
/// one of the two. With `rerooted = true`, pairs the plain criterion leaves
/// unseparated are retried from vertices the plain analysis isolates
/// (distance splits or class splits at the new root); the plain verdict is
/// reported separately.
pub fn separation_check(g: &Graph, v: usize, rerooted: bool) -> Result<SeparationReport, GraphError> {
    let layers = g.bfs_layers(v)?;
    check_connected_from(g, &layers)?;
    let ecc = layers.eccentricity();
    let mut report_layers = vec![];
    let mut overall = true;
    for j in 1..=ecc {
        let layer = layers.layer(j);
        let inward = inward_classes(g, v, j)?;
        let mut outward_by_ell: Vec<Vec<ParityClass>> = vec![];
        for ell in 1..=(ecc - j) {
            outward_by_ell.push(outward_classes(g, v, j, ell)?);
        }
        let mut pairs = vec![];
        let mut all_separated = true;
        for (i, &w) in layer.iter().enumerate() {
            for &w2 in &layer[i + 1..] {
                let witness = find_witness(&inward, w, w2)
                    .or_else(|| outward_by_ell.iter().find_map(|c| find_witness(c, w, w2)));
                let separated = witness.is_some();
                all_separated &= separated;
                pairs.push(PairVerdict { pair: (w, w2), separated, witness, rerooted_witness: None });
            }
        }
        overall &= all_separated;
        report_layers.push(LayerVerdict { j, all_separated, pairs });
    }
    let mut overall_with_rerooting = overall;
    if rerooted && !overall {
        overall_with_rerooting = rerooted_pass(g, &layers, &mut report_layers)?;
    }
    Ok(SeparationReport { root: v, overall, overall_with_rerooting, layers: report_layers })
}

/// Vertices isolated by the plain analysis: alone in their layer, or
/// separated from every layer-mate. Re-rooting at such a vertex is valid
/// because the plain criterion already certifies its single-site X element.
fn plainly_isolated(layers_report: &[LayerVerdict], layers: &BfsLayers) -> Vec<usize> {
    let mut isolated = vec![];
    for j in 1..=layers.eccentricity() {
        let layer = layers.layer(j);
        if layer.len() == 1 {
            isolated.push(layer[0]);
            continue;
        }
        let verdicts = &layers_report[j - 1];
        for &w in layer {
            let alone = verdicts
                .pairs
                .iter()
                .filter(|p| p.pair.0 == w || p.pair.1 == w)
                .all(|p| p.separated);
            if alone {
                isolated.push(w);
            }
        }
    }
    isolated
}

fn rerooted_pass(
    g: &Graph,
    layers: &BfsLayers,
    report_layers: &mut [LayerVerdict],
) -> Result<bool, GraphError> {
    let isolated = plainly_isolated(report_layers, layers);
    let mut all = true;
    for verdict in report_layers.iter_mut() {
        for pair in verdict.pairs.iter_mut() {
            if pair.separated {
                continue;
            }
            let (w, w2) = pair.pair;
            for &u in &isolated {
                let ul = g.bfs_layers(u)?;
                if ul.dist[w] != ul.dist[w2] {
                    pair.rerooted_witness = Some(RerootedWitness {
                        root: u,
                        kind: RerootKind::DistanceSplit,
                    });
                    break;
                }
                // Same distance from u: try parity classes rooted at u.
                let j = ul.dist[w].expect("connected");
                let inward = inward_classes(g, u, j)?;
                let mut found = find_witness(&inward, w, w2);
                if found.is_none() {
                    for ell in 1..=(ul.eccentricity() - j) {
                        found = find_witness(&outward_classes(g, u, j, ell)?, w, w2);
                        if found.is_some() {
                            break;
                        }
                    }
                }
                if let Some(witness) = found {
                    pair.rerooted_witness = Some(RerootedWitness {
                        root: u,
                        kind: RerootKind::ClassSplit(witness),
                    });
                    break;
                }
            }
            if pair.rerooted_witness.is_none() {
                all = false;
            }
        }
    }
    Ok(all)
}

/// Acyclic-graph criterion: parity profiles along the unique root-to-leaf
/// paths must be pairwise distinct within every layer. Runs in time linear
/// in the vertex count using per-layer hash sets.
pub fn tree_check(g: &Graph, v: usize) -> Result<TreeReport, GraphError> {
    let layers = g.bfs_layers(v)?;
    check_connected_from(g, &layers)?;
    if !g.is_acyclic() {
        return Err(GraphError::Cyclic);
    }
    // unique parent profile per vertex
    let mut profile: Vec<u64> = vec![0; g.n()];
    let mut distinct = true;
    let mut profiles = vec![];
    for j in 1..=layers.eccentricity() {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        for &w in layers.layer(j) {
            let parent = g
                .neighbors(w)
                .iter()
                .copied()
                .find(|&p| layers.dist[p] == Some(j - 1))
                .expect("layered vertex has a parent");
            profile[w] = profile[parent] | ((g.degree(w) % 2) as u64) << (j - 1);
            if g.degree(w) == 1 {
                profiles.push(LeafProfile {
                    leaf: w,
                    j,
                    profile: profile_string(profile[w], j),
                });
                if !seen.insert(profile[w]) {
                    distinct = false;
                }
            }
        }
    }
    Ok(TreeReport { root: v, distinct, profiles })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The rooted tree used in the worked examples: a path of length m with
    /// side paths, root attached to vertex 1 of the path.
    pub fn v_tree(m: usize) -> (Graph, usize) {
        // path vertices 1..=m, root 0 attached to 1; each of 1..=m-3 gets a
        // pendant path of length 2; m-2 gets a single pendant edge.
        assert!(m >= 3);
        let mut edges = vec![(0, 1)];
        for i in 1..m {
            edges.push((i, i + 1));
        }
        let mut next = m + 1;
        for i in 1..=m.saturating_sub(3) {
            edges.push((i, next));
            edges.push((next, next + 1));
            next += 2;
        }
        edges.push((m - 2, next));
        let n = next + 1;
        (Graph::new(n, edges).unwrap(), 0)
    }

    #[test]
    fn v_tree_layer_shape_matches_description() {
        let (g, v) = v_tree(5);
        let layers = g.bfs_layers(v).unwrap();
        // degree parities per layer: [1], [1,0], [1,0,1] x (m-2..), [0,1,1], [1]
        let parities = |j: usize| -> Vec<usize> {
            let mut p: Vec<usize> = layers.layer(j).iter().map(|&w| g.degree(w) % 2).collect();
            p.sort_unstable();
            p
        };
        assert_eq!(layers.layer(1).len(), 1);
        assert_eq!(g.degree(layers.layer(1)[0]) % 2, 1);
        assert_eq!(parities(2), vec![0, 1]);
        for j in 3..=3 {
            assert_eq!(parities(j), vec![0, 1, 1]);
        }
        assert_eq!(parities(4), vec![0, 1, 1]);
        assert_eq!(layers.layer(5).len(), 1);
    }

    #[test]
    fn inward_class_examples() {
        // v-tree at layer 2: classes (1,1) and (1,0), singletons
        let (g, v) = v_tree(5);
        let classes = inward_classes(&g, v, 2).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.members.len() == 1));
        // K3: single class a=(0) with both neighbors
        let k3 = Graph::complete(3);
        let classes = inward_classes(&k3, 0, 1).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].a, 0);
        assert_eq!(classes[0].members, vec![1, 2]);
    }

    #[test]
    fn inward_classes_cover_layer_and_partition_for_trees() {
        for (g, v) in [(Graph::cycle(6), 0), (Graph::spider(&[2, 3]), 0), v_tree(5)] {
            let layers = g.bfs_layers(v).unwrap();
            let acyclic = g.is_acyclic();
            for j in 1..=layers.eccentricity() {
                let classes = inward_classes(&g, v, j).unwrap();
                let mut covered: BTreeSet<usize> = BTreeSet::new();
                let mut total = 0;
                for c in &classes {
                    covered.extend(c.members.iter().copied());
                    total += c.members.len();
                }
                let layer: BTreeSet<usize> = layers.layer(j).iter().copied().collect();
                assert_eq!(covered, layer, "classes cover the layer");
                if acyclic {
                    assert_eq!(total, layer.len(), "unique profiles on trees");
                }
            }
        }
    }

    #[test]
    fn outward_class_examples() {
        // path graph: any j, ell = 1 gives a singleton class
        let p5 = Graph::path(5);
        let classes = outward_classes(&p5, 0, 1, 1).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members.len(), 1);
        // out-of-range ell errors
        assert!(outward_classes(&p5, 0, 3, 5).is_err());
    }

    #[test]
    fn separation_examples() {
        let (g, v) = v_tree(5);
        let report = separation_check(&g, v, false).unwrap();
        assert!(report.overall, "singleton classes separate everything");
        let k3 = Graph::complete(3);
        let report = separation_check(&k3, 0, false).unwrap();
        assert!(!report.overall);
        assert!(!report.layers[0].all_separated);
        // star rooted at a leaf: the other leaves share profiles at layer 2
        let star = Graph::star(3);
        let report = separation_check(&star, 1, false).unwrap();
        assert!(!report.overall);
        let bad_layer = report.layers.iter().find(|l| l.j == 2).unwrap();
        assert!(!bad_layer.all_separated);
    }

    #[test]
    fn tree_check_examples() {
        let (g, v) = v_tree(5);
        assert!(tree_check(&g, v).unwrap().distinct);
        let star = Graph::star(3);
        let report = tree_check(&star, 1).unwrap();
        assert!(!report.distinct, "two leaves share the profile");
        let p4 = Graph::path(4);
        assert!(tree_check(&p4, 0).unwrap().distinct);
        assert!(tree_check(&Graph::cycle(4), 0).is_err());
    }

    #[test]
    fn disconnected_inputs_are_rejected() {
        let g = Graph::new(4, [(0, 1)]).unwrap();
        assert!(inward_classes(&g, 0, 1).is_err());
        assert!(separation_check(&g, 0, false).is_err());
        assert!(tree_check(&g, 0).is_err());
    }
}
