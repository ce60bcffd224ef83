//! Generator sets for every QAOA/DLA variant and the distinguished elements
//! used by the containment checks.

use num::BigRational;

use crate::error::GraphError;
use crate::graph::Graph;
use crate::pauli::{PauliLetter, PauliString};
use crate::vector::Element;

/// Qubit budget for the dense Pauli expansion of Grover projectors.
pub const GROVER_MAX_N: usize = 6;

/// Which dynamical Lie algebra a generator set describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DlaVariant {
    Standard,
    Free,
    StandardReduced { v: usize },
    FreeReduced { v: usize },
    /// Grover-mixer QAOA: projector mixer plus the cut-counting problem
    /// Hamiltonian.
    GroverMixer,
    /// Grover search: X mixer plus the rank-one projector on `marked`.
    GroverSearch { marked: u64 },
    /// Bit-reduced Grover search at qubit `v`.
    GroverSearchReduced { marked: u64, v: usize },
}

/// A named element whose membership in some DLA is asserted by structure
/// results; `label` records which family it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct DistinguishedElement {
    pub label: DistinguishedLabel,
    pub vector: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinguishedLabel {
    /// `i * sum of X over the distance-k layer from v`.
    XLayer { k: usize },
    /// `i * sum of Z over neighbors of v`.
    ZHat1,
    /// `i * sum of ZZ over edges avoiding v`.
    ZHat2,
    /// Degree-parity split of the mixer: X over even-degree vertices.
    XEven,
    XOdd,
    /// Degree-parity split of the problem term by endpoint classes.
    ZEvenOdd,
    ZEvenEven,
    ZOddOdd,
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

fn all_vertices_mask(g: &Graph) -> u64 {
    if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    }
}

/// Standard generators: `X = i sum_w X_w`, `Z = i sum_{(w,w')} Z_w Z_w'`.
/// The `Z` element is the zero vector for edgeless graphs (rejected
/// downstream by closure seeding).
pub fn standard_generators(g: &Graph) -> [Element; 2] {
    let n = g.n();
    [
        Element::letter_sum(n, all_vertices_mask(g), PauliLetter::X),
        Element::zz_sum(n, g.edges().iter().copied()),
    ]
}

/// Free generators: each mixer and problem term individually.
pub fn free_generators(g: &Graph) -> Vec<Element> {
    let n = g.n();
    let mut gens: Vec<Element> = (0..n)
        .map(|w| Element::int_term(PauliString::single(n, w, PauliLetter::X), 1))
        .collect();
    gens.extend(g.edges().iter().map(|&(u, v)| Element::zz_sum(n, [(u, v)])));
    gens
}

/// Reduced generators at `v`. Vertex ids are preserved, so the elements act
/// on the original qubit indices with qubit `v` idle.
pub fn reduced_generators(g: &Graph, v: usize, free: bool) -> Result<Vec<Element>, GraphError> {
    g.check_vertex(v)?;
    let n = g.n();
    let rest = all_vertices_mask(g) & !(1u64 << v);
    let reduced_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| a != v && b != v)
        .collect();
    if free {
        let mut gens: Vec<Element> = (0..n)
            .filter(|&w| w != v)
            .map(|w| Element::int_term(PauliString::single(n, w, PauliLetter::X), 1))
            .collect();
        gens.extend(reduced_edges.iter().map(|&(a, b)| Element::zz_sum(n, [(a, b)])));
        gens.extend(
            g.neighbors(v)
                .iter()
                .map(|&w| Element::int_term(PauliString::single(n, w, PauliLetter::Z), 1)),
        );
        Ok(gens)
    } else {
        let mixer = Element::letter_sum(n, rest, PauliLetter::X);
        let mut problem = Element::zz_sum(n, reduced_edges);
        for &w in g.neighbors(v) {
            problem = problem
                .scale_add(&one(), &Element::int_term(PauliString::single(n, w, PauliLetter::Z), 1))
                .expect("same qubit count");
        }
        Ok(vec![mixer, problem])
    }
}

/// The uniform-superposition projector `|+..+><+..+|` expanded over X-type
/// strings: `2^{-n} * sum over all subsets S of X_S` (identity included).
fn plus_projector(n: usize) -> Element {
    let denom = BigRational::new(1.into(), num::BigInt::from(1u64 << n));
    Element::from_terms(
        n,
        (0..(1u64 << n)).map(|mask| (PauliString::from_masks(n, mask, 0), denom.clone())),
    )
}

/// Rank-one projector `|omega><omega|` expanded over Z-type strings:
/// `2^{-n} * sum_S (-1)^{|omega & S|} Z_S`.
fn basis_projector(n: usize, omega: u64) -> Element {
    let denom = BigRational::new(1.into(), num::BigInt::from(1u64 << n));
    Element::from_terms(
        n,
        (0..(1u64 << n)).map(|mask| {
            let sign = if (mask & omega).count_ones() % 2 == 0 { 1 } else { -1 };
            (
                PauliString::from_masks(n, 0, mask),
                &denom * BigRational::from_integer(sign.into()),
            )
        }),
    )
}

/// The cut-counting problem Hamiltonian of the stated objective:
/// `sum_{(u,v)} (I - Z_u Z_v) / 2`, identity component retained.
fn cut_hamiltonian(g: &Graph) -> Element {
    let n = g.n();
    let half = BigRational::new(1.into(), 2.into());
    let mut terms: Vec<(PauliString, BigRational)> = vec![(
        PauliString::identity(n),
        &half * BigRational::from_integer((g.edge_count() as i64).into()),
    )];
    for &(u, v) in g.edges() {
        terms.push((PauliString::zz(n, u, v), -&half));
    }
    Element::from_terms(n, terms)
}

/// Grover-mixer generators: the projector mixer and the cut Hamiltonian.
/// Identity components are retained as stored terms; they commute with
/// everything and contribute the central pieces counted by the closure.
pub fn grover_mixer_generators(g: &Graph) -> Result<[Element; 2], GraphError> {
    if g.n() > GROVER_MAX_N {
        return Err(GraphError::SizeBudget { n: g.n(), max: GROVER_MAX_N });
    }
    Ok([plus_projector(g.n()), cut_hamiltonian(g)])
}

/// Grover-search generators on `n` qubits: the X mixer and `|omega><omega|`.
pub fn grover_search_generators(n: usize, omega: u64) -> Result<[Element; 2], GraphError> {
    if n > GROVER_MAX_N {
        return Err(GraphError::SizeBudget { n, max: GROVER_MAX_N });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok([
        Element::letter_sum(n, all, PauliLetter::X),
        basis_projector(n, omega & all),
    ])
}

/// Bit-reduced Grover-search generators: fixing bit `v` replaces `Z_v` by
/// the identity, which leaves the rank-one projector on the remaining bits.
/// Qubit ids are preserved (qubit `v` idles).
pub fn grover_search_reduced_generators(
    n: usize,
    omega: u64,
    v: usize,
) -> Result<[Element; 2], GraphError> {
    if n > GROVER_MAX_N {
        return Err(GraphError::SizeBudget { n, max: GROVER_MAX_N });
    }
    if v >= n {
        return Err(GraphError::VertexOutOfRange { vertex: v, n });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rest = all & !(1u64 << v);
    let denom = BigRational::new(1.into(), num::BigInt::from(1u64 << (n - 1)));
    let mut terms = vec![];
    let mut sub = 0u64;
    loop {
        let sign = if (sub & omega).count_ones() % 2 == 0 { 1 } else { -1 };
        terms.push((
            PauliString::from_masks(n, 0, sub),
            &denom * BigRational::from_integer(sign.into()),
        ));
        if sub == rest {
            break;
        }
        sub = sub.wrapping_sub(rest) & rest;
    }
    Ok([Element::letter_sum(n, rest, PauliLetter::X), Element::from_terms(n, terms)])
}

/// Reduced generators rebuilt on the compacted `n-1`-qubit space (vertex
/// `v` removed, remaining ids renumbered in order). Used where the reduced
/// Hilbert space itself matters (commutants, simulators); the id-preserving
/// [`reduced_generators`] is used for membership tests against full-space
/// algebras. Returns the generators and the new-to-old id map.
pub fn reduced_generators_compact(
    g: &Graph,
    v: usize,
    free: bool,
) -> Result<(Vec<Element>, Vec<usize>), GraphError> {
    g.check_vertex(v)?;
    let keep: Vec<usize> = (0..g.n()).filter(|&w| w != v).collect();
    let old_to_new: std::collections::HashMap<usize, usize> =
        keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let m = keep.len();
    let reduced_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(a, b)| a != v && b != v)
        .map(|&(a, b)| (old_to_new[&a], old_to_new[&b]))
        .collect();
    let neighbors: Vec<usize> = g.neighbors(v).iter().map(|w| old_to_new[w]).collect();
    let gens = if free {
        let mut gens: Vec<Element> = (0..m)
            .map(|w| Element::int_term(PauliString::single(m, w, PauliLetter::X), 1))
            .collect();
        gens.extend(reduced_edges.iter().map(|&(a, b)| Element::zz_sum(m, [(a, b)])));
        gens.extend(
            neighbors
                .iter()
                .map(|&w| Element::int_term(PauliString::single(m, w, PauliLetter::Z), 1)),
        );
        gens
    } else {
        let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mixer = Element::letter_sum(m, all, PauliLetter::X);
        let mut problem = Element::zz_sum(m, reduced_edges);
        for &w in &neighbors {
            problem = problem
                .scale_add(&one(), &Element::int_term(PauliString::single(m, w, PauliLetter::Z), 1))
                .expect("same qubit count");
        }
        vec![mixer, problem]
    };
    Ok((gens, keep))
}

/// Generator set for any variant. Zero generators (edgeless graphs, isolated
/// reductions) are filtered; the returned flag reports whether any were
/// dropped so callers can surface a warning.
pub fn generators_for(
    g: &Graph,
    variant: &DlaVariant,
) -> Result<(Vec<Element>, bool), GraphError> {
    let raw: Vec<Element> = match variant {
        DlaVariant::Standard => standard_generators(g).to_vec(),
        DlaVariant::Free => free_generators(g),
        DlaVariant::StandardReduced { v } => reduced_generators(g, *v, false)?,
        DlaVariant::FreeReduced { v } => reduced_generators(g, *v, true)?,
        DlaVariant::GroverMixer => grover_mixer_generators(g)?.to_vec(),
        DlaVariant::GroverSearch { marked } => grover_search_generators(g.n(), *marked)?.to_vec(),
        DlaVariant::GroverSearchReduced { marked, v } => {
            grover_search_reduced_generators(g.n(), *marked, *v)?.to_vec()
        }
    };
    let total = raw.len();
    let gens: Vec<Element> = raw.into_iter().filter(|e| !e.is_zero()).collect();
    let dropped = gens.len() < total;
    Ok((gens, dropped))
}

/// The layer element `i * sum_{w in N_{v,k}} X_w`.
pub fn x_layer(g: &Graph, v: usize, k: usize) -> Result<Element, GraphError> {
    let layers = g.bfs_layers(v)?;
    if k > layers.eccentricity() {
        return Err(GraphError::LayerOutOfRange { j: k, ecc: layers.eccentricity() });
    }
    let mut mask = 0u64;
    for &w in layers.layer(k) {
        mask |= 1 << w;
    }
    Ok(Element::letter_sum(g.n(), mask, PauliLetter::X))
}

/// All distinguished elements for `(g, v)`: the distance-layer X sums, the
/// two Z-splitting elements, and the degree-parity splits of the standard
/// generators (which need no `v`).
pub fn distinguished_elements(g: &Graph, v: usize) -> Result<Vec<DistinguishedElement>, GraphError> {
    g.check_vertex(v)?;
    let n = g.n();
    let layers = g.bfs_layers(v)?;
    let mut out = vec![];
    for k in 1..=layers.eccentricity() {
        out.push(DistinguishedElement {
            label: DistinguishedLabel::XLayer { k },
            vector: x_layer(g, v, k)?,
        });
    }
    let mut nbr_mask = 0u64;
    for &w in g.neighbors(v) {
        nbr_mask |= 1 << w;
    }
    out.push(DistinguishedElement {
        label: DistinguishedLabel::ZHat1,
        vector: Element::letter_sum(n, nbr_mask, PauliLetter::Z),
    });
    out.push(DistinguishedElement {
        label: DistinguishedLabel::ZHat2,
        vector: Element::zz_sum(
            n,
            g.edges().iter().copied().filter(|&(a, b)| a != v && b != v),
        ),
    });
    out.extend(parity_split_elements(g));
    Ok(out)
}

/// Degree-parity splits of the standard generators: X restricted to even /
/// odd degree vertices, Z restricted to the three endpoint-parity classes.
pub fn parity_split_elements(g: &Graph) -> Vec<DistinguishedElement> {
    let n = g.n();
    let mut even_mask = 0u64;
    let mut odd_mask = 0u64;
    for w in 0..n {
        if g.degree(w) % 2 == 0 {
            even_mask |= 1 << w;
        } else {
            odd_mask |= 1 << w;
        }
    }
    let edge_class = |want: (bool, bool)| -> Element {
        Element::zz_sum(
            n,
            g.edges().iter().copied().filter(|&(a, b)| {
                let pa = g.degree(a) % 2 == 0;
                let pb = g.degree(b) % 2 == 0;
                (pa, pb) == want || (pb, pa) == want
            }),
        )
    };
    vec![
        DistinguishedElement {
            label: DistinguishedLabel::XEven,
            vector: Element::letter_sum(n, even_mask, PauliLetter::X),
        },
        DistinguishedElement {
            label: DistinguishedLabel::XOdd,
            vector: Element::letter_sum(n, odd_mask, PauliLetter::X),
        },
        DistinguishedElement {
            label: DistinguishedLabel::ZEvenOdd,
            vector: edge_class((true, false)),
        },
        DistinguishedElement {
            label: DistinguishedLabel::ZEvenEven,
            vector: edge_class((true, true)),
        },
        DistinguishedElement {
            label: DistinguishedLabel::ZOddOdd,
            vector: edge_class((false, false)),
        },
    ]
}
