//! Exact algebraic identities of the standard generators: iterated adjoint
//! formulas, the cubic mixer relation, and the balance eigenvalue identity.

use num::{BigInt, BigRational, Zero};

use dla_core::corpus::random_connected_graph;
use dla_core::generators::standard_generators;
use dla_core::graph::Graph;
use dla_core::pauli::PauliString;
use dla_core::rng::Stream;
use dla_core::vector::Element;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `ad_A^k(B)`.
fn ad_pow(a: &Element, k: usize, b: &Element) -> Element {
    let mut acc = b.clone();
    for _ in 0..k {
        acc = a.bracket(&acc).unwrap();
    }
    acc
}

/// Symbolic expansion of `(sum_{w in mask} Z_w)^k` as a map z-mask -> coeff.
fn z_sum_power(mask: u64, k: usize) -> std::collections::HashMap<u64, i64> {
    let mut poly = std::collections::HashMap::from([(0u64, 1i64)]);
    for _ in 0..k {
        let mut next: std::collections::HashMap<u64, i64> = std::collections::HashMap::new();
        for (&m, &c) in &poly {
            for w in 0..64 {
                if mask >> w & 1 == 1 {
                    *next.entry(m ^ (1 << w)).or_insert(0) += c;
                }
            }
        }
        next.retain(|_, c| *c != 0);
        poly = next;
    }
    poly
}

/// The closed form `(-1)^{ceil(k/2)} 2^k i sum_v L_v (sum_{w in N(v)} Z_w)^k`
/// with `L` the letter `Y` (odd k) or `X` (even k): the adjoint alternation
/// maps `Y -> X` with factor `+2` and `X -> Y` with factor `-2`, so the sign
/// has period four in `k`.
fn ad_z_closed_form(g: &Graph, k: usize) -> Element {
    let n = g.n();
    let mut terms: Vec<(PauliString, BigRational)> = vec![];
    let sign = if k.div_ceil(2) % 2 == 1 { -1 } else { 1 };
    let scale = sign * 2i64.pow(k as u32);
    for v in 0..n {
        let mut nbr_mask = 0u64;
        for &w in g.neighbors(v) {
            nbr_mask |= 1 << w;
        }
        let poly = z_sum_power(nbr_mask, k);
        for (&z_part, &c) in &poly {
            // letter at v: Y for odd k, X for even k
            let x_mask = 1u64 << v;
            let z_mask = if k % 2 == 1 { z_part | (1 << v) } else { z_part };
            terms.push((PauliString::from_masks(n, x_mask, z_mask), rat(scale * c)));
        }
    }
    Element::from_terms(n, terms)
}

#[test]
fn ad_z_powers_match_closed_form() {
    let mut stream = Stream::from_key(&[2024, 1]);
    let mut graphs: Vec<Graph> = vec![Graph::path(2), Graph::complete(3), Graph::star(3)];
    for _ in 0..6 {
        graphs.push(random_connected_graph(5, 0.5, &mut stream));
    }
    for g in &graphs {
        let [x, z] = standard_generators(g);
        for k in 1..=4usize {
            let lhs = ad_pow(&z, k, &x);
            let rhs = ad_z_closed_form(g, k);
            assert_eq!(lhs, rhs, "ad_Z^{k}(X) closed form on {g:?}");
        }
    }
}

#[test]
fn cubic_mixer_relation_on_100_random_graphs() {
    // ad_X^3(Z) + 16 ad_X(Z) = 0, exactly.
    let mut stream = Stream::from_key(&[2024, 2]);
    for trial in 0..100 {
        let n = 2 + (stream.next_below(7) as usize); // up to 8 vertices
        let g = random_connected_graph(n, 0.3 + 0.5 * stream.next_f64(), &mut stream);
        let [x, z] = standard_generators(&g);
        if z.is_zero() {
            continue;
        }
        let lhs = ad_pow(&x, 3, &z).scale_add(&rat(16), &ad_pow(&x, 1, &z)).unwrap();
        assert!(lhs.is_zero(), "trial {trial} on {g:?}");
    }
}

#[test]
fn bracket_antisymmetry_and_jacobi_randomized() {
    let mut stream = Stream::from_key(&[2024, 3]);
    let random_vector = |stream: &mut Stream, n: usize| -> Element {
        let terms = 1 + stream.next_below(4) as usize;
        Element::from_terms(
            n,
            (0..terms).map(|_| {
                let x = stream.next_below(1 << n);
                let z = stream.next_below(1 << n);
                let c = stream.next_below(9) as i64 - 4;
                (PauliString::from_masks(n, x, z), rat(c))
            }),
        )
    };
    for _ in 0..1000 {
        let n = 1 + stream.next_below(8) as usize;
        let a = random_vector(&mut stream, n);
        let b = random_vector(&mut stream, n);
        let c = random_vector(&mut stream, n);
        let ab = a.bracket(&b).unwrap();
        let ba = b.bracket(&a).unwrap();
        assert!(ab.scale_add(&rat(1), &ba).unwrap().is_zero(), "antisymmetry");
        let jacobi = a
            .bracket(&b.bracket(&c).unwrap())
            .unwrap()
            .scale_add(&rat(1), &b.bracket(&c.bracket(&a).unwrap()).unwrap())
            .unwrap()
            .scale_add(&rat(1), &c.bracket(&a.bracket(&b).unwrap()).unwrap())
            .unwrap();
        assert!(jacobi.is_zero(), "jacobi");
    }
}

/// Balance of `b` on the index set `mask`: zeros minus ones.
fn balance(b: u64, mask: u64) -> i64 {
    let ones = (b & mask).count_ones() as i64;
    let total = mask.count_ones() as i64;
    (total - ones) - ones
}

#[test]
fn balance_eigenvalue_identity_densely() {
    // (Z_{i1} + .. + Z_{im})^k |b> = Bal(b)^k |b>, all b, n <= 5, k <= 4
    let mut stream = Stream::from_key(&[2024, 4]);
    for n in 1..=5usize {
        for k in 0..=4usize {
            for _ in 0..4 {
                let mask = stream.next_below(1 << n).max(1);
                let poly = z_sum_power(mask, k);
                for b in 0..(1u64 << n) {
                    // diagonal action: sum of c_S * (-1)^{|b & S|}
                    let mut value = BigInt::zero();
                    for (&s, &c) in &poly {
                        let sign = if (b & s).count_ones() % 2 == 0 { 1 } else { -1 };
                        value += BigInt::from(c * sign);
                    }
                    let expect = BigInt::from(balance(b, mask).pow(k as u32));
                    assert_eq!(value, expect, "n={n} k={k} mask={mask:b} b={b:b}");
                }
            }
        }
    }
}
