//! Hilbert-space structure checks: dense operators over exact complex
//! rationals, the global X-parity sector test, commutant dimension, and the
//! full special-unitary criterion for reduced graphs.

use num::{BigInt, BigRational, Zero};

use crate::closure::close;
use crate::error::GraphError;
use crate::generators::reduced_generators;
use crate::graph::Graph;
use crate::pauli::PauliString;
use crate::scalar::{rational_reconstruct, Fp, FP_P};
use crate::vector::Element;

/// Qubit budget for dense operator materialization.
pub const DENSE_MAX_N: usize = 10;
/// Qubit budget for commutant computations.
pub const COMMUTANT_MAX_N: usize = 6;

/// Exact complex rational.
#[derive(Clone, Debug, PartialEq)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn zero() -> CRat {
        CRat { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add_assign(&mut self, other: &CRat) {
        self.re += &other.re;
        self.im += &other.im;
    }

    fn mul(&self, other: &CRat) -> CRat {
        CRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    /// `i^k * self` for `k` mod 4.
    fn times_i_pow(&self, k: u8) -> CRat {
        match k % 4 {
            0 => self.clone(),
            1 => CRat { re: -self.im.clone(), im: self.re.clone() },
            2 => CRat { re: -self.re.clone(), im: -self.im.clone() },
            _ => CRat { re: self.im.clone(), im: -self.re.clone() },
        }
    }
}

/// Dense `2^n x 2^n` operator with exact entries, row-major.
pub struct DenseOperator {
    pub n: usize,
    pub entries: Vec<CRat>,
}

impl DenseOperator {
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn at(&self, row: usize, col: usize) -> &CRat {
        &self.entries[row * self.dim() + col]
    }
}

/// Matrix element `<row| P |col>`: nonzero iff `col = row xor x_mask`, with
/// value `i^{(#Y)} * (-1)^{|row & z_mask|} * (-1)^{|row & x&z... |}`;
/// computed per qubit from the letter table.
fn string_entry_phase(p: &PauliString, row: u64) -> (u64, u8) {
    // returns (col, power of i), entry = i^power
    let col = row ^ p.x_mask();
    // per qubit: I:1; X:1; Z:(-1)^bit; Y: <r|Y|c>: Y|0> = i|1>, Y|1> = -i|0>
    // so <r|Y|c> = i if r=1 (c=0), -i if r=0 (c=1)
    let mut power: u32 = 0;
    let y_mask = p.x_mask() & p.z_mask();
    let z_only = p.z_mask() & !p.x_mask();
    // Z letters: (-1)^{row bit}
    power += 2 * (row & z_only).count_ones();
    // Y letters: i^{+1} when row bit is 1, i^{-1} (=3) when 0
    let y_ones = (row & y_mask).count_ones();
    let y_zeros = (y_mask).count_ones() - y_ones;
    power += y_ones + 3 * y_zeros;
    (col, (power % 4) as u8)
}

/// Materialize `sum c_P (iP)` as a dense matrix.
pub fn to_dense(v: &Element) -> Result<DenseOperator, GraphError> {
    let n = v.n();
    if n > DENSE_MAX_N {
        return Err(GraphError::SizeBudget { n, max: DENSE_MAX_N });
    }
    let dim = 1usize << n;
    let mut entries = vec![CRat::zero(); dim * dim];
    for (p, c) in v.terms() {
        let coeff = CRat { re: c.clone(), im: BigRational::zero() };
        for row in 0..dim as u64 {
            let (col, power) = string_entry_phase(p, row);
            // global factor i on top of the string's own phase
            let value = coeff.times_i_pow(power + 1);
            entries[row as usize * dim + col as usize].add_assign(&value);
        }
    }
    Ok(DenseOperator { n, entries })
}

/// True iff every generator commutes with the global X-parity operator;
/// symbolically, every Pauli term must have an even number of Y or Z
/// factors.
pub fn parity_sector_check(generators: &[Element]) -> bool {
    generators
        .iter()
        .flat_map(|g| g.terms().iter())
        .all(|(s, _)| s.yz_weight() % 2 == 0)
}

/// Dense cross-check of the same property for a single string.
pub fn commutes_with_global_x_dense(s: &PauliString) -> Result<bool, GraphError> {
    let n = s.n();
    let tau = Element::int_term(PauliString::from_masks(n, if n == 64 { u64::MAX } else { (1 << n) - 1 }, 0), 1);
    let elem = Element::int_term(*s, 1);
    let a = to_dense(&elem)?;
    let b = to_dense(&tau)?;
    let dim = 1usize << n;
    for r in 0..dim {
        for c in 0..dim {
            let mut ab = CRat::zero();
            let mut ba = CRat::zero();
            for k in 0..dim {
                ab.add_assign(&a.at(r, k).mul(b.at(k, c)));
                ba.add_assign(&b.at(r, k).mul(a.at(k, c)));
            }
            ab.add_assign(&CRat { re: -ba.re, im: -ba.im });
            if !ab.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Complex dimension of `{M : [G_i, M] = 0 for all generators}`.
///
/// In the Pauli basis the constraint rows have real coefficients, so the
/// complex commutant dimension equals `4^n - rank` of an integer matrix.
/// The rank is found over the prime field and certified exactly: a nonzero
/// mod-p minor bounds the rank from below, and rationally reconstructed
/// null vectors are verified against the exact constraints, which bounds
/// the nullity from below and hence the rank from above.
pub fn commutant_dimension(generators: &[Element]) -> Result<usize, GraphError> {
    let n = generators.first().map(Element::n).unwrap_or(0);
    if n > COMMUTANT_MAX_N {
        return Err(GraphError::SizeBudget { n, max: COMMUTANT_MAX_N });
    }
    let cols = 1usize << (2 * n);
    // Build constraint rows: for generator G = sum c_P (iP) and each basis
    // string Q, [G, Q] = sum_P c_P * (+-2) * (iR) over anticommuting pairs.
    // Rows are indexed by (generator, result string R); entries couple the
    // unknown coefficients m_Q and are real, so the complex nullity equals
    // the rational nullity.
    let mut rows: Vec<Vec<(u32, i64)>> = vec![];
    for g in generators {
        let mut by_result_exact: std::collections::HashMap<PauliString, std::collections::HashMap<u32, BigRational>> =
            std::collections::HashMap::new();
        for q_index in 0..cols as u64 {
            let q = string_from_index(n, q_index);
            for (p, c) in g.terms() {
                if let Some((sign, r)) = p.bracket(&q).expect("same n") {
                    let slot = by_result_exact
                        .entry(r)
                        .or_default()
                        .entry(q_index as u32)
                        .or_insert_with(BigRational::zero);
                    *slot += c * BigRational::from_integer(BigInt::from(sign));
                }
            }
        }
        for (_, entries) in by_result_exact {
            let mut entries: Vec<(u32, BigRational)> =
                entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if entries.is_empty() {
                continue;
            }
            entries.sort_by_key(|&(q, _)| q);
            let mut coeffs: Vec<BigRational> = entries.iter().map(|(_, c)| c.clone()).collect();
            <BigRational as crate::scalar::Coeff>::make_primitive(&mut coeffs);
            let row: Vec<(u32, i64)> = entries
                .iter()
                .zip(coeffs)
                .map(|((q, _), c)| {
                    (*q, i64::try_from(&c.to_integer()).expect("primitive entries are small"))
                })
                .collect();
            rows.push(row);
        }
    }
    let rank = certified_rank(&rows, cols)?;
    Ok(cols - rank)
}

fn string_from_index(n: usize, index: u64) -> PauliString {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    PauliString::from_masks(n, index & mask, (index >> n) & mask)
}

/// Exact rank of a sparse integer matrix via mod-p echelon with certified
/// bounds: the mod-p rank is a lower bound, and verified exact null vectors
/// certify the nullity, hence the upper bound. Retries with the exact
/// rational echelon in the (never observed) event the two disagree.
fn certified_rank(rows: &[Vec<(u32, i64)>], cols: usize) -> Result<usize, GraphError> {
    // mod-p echelon with recorded transformation for null-space extraction
    let rank_p = {
        let mut echelon: Vec<Vec<(u32, Fp)>> = vec![];
        let mut pivots: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();
        for row in rows {
            let mut work: std::collections::BTreeMap<u32, Fp> = row
                .iter()
                .map(|&(q, c)| (q, Fp::fp_from_i64(c)))
                .collect();
            loop {
                let (&col, &val) = match work.iter().next() {
                    Some(kv) => kv,
                    None => break,
                };
                debug_assert!(!val.fp_is_zero());
                match pivots.get(&col) {
                    Some(&idx) => {
                        let factor = val.fp_mul(echelon[idx][0].1.inverse());
                        for &(c2, v2) in &echelon[idx] {
                            let delta = factor.fp_mul(v2);
                            let e = work.entry(c2).or_insert(Fp(0));
                            *e = e.fp_sub(delta);
                            if e.fp_is_zero() {
                                work.remove(&c2);
                            }
                        }
                    }
                    None => {
                        let entries: Vec<(u32, Fp)> = work.into_iter().collect();
                        pivots.insert(col, echelon.len());
                        echelon.push(entries);
                        break;
                    }
                }
            }
        }
        echelon.len()
    };
    // Certify: nullity >= cols - rank_p via reconstructed null vectors.
    // The mod-p null space has dimension cols - rank_p; reconstruct a basis
    // and verify each vector against the exact integer rows.
    let nullity_ok = verify_null_space(rows, cols, cols - rank_p)?;
    if nullity_ok {
        Ok(rank_p)
    } else {
        Err(GraphError::Invalid(
            "commutant rank certification failed; modulus was unlucky".into(),
        ))
    }
}

/// Reconstruct the mod-p null space and verify each basis vector exactly.
fn verify_null_space(rows: &[Vec<(u32, i64)>], cols: usize, expected: usize) -> Result<bool, GraphError> {
    // RREF mod p over the columns.
    let mut echelon: Vec<std::collections::BTreeMap<u32, Fp>> = vec![];
    for row in rows {
        let mut work: std::collections::BTreeMap<u32, Fp> = row
            .iter()
            .map(|&(q, c)| (q, Fp::fp_from_i64(c)))
            .collect();
        loop {
            let first = work.iter().next().map(|(&c, &v)| (c, v));
            let (col, val) = match first {
                Some(kv) => kv,
                None => break,
            };
            if let Some(idx) = echelon.iter().position(|r| r.keys().next() == Some(&col)) {
                let pivot_val = *echelon[idx].values().next().unwrap();
                let factor = val.fp_mul(pivot_val.inverse());
                let entries: Vec<(u32, Fp)> = echelon[idx].iter().map(|(&c, &v)| (c, v)).collect();
                for (c2, v2) in entries {
                    let delta = factor.fp_mul(v2);
                    let e = work.entry(c2).or_insert(Fp(0));
                    *e = e.fp_sub(delta);
                    if e.fp_is_zero() {
                        work.remove(&c2);
                    }
                }
            } else {
                echelon.push(work);
                break;
            }
        }
    }
    // full reduction to RREF
    echelon.sort_by_key(|r| *r.keys().next().unwrap());
    for i in (0..echelon.len()).rev() {
        let inv = echelon[i].values().next().unwrap().inverse();
        let normalized: std::collections::BTreeMap<u32, Fp> =
            echelon[i].iter().map(|(&c, v)| (c, v.fp_mul(inv))).collect();
        echelon[i] = normalized;
        let pivot = *echelon[i].keys().next().unwrap();
        for j in 0..i {
            if let Some(&coeff) = echelon[j].get(&pivot) {
                let entries: Vec<(u32, Fp)> = echelon[i].iter().map(|(&c, &v)| (c, v)).collect();
                for (c2, v2) in entries {
                    let delta = coeff.fp_mul(v2);
                    let e = echelon[j].entry(c2).or_insert(Fp(0));
                    *e = e.fp_sub(delta);
                    if e.fp_is_zero() {
                        echelon[j].remove(&c2);
                    }
                }
            }
        }
    }
    let pivot_cols: std::collections::BTreeSet<u32> =
        echelon.iter().map(|r| *r.keys().next().unwrap()).collect();
    let free_cols: Vec<u32> = (0..cols as u32).filter(|c| !pivot_cols.contains(c)).collect();
    if free_cols.len() != expected {
        return Ok(false);
    }
    // Null vector per free column: x_free = 1, pivot entries from RREF.
    let bound = 1u64 << 30;
    for &f in &free_cols {
        let mut dense: std::collections::HashMap<u32, (i64, u64)> = std::collections::HashMap::new();
        dense.insert(f, (1, 1));
        for r in &echelon {
            let pivot = *r.keys().next().unwrap();
            if let Some(v) = r.get(&f) {
                // pivot entry = -v (pivot coefficient 1 after RREF)
                let neg = v.fp_neg();
                let (num, den) = rational_reconstruct(neg.value(), FP_P, bound)
                    .ok_or_else(|| GraphError::Invalid("null-space reconstruction failed".into()))?;
                if num != 0 {
                    dense.insert(pivot, (num, den));
                }
            }
        }
        // verify exactly over rationals: each constraint row annihilates it
        for row in rows {
            let mut acc = BigRational::zero();
            for &(q, c) in row {
                if let Some(&(num, den)) = dense.get(&q) {
                    acc += BigRational::new(BigInt::from(c) * BigInt::from(num), BigInt::from(den));
                }
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verdict of the full special-unitary criterion at `(g, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FullSuVerdict {
    /// The reduced graph fails the hypothesis (disconnected, bipartite, or
    /// a cycle).
    HypothesisFails(&'static str),
    /// Hypothesis holds and the closure reached the full dimension.
    HoldsVerified { dimension: usize },
    /// Hypothesis holds and the closure found a smaller dimension.
    HoldsRefuted { dimension: usize, expected: usize },
    /// Hypothesis holds but the instance exceeds the closure budget.
    HoldsUnverified,
}

/// Check the hypothesis that the reduced graph is connected and neither
/// bipartite nor a cycle; when it holds at checkable size, cross-check the
/// free reduced closure against `4^{n-1} - 1`.
pub fn full_su_criterion(g: &Graph, v: usize) -> Result<FullSuVerdict, GraphError> {
    g.check_vertex(v)?;
    let (reduced, _map) = compact_without(g, v);
    if reduced.n() == 0 || !reduced.is_connected() {
        return Ok(FullSuVerdict::HypothesisFails("reduced graph disconnected"));
    }
    if reduced.is_bipartite() {
        return Ok(FullSuVerdict::HypothesisFails("reduced graph bipartite"));
    }
    if reduced.is_cycle() {
        return Ok(FullSuVerdict::HypothesisFails("reduced graph is a cycle"));
    }
    let active = g.n() - 1;
    if active > COMMUTANT_MAX_N {
        return Ok(FullSuVerdict::HoldsUnverified);
    }
    let gens = reduced_generators(g, v, true)?;
    let (basis, _) = close(&gens, None).map_err(|e| GraphError::Invalid(e.to_string()))?;
    let expected = (1usize << (2 * active)) - 1;
    if basis.dimension() == expected {
        Ok(FullSuVerdict::HoldsVerified { dimension: expected })
    } else {
        Ok(FullSuVerdict::HoldsRefuted { dimension: basis.dimension(), expected })
    }
}

/// The reduced graph with `v` removed and the remaining ids compacted;
/// returns the new graph and the new-to-old id map.
pub fn compact_without(g: &Graph, v: usize) -> (Graph, Vec<usize>) {
    let keep: Vec<usize> = (0..g.n()).filter(|&w| w != v).collect();
    let old_to_new: std::collections::HashMap<usize, usize> =
        keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let edges = g
        .edges()
        .iter()
        .filter(|&&(a, b)| a != v && b != v)
        .map(|&(a, b)| (old_to_new[&a], old_to_new[&b]));
    (Graph::new(keep.len(), edges).unwrap(), keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::free_generators;
    use crate::pauli::PauliLetter;
    use num::One;

    #[test]
    fn to_dense_examples() {
        // iZ on 1 qubit = diag(i, -i)
        let z = Element::int_term(PauliString::single(1, 0, PauliLetter::Z), 1);
        let m = to_dense(&z).unwrap();
        assert_eq!(m.at(0, 0), &CRat { re: BigRational::zero(), im: BigRational::one() });
        assert_eq!(m.at(1, 1), &CRat { re: BigRational::zero(), im: -BigRational::one() });
        assert!(m.at(0, 1).is_zero());
        // iX antidiagonal(i, i)
        let x = Element::int_term(PauliString::single(1, 0, PauliLetter::X), 1);
        let m = to_dense(&x).unwrap();
        assert_eq!(m.at(0, 1), &CRat { re: BigRational::zero(), im: BigRational::one() });
        assert_eq!(m.at(1, 0), &CRat { re: BigRational::zero(), im: BigRational::one() });
        // iY: Y|0> = i|1>: <1|Y|0> = i: entry (1,0) of iY = i*i = -1
        let y = Element::int_term(PauliString::single(1, 0, PauliLetter::Y), 1);
        let m = to_dense(&y).unwrap();
        assert_eq!(m.at(1, 0), &CRat { re: -BigRational::one(), im: BigRational::zero() });
        assert_eq!(m.at(0, 1), &CRat { re: BigRational::one(), im: BigRational::zero() });
        // zero vector -> zero matrix
        let m = to_dense(&Element::zero(2)).unwrap();
        assert!(m.entries.iter().all(CRat::is_zero));
    }

    #[test]
    fn parity_sector_examples() {
        let g = Graph::cycle(4);
        assert!(parity_sector_check(&free_generators(&g)));
        let z1 = Element::int_term(PauliString::single(2, 1, PauliLetter::Z), 1);
        assert!(!parity_sector_check(&[z1]));
        let reduced_free = reduced_generators(&g, 0, true).unwrap();
        assert!(!parity_sector_check(&reduced_free));
    }

    #[test]
    fn symbolic_and_dense_tau_commutation_agree() {
        let mut stream = crate::rng::Stream::from_key(&[11]);
        for _ in 0..20 {
            let n = 1 + (stream.next_below(3) as usize);
            let x = stream.next_below(1 << n) as u64;
            let z = stream.next_below(1 << n) as u64;
            let s = PauliString::from_masks(n, x, z);
            let symbolic = s.yz_weight() % 2 == 0;
            assert_eq!(symbolic, commutes_with_global_x_dense(&s).unwrap());
        }
    }

    #[test]
    fn commutant_dimension_examples() {
        // free DLA of P2: two parity blocks -> commutant dim 2
        let g = Graph::path(2);
        assert_eq!(commutant_dimension(&free_generators(&g)).unwrap(), 2);
        // free reduced of K3 at 0 on the compacted space: irreducible
        let k3 = Graph::complete(3);
        let (gens, _) = crate::generators::reduced_generators_compact(&k3, 0, true).unwrap();
        assert_eq!(commutant_dimension(&gens).unwrap(), 1);
        // with the idle qubit kept, the commutant gains its full u(2)
        let gens_idle = reduced_generators(&k3, 0, true).unwrap();
        assert_eq!(commutant_dimension(&gens_idle).unwrap(), 4);
        // identity-only degenerate input: full commutant
        let ident = Element::int_term(PauliString::identity(2), 1);
        assert_eq!(commutant_dimension(&[ident]).unwrap(), 16);
    }

    #[test]
    fn full_su_examples() {
        // K4 at any vertex: reduced graph K3 is a cycle
        let k4 = Graph::complete(4);
        assert!(matches!(
            full_su_criterion(&k4, 0).unwrap(),
            FullSuVerdict::HypothesisFails(_)
        ));
        // paw + apex: reduced graph is the paw (archetypal)
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (0, 4)]).unwrap();
        match full_su_criterion(&g, 4).unwrap() {
            FullSuVerdict::HoldsVerified { dimension } => assert_eq!(dimension, 255),
            v => panic!("unexpected verdict {v:?}"),
        }
    }
}
