//! Sparse exact linear combinations `sum_P c_P * (iP)` of skew-Hermitian
//! Pauli basis elements.
//!
//! Terms are kept sorted by the canonical `(z_mask, x_mask)` key and never
//! store zero coefficients. Coefficients are exact; the public alias
//! [`crate::Element`] uses arbitrary-precision rationals.

use std::collections::HashMap;
use std::fmt;

use num::{BigRational, One};

use crate::error::PauliError;
use crate::pauli::{PauliLetter, PauliString};
use crate::scalar::Coeff;

/// A sparse vector over the `{iP}` basis with exact coefficients.
#[derive(Clone, PartialEq)]
pub struct PauliVector<C: Coeff> {
    n: usize,
    /// Sorted by `PauliString::key()`, no zero coefficients.
    terms: Vec<(PauliString, C)>,
}

impl<C: Coeff> PauliVector<C> {
    /// The zero vector on `n` qubits.
    pub fn zero(n: usize) -> Self {
        PauliVector { n, terms: vec![] }
    }

    /// A single basis element `c * (iP)`.
    pub fn term(string: PauliString, coeff: C) -> Self {
        let n = string.n();
        if coeff.is_zero() {
            return PauliVector::zero(n);
        }
        PauliVector {
            n,
            terms: vec![(string, coeff)],
        }
    }

    /// Build from arbitrary (string, coefficient) pairs, combining duplicates.
    pub fn from_terms(n: usize, pairs: impl IntoIterator<Item = (PauliString, C)>) -> Self {
        let mut map: HashMap<PauliString, C> = HashMap::new();
        for (s, c) in pairs {
            assert_eq!(s.n(), n, "term qubit count mismatch");
            match map.entry(s) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let v = e.get().add(&c);
                    if v.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = v;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(PauliString, C)> = map.into_iter().collect();
        terms.sort_by_key(|(s, _)| s.key());
        PauliVector { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical key order.
    pub fn terms(&self) -> &[(PauliString, C)] {
        &self.terms
    }

    /// The lexicographically smallest Pauli key with nonzero coefficient.
    pub fn pivot(&self) -> Option<&PauliString> {
        self.terms.first().map(|(s, _)| s)
    }

    pub fn coeff_of(&self, s: &PauliString) -> Option<&C> {
        self.terms
            .binary_search_by_key(&s.key(), |(t, _)| t.key())
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// True iff any term touches the identity string (trace component).
    pub fn has_identity_component(&self) -> bool {
        self.terms.first().map_or(false, |(s, _)| s.is_identity())
    }

    /// `self + c * other`, dropping cancelled terms.
    pub fn scale_add(&self, c: &C, other: &PauliVector<C>) -> Result<PauliVector<C>, PauliError> {
        if self.n != other.n {
            return Err(PauliError::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if c.is_zero() || other.is_zero() {
            return Ok(self.clone());
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &other.terms[j];
            match a.key().cmp(&b.key()) {
                std::cmp::Ordering::Less => {
                    out.push((*a, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*b, c.mul(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = ca.add(&c.mul(cb));
                    if !v.is_zero() {
                        out.push((*a, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(b, cb)| (*b, c.mul(cb))));
        Ok(PauliVector { n: self.n, terms: out })
    }

    /// Multiply every coefficient by `c`.
    pub fn scaled(&self, c: &C) -> PauliVector<C> {
        if c.is_zero() {
            return PauliVector::zero(self.n);
        }
        PauliVector {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(s, v)| (*s, v.mul(c)))
                .collect(),
        }
    }

    /// Lie bracket `[u, v]`, the bilinear extension of the string bracket.
    pub fn bracket(&self, other: &PauliVector<C>) -> Result<PauliVector<C>, PauliError> {
        if self.n != other.n {
            return Err(PauliError::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut acc: HashMap<PauliString, C> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((sign, s)) = a.bracket(b)? {
                    let w = ca.mul(cb).mul(&C::from_i64(sign as i64));
                    match acc.entry(s) {
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            let v = e.get().add(&w);
                            if v.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = v;
                            }
                        }
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(w);
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(PauliString, C)> = acc.into_iter().collect();
        terms.sort_by_key(|(s, _)| s.key());
        Ok(PauliVector { n: self.n, terms })
    }

    /// Canonical primitive form: coefficients rescaled to coprime integers
    /// with the pivot coefficient positive. Idempotent.
    pub fn canonical_primitive(&self) -> Result<PauliVector<C>, PauliError> {
        if self.is_zero() {
            return Err(PauliError::ZeroVector);
        }
        let mut coeffs: Vec<C> = self.terms.iter().map(|(_, c)| c.clone()).collect();
        C::make_primitive(&mut coeffs);
        if coeffs[0].is_negative() {
            for c in coeffs.iter_mut() {
                *c = c.neg();
            }
        }
        Ok(PauliVector {
            n: self.n,
            terms: self
                .terms
                .iter()
                .zip(coeffs)
                .map(|((s, _), c)| (*s, c))
                .collect(),
        })
    }

    /// Map coefficients into another ring.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> PauliVector<D> {
        PauliVector {
            n: self.n,
            terms: self.terms.iter().map(|(s, c)| (*s, f(c))).collect(),
        }
    }
}

/// The crate-default exact element type.
pub type Element = PauliVector<BigRational>;

impl Element {
    /// Uniform sum `i * sum_{q in mask} X_q` style constructor: letter at
    /// every set bit of `mask`, coefficient one each.
    pub fn letter_sum(n: usize, mask: u64, letter: PauliLetter) -> Element {
        let mut terms = vec![];
        for q in 0..n {
            if mask >> q & 1 == 1 {
                terms.push((
                    PauliString::single(n, q, letter),
                    BigRational::from_integer(1.into()),
                ));
            }
        }
        Element::from_terms(n, terms)
    }

    /// `i * sum_{(u,v) in edges} Z_u Z_v`.
    pub fn zz_sum(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Element {
        Element::from_terms(
            n,
            edges
                .into_iter()
                .map(|(u, v)| (PauliString::zz(n, u, v), BigRational::from_integer(1.into()))),
        )
    }

    pub fn int_term(string: PauliString, coeff: i64) -> Element {
        Element::term(string, BigRational::from_integer(coeff.into()))
    }

    /// Parse the textual element syntax, e.g. `X3 + 2*Z0Z1 - 1/2*Y2Y4`.
    ///
    /// Terms are joined by `+`/`-`; each term is
    /// `[<rational>*]<letter><qubit>[<letter><qubit>...]` or `I` for the
    /// identity. The implicit global factor `i` is understood.
    pub fn parse(text: &str, n: usize) -> Result<Element, PauliError> {
        let mut terms: Vec<(PauliString, BigRational)> = vec![];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(PauliError::Parse("empty expression".into()));
        }
        let mut sign = 1i64;
        // Leading sign is allowed.
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let end = rest
                .char_indices()
                .find(|&(i, c)| (c == '+' || c == '-') && i > 0)
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let (term_text, tail) = rest.split_at(end);
            let (string, coeff) = parse_term(term_text.trim(), n)?;
            terms.push((string, coeff * BigRational::from_integer(sign.into())));
            if tail.is_empty() {
                break;
            }
            sign = if tail.starts_with('-') { -1 } else { 1 };
            rest = tail[1..].trim_start();
            if rest.is_empty() {
                return Err(PauliError::Parse("trailing operator".into()));
            }
        }
        Ok(Element::from_terms(n, terms))
    }

    /// Canonical text form; inverse of [`Element::parse`] up to whitespace.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (s, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(&s.to_string());
        }
        out
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_term(term: &str, n: usize) -> Result<(PauliString, BigRational), PauliError> {
    let bad = |msg: &str| PauliError::Parse(format!("{msg}: {term:?}"));
    let (coeff_text, pauli_text) = match term.find('*') {
        Some(i) => (Some(&term[..i]), term[i + 1..].trim()),
        None => (None, term),
    };
    let coeff = match coeff_text {
        None => BigRational::from_integer(1.into()),
        Some(t) => parse_rational(t.trim()).ok_or_else(|| bad("bad coefficient"))?,
    };
    if pauli_text == "I" {
        return Ok((PauliString::identity(n), coeff));
    }
    let mut x_mask = 0u64;
    let mut z_mask = 0u64;
    let mut chars = pauli_text.chars().peekable();
    let mut any = false;
    while let Some(c) = chars.next() {
        let letter = match c {
            'X' | 'x' => PauliLetter::X,
            'Y' | 'y' => PauliLetter::Y,
            'Z' | 'z' => PauliLetter::Z,
            _ => return Err(bad("expected Pauli letter")),
        };
        let mut digits = String::new();
        while let Some(&d) = chars.peek() {
            if d.is_ascii_digit() {
                digits.push(d);
                chars.next();
            } else {
                break;
            }
        }
        let q: usize = digits.parse().map_err(|_| bad("missing qubit index"))?;
        if q >= n {
            return Err(bad(&format!("qubit {q} out of range for {n} qubits")));
        }
        let bit = 1u64 << q;
        if (x_mask | z_mask) & bit != 0 {
            return Err(bad(&format!("repeated qubit {q}")));
        }
        match letter {
            PauliLetter::X => x_mask |= bit,
            PauliLetter::Y => {
                x_mask |= bit;
                z_mask |= bit;
            }
            PauliLetter::Z => z_mask |= bit,
            PauliLetter::I => unreachable!(),
        }
        any = true;
    }
    if !any {
        return Err(bad("empty Pauli term"));
    }
    Ok((PauliString::from_masks(n, x_mask, z_mask), coeff))
}

fn parse_rational(t: &str) -> Option<BigRational> {
    use num::BigInt;
    use std::str::FromStr;
    if let Some((p, q)) = t.split_once('/') {
        let num = BigInt::from_str(p.trim()).ok()?;
        let den = BigInt::from_str(q.trim()).ok()?;
        if den == BigInt::from(0) {
            return None;
        }
        Some(BigRational::new(num, den))
    } else {
        BigInt::from_str(t).ok().map(BigRational::from_integer)
    }
}

impl<C: Coeff> fmt::Debug for PauliVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{:?}*{}", c, s)?;
        }
        Ok(())
    }
}
