//! Coefficient scalars for Pauli-basis vectors.
//!
//! Everything here is exact: the public element type uses arbitrary-precision
//! rationals, while the closure kernel runs on machine integers with checked
//! arithmetic and escalates to big integers only if a product would overflow.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Exact coefficient ring used by [`crate::vector::PauliVector`].
///
/// Implemented for `BigRational` (the public default), `i128`, and `BigInt`
/// (closure-kernel rows). All operations are exact; `checked_mul`/`checked_add`
/// report overflow for the fixed-width implementation so callers can retry in
/// a wider ring.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    /// Field coefficients eliminate by exact division (`v -= (c/p) * row`);
    /// ring coefficients use fraction-free scaling.
    const FIELD: bool = false;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_i64(v: i64) -> Self;

    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;

    /// Rescale the (nonzero) entries so they become coprime integers, the
    /// characteristic step of `canonical_primitive`. The common positive
    /// factor removed is discarded; signs are untouched.
    fn make_primitive(entries: &mut [Self]);

    /// Exact ratio `self / other` when `other` divides `self`; used by
    /// fraction-free elimination, where divisibility holds by construction.
    fn div_exact(&self, other: &Self) -> Self;

    /// Greatest common divisor in the integer implementations; for rationals
    /// this is only used through `make_primitive`.
    fn gcd(&self, other: &Self) -> Self;

    /// Integer value of an integer-valued scalar.
    fn to_bigint(&self) -> BigInt;

    /// Conversion from a big integer; `None` when it does not fit.
    fn from_bigint(v: &BigInt) -> Option<Self>;
}

impl Coeff for BigRational {
    const FIELD: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }

    fn make_primitive(entries: &mut [Self]) {
        if entries.is_empty() {
            return;
        }
        // Clear denominators, then divide by the gcd of the numerators.
        let mut denom_lcm: BigInt = One::one();
        for e in entries.iter() {
            denom_lcm = denom_lcm.lcm(e.denom());
        }
        let mut num_gcd: BigInt = Zero::zero();
        for e in entries.iter() {
            let scaled = e.numer() * (&denom_lcm / e.denom());
            num_gcd = Integer::gcd(&num_gcd, &scaled);
        }
        debug_assert!(!Zero::is_zero(&num_gcd));
        for e in entries.iter_mut() {
            let scaled = e.numer() * (&denom_lcm / e.denom());
            *e = BigRational::from_integer(scaled / &num_gcd);
        }
    }

    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }

    fn gcd(&self, _other: &Self) -> Self {
        One::one()
    }

    fn to_bigint(&self) -> BigInt {
        debug_assert!(self.is_integer());
        self.to_integer()
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(BigRational::from_integer(v.clone()))
    }
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn sub(&self, other: &Self) -> Self {
        *self - *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i128::checked_mul(*self, *other)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i128::checked_sub(*self, *other)
    }

    fn make_primitive(entries: &mut [Self]) {
        let mut g: i128 = 0;
        for e in entries.iter() {
            g = Integer::gcd(&g, e);
            if g == 1 {
                return;
            }
        }
        if g > 1 {
            for e in entries.iter_mut() {
                *e /= g;
            }
        }
    }

    fn div_exact(&self, other: &Self) -> Self {
        debug_assert_eq!(self % other, 0);
        self / other
    }

    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        i128::try_from(v).ok()
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }

    fn make_primitive(entries: &mut [Self]) {
        let mut g: BigInt = Zero::zero();
        for e in entries.iter() {
            g = Integer::gcd(&g, e);
            if One::is_one(&g) {
                return;
            }
        }
        if !One::is_one(&g) && !Zero::is_zero(&g) {
            for e in entries.iter_mut() {
                *e = &*e / &g;
            }
        }
    }

    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }

    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}

/// Prime field `Z/p` with `p = 2^61 - 1` (Mersenne), used by the discovery
/// pass of the closure. Values are canonical representatives in `[0, p)`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Fp(pub u64);

/// The discovery-pass modulus.
pub const FP_P: u64 = (1u64 << 61) - 1;

impl Fp {
    #[inline]
    pub fn new(v: u64) -> Self {
        Fp(v % FP_P)
    }

    pub fn from_bigint_value(v: &BigInt) -> Self {
        use num::ToPrimitive;
        let m = v % BigInt::from(FP_P);
        let m = if Signed::is_negative(&m) { m + BigInt::from(FP_P) } else { m };
        Fp(m.to_u64().expect("reduced residue fits u64"))
    }

    #[inline]
    fn mul_raw(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % FP_P as u128) as u64
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mul_raw(acc, base);
            }
            base = Self::mul_raw(base, base);
            e >>= 1;
        }
        Fp(acc)
    }

    pub fn inverse(self) -> Fp {
        debug_assert!(self.0 != 0);
        self.pow(FP_P - 2)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    // Inherent arithmetic so call sites do not need the Coeff trait in
    // scope (its method names shadow the num traits).

    #[inline]
    pub fn fp_is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn fp_add(self, other: Fp) -> Fp {
        let s = self.0 + other.0;
        Fp(if s >= FP_P { s - FP_P } else { s })
    }

    #[inline]
    pub fn fp_neg(self) -> Fp {
        if self.0 == 0 {
            Fp(0)
        } else {
            Fp(FP_P - self.0)
        }
    }

    #[inline]
    pub fn fp_sub(self, other: Fp) -> Fp {
        self.fp_add(other.fp_neg())
    }

    #[inline]
    pub fn fp_mul(self, other: Fp) -> Fp {
        Fp(Self::mul_raw(self.0, other.0))
    }

    pub fn fp_from_i64(v: i64) -> Fp {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            Fp::new(v.unsigned_abs()).fp_neg()
        }
    }
}

impl Coeff for Fp {
    const FIELD: bool = true;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_negative(&self) -> bool {
        false
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            Fp(0)
        } else {
            Fp(FP_P - self.0)
        }
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= FP_P { s - FP_P } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        Coeff::add(self, &Coeff::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(Self::mul_raw(self.0, other.0))
    }
    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            Coeff::neg(&Fp::new(v.unsigned_abs()))
        }
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(Coeff::mul(self, other))
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(Coeff::add(self, other))
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(Coeff::sub(self, other))
    }

    /// Monic normalization: scale so the first entry is 1.
    fn make_primitive(entries: &mut [Self]) {
        if let Some(first) = entries.first().copied() {
            if first.0 != 1 && first.0 != 0 {
                let inv = first.inverse();
                for e in entries.iter_mut() {
                    *e = Coeff::mul(e, &inv);
                }
            }
        }
    }

    fn div_exact(&self, other: &Self) -> Self {
        Coeff::mul(self, &other.inverse())
    }

    fn gcd(&self, _other: &Self) -> Self {
        Fp(1)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0)
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(Fp::from_bigint_value(v))
    }
}

/// Rational reconstruction: find `n/d` with `|n|, d <= bound`,
/// `gcd(n, d) = 1`, and `n = d * residue (mod p)`. Classic half-extended
/// Euclid; returns `None` when no admissible pair exists.
pub fn rational_reconstruct(residue: u64, p: u64, bound: u64) -> Option<(i64, u64)> {
    if residue == 0 {
        return Some((0, 1));
    }
    let (mut r0, mut r1) = (p as i128, residue as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound as i128 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r1 == 0 {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if d == 0 || d > bound as i128 || n.abs() > bound as i128 {
        return None;
    }
    let n = i64::try_from(n).ok()?;
    let d = u64::try_from(d).ok()?;
    if num::integer::gcd(n.unsigned_abs(), d) != 1 {
        return None;
    }
    Some((n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_rationals() {
        let mut v: Vec<BigRational> = [(4, 6), (-2, 3), (8, 3)]
            .iter()
            .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        Coeff::make_primitive(&mut v);
        let ints: Vec<i64> = v
            .iter()
            .map(|r| {
                assert!(r.is_integer());
                i64::try_from(r.to_integer()).unwrap()
            })
            .collect();
        assert_eq!(ints, vec![1, -1, 4]);
    }

    #[test]
    fn primitive_integers() {
        let mut v: Vec<i128> = vec![-6, 9, 15];
        Coeff::make_primitive(&mut v);
        assert_eq!(v, vec![-2, 3, 5]);
    }
}
