//! n-qubit Pauli strings in symplectic (x-mask, z-mask) form.
//!
//! Bit `q` of `x_mask` is set iff the factor at qubit `q` is `X` or `Y`;
//! bit `q` of `z_mask` is set iff the factor is `Z` or `Y`. The string itself
//! carries no phase; products return a [`PhasedString`] with a power of `i`.

use std::fmt;

use crate::error::PauliError;

/// Maximum supported qubit count (masks are `u64`).
pub const MAX_QUBITS: usize = 64;

/// One n-qubit Pauli word, phase-free.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: u32,
    x_mask: u64,
    z_mask: u64,
}

/// Single-qubit Pauli letter.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

/// Product of two Pauli strings: a string together with a power of `i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PhasedString {
    pub string: PauliString,
    /// Power of `i` in `{0,1,2,3}`: the product equals `i^phase_power * string`.
    pub phase_power: u8,
}

impl PauliString {
    /// The identity string on `n` qubits.
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits supported");
        PauliString {
            n: n as u32,
            x_mask: 0,
            z_mask: 0,
        }
    }

    /// Build from raw masks. Bits at positions `>= n` must be clear.
    pub fn from_masks(n: usize, x_mask: u64, z_mask: u64) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits supported");
        if n < MAX_QUBITS {
            let valid = (1u64 << n) - 1;
            assert!(
                x_mask & !valid == 0 && z_mask & !valid == 0,
                "mask bits beyond qubit count"
            );
        }
        PauliString {
            n: n as u32,
            x_mask,
            z_mask,
        }
    }

    /// Single-site letter at qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, letter: PauliLetter) -> Self {
        assert!(q < n, "qubit {q} out of range for {n} qubits");
        let bit = 1u64 << q;
        let (x, z) = match letter {
            PauliLetter::I => (0, 0),
            PauliLetter::X => (bit, 0),
            PauliLetter::Y => (bit, bit),
            PauliLetter::Z => (0, bit),
        };
        PauliString::from_masks(n, x, z)
    }

    /// `Z_u Z_v` on two distinct qubits.
    pub fn zz(n: usize, u: usize, v: usize) -> Self {
        assert!(u < n && v < n && u != v);
        PauliString::from_masks(n, 0, (1u64 << u) | (1u64 << v))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    /// Letter at qubit `q`.
    pub fn letter(&self, q: usize) -> PauliLetter {
        assert!(q < self.n());
        let x = (self.x_mask >> q) & 1;
        let z = (self.z_mask >> q) & 1;
        match (x, z) {
            (0, 0) => PauliLetter::I,
            (1, 0) => PauliLetter::X,
            (1, 1) => PauliLetter::Y,
            (0, 1) => PauliLetter::Z,
            _ => unreachable!(),
        }
    }

    /// Support mask: qubits carrying a non-identity letter.
    pub fn support(&self) -> u64 {
        self.x_mask | self.z_mask
    }

    /// Number of `Y` or `Z` factors. A string commutes with the global
    /// X-parity operator iff this count is even.
    pub fn yz_weight(&self) -> u32 {
        self.z_mask.count_ones()
    }

    /// Sort key: lexicographic on `(z_mask, x_mask)` as unsigned integers.
    /// This is the canonical ordering used for pivots and term order.
    pub fn key(&self) -> (u64, u64) {
        (self.z_mask, self.x_mask)
    }

    /// True iff the two strings commute (symplectic inner product is even).
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.n, other.n);
        let s = (self.x_mask & other.z_mask).count_ones()
            + (self.z_mask & other.x_mask).count_ones();
        s % 2 == 0
    }

    /// Product `self * other` as a phased string.
    ///
    /// Writing each string as `i^{|x&z|} X^x Z^z`, the phase of the product
    /// follows from commuting `Z^{z1}` past `X^{x2}`.
    pub fn mul(&self, other: &PauliString) -> Result<PhasedString, PauliError> {
        if self.n != other.n {
            return Err(PauliError::QubitMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let x = self.x_mask ^ other.x_mask;
        let z = self.z_mask ^ other.z_mask;
        let p1 = (self.x_mask & self.z_mask).count_ones();
        let p2 = (other.x_mask & other.z_mask).count_ones();
        let swap = (self.z_mask & other.x_mask).count_ones();
        let p12 = (x & z).count_ones();
        // i^{p1} i^{p2} (-1)^{swap} X Z  ==  i^{phase} * i^{p12} X Z
        let phase = (p1 + p2 + 2 * swap).wrapping_sub(p12) % 4;
        Ok(PhasedString {
            string: PauliString {
                n: self.n,
                x_mask: x,
                z_mask: z,
            },
            phase_power: ((phase + 4) % 4) as u8,
        })
    }

    /// Commutator `[iA, iB]` expressed in the `iP` basis.
    ///
    /// Returns `None` when the strings commute; otherwise the unique term
    /// `(c, C)` with `[iA, iB] = c * (iC)` and `c = ±2`.
    pub fn bracket(&self, other: &PauliString) -> Result<Option<(i8, PauliString)>, PauliError> {
        if self.n != other.n {
            return Err(PauliError::QubitMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        if self.commutes_with(other) {
            return Ok(None);
        }
        let prod = self.mul(other)?;
        // [iA, iB] = -(AB - BA) = -2 AB = -2 i^phi C = (-2 i^{phi-1}) (iC);
        // anticommuting Hermitian strings force phi odd.
        let c = match prod.phase_power {
            1 => -2,
            3 => 2,
            p => unreachable!("even product phase {p} for anticommuting strings"),
        };
        Ok(Some((c, prod.string)))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        for q in 0..self.n() {
            match self.letter(q) {
                PauliLetter::I => {}
                l => write!(f, "{:?}{}", l, q)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1(letter: PauliLetter) -> PauliString {
        PauliString::single(1, 0, letter)
    }

    #[test]
    fn single_qubit_products() {
        use PauliLetter::*;
        // X*Z = -i Y, Z*X = i Y, Y*Y = I.
        let xz = s1(X).mul(&s1(Z)).unwrap();
        assert_eq!(xz.string, s1(Y));
        assert_eq!(xz.phase_power, 3);
        let zx = s1(Z).mul(&s1(X)).unwrap();
        assert_eq!(zx.string, s1(Y));
        assert_eq!(zx.phase_power, 1);
        let yy = s1(Y).mul(&s1(Y)).unwrap();
        assert!(yy.string.is_identity());
        assert_eq!(yy.phase_power, 0);
    }

    #[test]
    fn mul_is_associative_and_self_inverse() {
        use PauliLetter::*;
        let strings: Vec<PauliString> = [I, X, Y, Z]
            .iter()
            .flat_map(|&a| [I, X, Y, Z].iter().map(move |&b| {
                let sa = PauliString::single(2, 0, a);
                let sb = PauliString::single(2, 1, b);
                let p = sa.mul(&sb).unwrap();
                assert_eq!(p.phase_power, 0, "disjoint supports pick up no phase");
                p.string
            }))
            .collect::<Vec<_>>();
        for a in &strings {
            let sq = a.mul(a).unwrap();
            assert!(sq.string.is_identity());
            assert_eq!(sq.phase_power, 0);
            for b in &strings {
                for c in &strings {
                    let ab_c = {
                        let ab = a.mul(b).unwrap();
                        let r = ab.string.mul(c).unwrap();
                        (r.string, (ab.phase_power + r.phase_power) % 4)
                    };
                    let a_bc = {
                        let bc = b.mul(c).unwrap();
                        let r = a.mul(&bc.string).unwrap();
                        (r.string, (bc.phase_power + r.phase_power) % 4)
                    };
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }

    #[test]
    fn bracket_basics() {
        use PauliLetter::*;
        // [iX, iZ] = 2 (iY)
        let (c, s) = s1(X).bracket(&s1(Z)).unwrap().unwrap();
        assert_eq!((c, s), (2, s1(Y)));
        // antisymmetry
        let (c2, s2) = s1(Z).bracket(&s1(X)).unwrap().unwrap();
        assert_eq!((c2, s2), (-2, s1(Y)));
        // disjoint supports commute
        let x1 = PauliString::single(2, 0, X);
        let x2 = PauliString::single(2, 1, X);
        assert!(x1.bracket(&x2).unwrap().is_none());
        // [i Z1Z2, i X1] = -2 (i Y1Z2)
        let zz = PauliString::zz(2, 0, 1);
        let (c3, s3) = zz.bracket(&x1).unwrap().unwrap();
        assert_eq!(c3, -2);
        assert_eq!(s3, PauliString::from_masks(2, 0b01, 0b11));
    }

    #[test]
    fn qubit_mismatch_is_an_error() {
        let a = PauliString::identity(2);
        let b = PauliString::identity(3);
        assert!(a.mul(&b).is_err());
        assert!(a.bracket(&b).is_err());
    }

    #[test]
    fn key_orders_z_before_x() {
        use PauliLetter::*;
        let x = s1(X);
        let z = s1(Z);
        let y = s1(Y);
        let i = PauliString::identity(1);
        // (z,x) lexicographic: I < X < Z < Y
        assert!(i < x && x < z && z < y);
    }
}
