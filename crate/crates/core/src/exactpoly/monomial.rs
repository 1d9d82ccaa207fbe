use std::fmt;

/// Maximum number of variables a packed monomial can carry.
pub const MAX_VARS: usize = 8;
const MAX_EXP: u32 = 127;
const HIGH_BITS: u64 = 0x8080_8080_8080_8080;

/// Exponent vector packed one byte per variable with x1 in the most significant
/// byte, so that integer order on the packed word is lexicographic order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

#[inline]
fn shift(i: usize) -> u32 {
    debug_assert!(i < MAX_VARS);
    (8 * (MAX_VARS - 1 - i)) as u32
}

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// The variable with zero-based index `i`.
    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} exceeds {MAX_VARS}");
        Monomial(1u64 << shift(i))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut w = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXP, "exponent {e} too large");
            w |= (e as u64) << shift(i);
        }
        Monomial(w)
    }

    pub fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & 0xff) as u32
    }

    pub fn exponents(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exponent(i)).collect()
    }

    /// Sum of exponents (the combinatorial degree).
    pub fn degree(self) -> u32 {
        self.0.to_be_bytes().iter().map(|&b| b as u32).sum()
    }

    /// Highest variable index (exclusive) carrying a nonzero exponent.
    pub fn support_len(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            MAX_VARS - (self.0.trailing_zeros() / 8) as usize
        }
    }

    #[inline]
    pub fn mul(self, other: Monomial) -> Monomial {
        let w = self.0 + other.0;
        assert!(w & HIGH_BITS == 0, "exponent overflow");
        Monomial(w)
    }

    pub fn pow(self, e: u32) -> Monomial {
        let mut acc = Monomial::ONE;
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) <= other.exponent(i))
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn div_into(self, other: Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0 - self.0)
    }

    pub fn with_exponent(self, i: usize, e: u32) -> Monomial {
        assert!(e <= MAX_EXP, "exponent {e} too large");
        let s = shift(i);
        Monomial((self.0 & !(0xffu64 << s)) | ((e as u64) << s))
    }

    /// Exchange the exponents of zero-based variables `i` and `j`.
    pub fn swap(self, i: usize, j: usize) -> Monomial {
        let (a, b) = (self.exponent(i), self.exponent(j));
        self.with_exponent(i, b).with_exponent(j, a)
    }

    /// Image under the substitution x_j -> x_{w(j)}; `w` is zero-based one-line notation.
    pub fn permute(self, w: &[usize]) -> Monomial {
        let mut out = 0u64;
        for (j, &wj) in w.iter().enumerate() {
            out |= ((self.exponent(j)) as u64) << shift(wj);
        }
        Monomial(out)
    }

    pub fn fmt_vars(self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..MAX_VARS {
            let e = self.exponent(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "1")
        } else {
            self.fmt_vars(f)
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_order_is_lex() {
        let a = Monomial::from_exponents(&[1, 0, 5]);
        let b = Monomial::from_exponents(&[0, 7, 7]);
        let c = Monomial::from_exponents(&[1, 1, 0]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn permute_and_swap() {
        let m = Monomial::from_exponents(&[2, 1, 0]);
        assert_eq!(m.swap(0, 1), Monomial::from_exponents(&[1, 2, 0]));
        assert_eq!(m.permute(&[2, 0, 1]), Monomial::from_exponents(&[1, 0, 2]));
        assert_eq!(m.degree(), 3);
        assert_eq!(m.support_len(), 2);
    }

    #[test]
    #[should_panic]
    fn overflow_detected() {
        let m = Monomial::from_exponents(&[100]);
        let _ = m.mul(m);
    }
}
