use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Serialize, Serializer};

use super::{is_prime, MAX_MODULUS};
use crate::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        // both operands are reduced, so the product fits
        a * b % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    base %= m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Jacobi symbol `(a / n)` for odd `n > 0`, by the reciprocity iteration.
pub fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a / p)`; fails unless `p` is an odd prime.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    let field = PrimeField::new(p)?;
    Ok(field.legendre(field.from_i64(a)))
}

/// A residue modulo an odd prime. The modulus travels with the value so the
/// arithmetic operators can be used directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Another element of the same field; `value` must already be reduced.
    #[inline]
    pub(crate) fn sibling(self, value: u64) -> Fp {
        debug_assert!(value < self.modulus);
        Fp {
            value,
            modulus: self.modulus,
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.value == 1
    }

    #[inline]
    pub fn square(self) -> Fp {
        self * self
    }

    pub fn pow(self, exp: u64) -> Fp {
        Fp {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self) -> Option<Fp> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }

    #[inline]
    fn with(self, value: u64) -> Fp {
        Fp {
            value,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for Fp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value + rhs.value;
        self.with(if s >= self.modulus {
            s - self.modulus
        } else {
            s
        })
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        if self.value >= rhs.value {
            self.with(self.value - rhs.value)
        } else {
            self.with(self.modulus - rhs.value + self.value)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        self.with(mul_mod(self.value, rhs.value, self.modulus))
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            self.with(self.modulus - self.value)
        }
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

/// The prime field `F_p` for an odd prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..=MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn elem(&self, value: u64) -> Fp {
        Fp {
            value: value % self.p,
            modulus: self.p,
        }
    }

    pub fn from_i64(&self, value: i64) -> Fp {
        self.elem((value as i128).rem_euclid(self.p as i128) as u64)
    }

    #[inline]
    pub fn zero(&self) -> Fp {
        self.elem(0)
    }

    #[inline]
    pub fn one(&self) -> Fp {
        self.elem(1)
    }

    /// All elements `0, 1, ..., p - 1` in natural order.
    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| self.elem(v))
    }

    pub fn legendre(&self, a: Fp) -> i8 {
        debug_assert_eq!(a.modulus, self.p);
        jacobi(a.value, self.p)
    }

    /// Smallest positive quadratic non-residue.
    pub fn smallest_non_residue(&self) -> Fp {
        (2..self.p)
            .map(|v| self.elem(v))
            .find(|&a| self.legendre(a) == -1)
            .expect("every odd prime field has a non-residue")
    }

    /// A square root of `a` by Tonelli-Shanks, or `None` when `a` is a non-residue.
    /// The root returned is the one the algorithm lands on; callers that need a
    /// canonical choice pick between `r` and `-r` themselves.
    pub fn sqrt(&self, a: Fp) -> Option<Fp> {
        if a.is_zero() {
            return Some(a);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let p = self.p;
        if p % 4 == 3 {
            return Some(a.pow((p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = self.smallest_non_residue();
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = a.pow(q);
        let mut r = a.pow(q.div_ceil(2));
        while !t.is_one() {
            let mut i = 0u32;
            let mut t2 = t;
            while !t2.is_one() {
                t2 = t2.square();
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = b.square();
            }
            m = i;
            c = b.square();
            t *= c;
            r *= b;
        }
        Some(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler(a: u64, p: u64) -> i8 {
        match pow_mod(a, (p - 1) / 2, p) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(1, 23), Ok(1));
        assert_eq!(legendre(12, 17), Ok(-1));
        // x^2 = 2 mod 23 by scanning
        let has_root = (1..23u64).any(|x| x * x % 23 == 2);
        assert!(has_root);
        assert_eq!(legendre(2, 23), Ok(1));
        assert_eq!(legendre(0, 23), Ok(0));
        assert_eq!(legendre(-1, 23), Ok(-1));
        assert_eq!(legendre(46, 23), Ok(0));
    }

    #[test]
    fn legendre_rejects_bad_moduli() {
        assert_eq!(legendre(1, 2), Err(Error::InvalidField(2)));
        assert_eq!(legendre(1, 15), Err(Error::InvalidField(15)));
        assert_eq!(legendre(1, 0), Err(Error::InvalidField(0)));
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 17, 101, 997, 65537] {
            for a in 0..p.min(2000) {
                assert_eq!(jacobi(a, p), euler(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        for p in [3u64, 5, 13, 17, 41, 97, 257, 65537, 998244353] {
            let f = PrimeField::new(p).unwrap();
            for v in 0..p.min(3000) {
                let a = f.elem(v);
                match f.sqrt(a) {
                    Some(r) => assert_eq!(r.square(), a),
                    None => assert_eq!(f.legendre(a), -1),
                }
            }
        }
    }

    #[test]
    fn arithmetic_near_the_cap() {
        let p = 9223372036854775783; // largest prime below 2^63
        let f = PrimeField::new(p).unwrap();
        let a = f.elem(p - 1);
        assert_eq!(a + a, f.elem(p - 2));
        assert_eq!(a * a, f.one());
        assert_eq!(-a, f.one());
        assert_eq!(a.inv(), Some(a));
        assert_eq!(f.from_i64(-1), a);
    }

    #[test]
    fn smallest_non_residues() {
        assert_eq!(
            PrimeField::new(17).unwrap().smallest_non_residue().value(),
            3
        );
        assert_eq!(
            PrimeField::new(23).unwrap().smallest_non_residue().value(),
            5
        );
        assert_eq!(
            PrimeField::new(7).unwrap().smallest_non_residue().value(),
            3
        );
    }
}
