use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use super::{Fp, PrimeField};
use crate::Result;

/// The quadratic extension `F_p(alpha)` with `alpha^2 = ns` for the smallest
/// quadratic non-residue `ns`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp2Field {
    base: PrimeField,
    non_residue: Fp,
}

/// Builds the extension context for `p`, choosing `ns` deterministically.
pub fn fp2_context(p: u64) -> Result<Fp2Field> {
    Ok(Fp2Field::new(PrimeField::new(p)?))
}

impl Fp2Field {
    pub fn new(base: PrimeField) -> Self {
        Fp2Field {
            base,
            non_residue: base.smallest_non_residue(),
        }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn non_residue(&self) -> Fp {
        self.non_residue
    }

    pub fn elem(&self, c0: u64, c1: u64) -> Fp2 {
        self.from_base_pair(self.base.elem(c0), self.base.elem(c1))
    }

    pub fn from_base_pair(&self, c0: Fp, c1: Fp) -> Fp2 {
        Fp2 {
            c0,
            c1,
            non_residue: self.non_residue,
        }
    }

    pub fn embed(&self, a: Fp) -> Fp2 {
        self.from_base_pair(a, self.base.zero())
    }

    pub fn one(&self) -> Fp2 {
        self.embed(self.base.one())
    }

    /// The generator `alpha` with `alpha^2 = ns`.
    pub fn alpha(&self) -> Fp2 {
        self.from_base_pair(self.base.zero(), self.base.one())
    }
}

/// `c0 + c1 * alpha`. Ordered lexicographically by `(c0, c1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp2 {
    c0: Fp,
    c1: Fp,
    non_residue: Fp,
}

impl Fp2 {
    pub fn c0(self) -> Fp {
        self.c0
    }

    pub fn c1(self) -> Fp {
        self.c1
    }

    pub fn non_residue(self) -> Fp {
        self.non_residue
    }

    pub fn modulus(self) -> u64 {
        self.c0.modulus()
    }

    pub fn is_zero(self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    /// True when the element lies in the prime subfield.
    pub fn is_base(self) -> bool {
        self.c1.is_zero()
    }

    fn with(self, c0: Fp, c1: Fp) -> Fp2 {
        Fp2 {
            c0,
            c1,
            non_residue: self.non_residue,
        }
    }

    /// `x -> x^p`, which negates the `alpha` coordinate because `ns` is a non-residue.
    pub fn frobenius(self) -> Fp2 {
        self.with(self.c0, -self.c1)
    }

    /// `N(x) = x * x^p = c0^2 - ns * c1^2`.
    pub fn norm(self) -> Fp {
        self.c0.square() - self.non_residue * self.c1.square()
    }

    pub fn square(self) -> Fp2 {
        self * self
    }

    pub fn inv(self) -> Option<Fp2> {
        let n_inv = self.norm().inv()?;
        let conj = self.frobenius();
        Some(self.with(conj.c0 * n_inv, conj.c1 * n_inv))
    }

    pub fn pow(self, mut exp: u64) -> Fp2 {
        let mut base = self;
        let mut acc = self.with(self.c0.sibling(1), self.c0.sibling(0));
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    pub fn scale(self, k: Fp) -> Fp2 {
        self.with(self.c0 * k, self.c1 * k)
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0.value(), self.c1.value()) {
            (c0, 0) => write!(f, "{c0}"),
            (0, 1) => write!(f, "a"),
            (0, c1) => write!(f, "{c1}a"),
            (c0, 1) => write!(f, "{c0}+a"),
            (c0, c1) => write!(f, "{c0}+{c1}a"),
        }
    }
}

/// Serialized as the pair `[c0, c1]`.
impl Serialize for Fp2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        tup.serialize_element(&self.c0.value())?;
        tup.serialize_element(&self.c1.value())?;
        tup.end()
    }
}

impl Add for Fp2 {
    type Output = Fp2;
    fn add(self, rhs: Fp2) -> Fp2 {
        self.with(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl Sub for Fp2 {
    type Output = Fp2;
    fn sub(self, rhs: Fp2) -> Fp2 {
        self.with(self.c0 - rhs.c0, self.c1 - rhs.c1)
    }
}

impl Neg for Fp2 {
    type Output = Fp2;
    fn neg(self) -> Fp2 {
        self.with(-self.c0, -self.c1)
    }
}

impl Mul for Fp2 {
    type Output = Fp2;
    fn mul(self, rhs: Fp2) -> Fp2 {
        debug_assert_eq!(self.non_residue, rhs.non_residue);
        let c0 = self.c0 * rhs.c0 + self.non_residue * self.c1 * rhs.c1;
        let c1 = self.c0 * rhs.c1 + self.c1 * rhs.c0;
        self.with(c0, c1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn context_choices() {
        assert_eq!(fp2_context(17).unwrap().non_residue().value(), 3);
        // first a = 2, 3, ... with (a / 23) = -1
        let f = PrimeField::new(23).unwrap();
        let first = (2..23).find(|&a| f.legendre(f.elem(a)) == -1).unwrap();
        assert_eq!(first, 5);
        assert_eq!(fp2_context(23).unwrap().non_residue().value(), 5);
    }

    #[test]
    fn alpha_squares_to_non_residue() {
        let k = fp2_context(17).unwrap();
        assert_eq!(k.alpha().square(), k.elem(3, 0));
        assert_eq!(k.elem(2, 1).norm().value(), 1);
    }

    #[test]
    fn norm_and_frobenius_agree_with_powering() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [5u64, 13, 17, 23, 101, 1_000_003, 4_294_967_311] {
            let k = fp2_context(p).unwrap();
            let mut prev: Option<Fp2> = None;
            for _ in 0..1000 {
                let x = k.elem(rng.gen_range(0..p), rng.gen_range(0..p));
                let xp = x.pow(p);
                assert_eq!(xp, x.frobenius());
                assert_eq!(k.embed(x.norm()), x * xp);
                if let Some(y) = prev {
                    assert_eq!((x * y).norm(), x.norm() * y.norm());
                }
                if !x.is_zero() {
                    assert!((x * x.inv().unwrap()).is_one());
                }
                prev = Some(x);
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        let k = fp2_context(13).unwrap();
        assert!(k.elem(0, 0).inv().is_none());
    }

    #[test]
    fn display() {
        let k = fp2_context(17).unwrap();
        assert_eq!(k.elem(2, 1).to_string(), "2+a");
        assert_eq!(k.elem(15, 16).to_string(), "15+16a");
        assert_eq!(k.elem(3, 0).to_string(), "3");
    }
}
