use super::field::{mul_mod, pow_mod};
use super::{factorize, Factorization, Fp, Fp2};
use crate::{Error, Result};

/// An element of a finite multiplicative group.
pub trait GroupElement: Copy + PartialEq {
    fn identity(&self) -> Self;

    fn op(&self, rhs: &Self) -> Self;

    /// False for elements outside the unit group (zero, non-coprime residues).
    fn is_unit(&self) -> bool;

    fn describe(&self) -> (u64, u64);

    fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.identity();
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.op(&base);
            }
            base = base.op(&base);
            exp >>= 1;
        }
        acc
    }
}

impl GroupElement for Fp {
    fn identity(&self) -> Self {
        self.pow(0)
    }

    fn op(&self, rhs: &Self) -> Self {
        *self * *rhs
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn describe(&self) -> (u64, u64) {
        (self.value(), self.modulus())
    }

    fn pow(&self, exp: u64) -> Self {
        Fp::pow(*self, exp)
    }
}

impl GroupElement for Fp2 {
    fn identity(&self) -> Self {
        self.pow(0)
    }

    fn op(&self, rhs: &Self) -> Self {
        *self * *rhs
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn describe(&self) -> (u64, u64) {
        (self.c0().value(), self.modulus())
    }

    fn pow(&self, exp: u64) -> Self {
        Fp2::pow(*self, exp)
    }
}

/// A residue in `(Z/nZ)^x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModUnit {
    pub value: u64,
    pub modulus: u64,
}

impl ModUnit {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 1);
        ModUnit {
            value: value % modulus,
            modulus,
        }
    }
}

impl GroupElement for ModUnit {
    fn identity(&self) -> Self {
        ModUnit::new(1, self.modulus)
    }

    fn op(&self, rhs: &Self) -> Self {
        ModUnit::new(mul_mod(self.value, rhs.value, self.modulus), self.modulus)
    }

    fn is_unit(&self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    fn describe(&self) -> (u64, u64) {
        (self.value, self.modulus)
    }

    fn pow(&self, exp: u64) -> Self {
        ModUnit::new(pow_mod(self.value, exp, self.modulus), self.modulus)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Order of `g` in a group whose order has the given factorization.
///
/// Starts from the group order and strips each prime factor while the power
/// stays at the identity.
pub fn mult_order<G: GroupElement>(g: G, group_order: &Factorization) -> Result<u64> {
    if !g.is_unit() {
        let (value, modulus) = g.describe();
        return Err(Error::InvalidElement { value, modulus });
    }
    let n = group_order.value();
    let one = g.identity();
    if g.pow(n) != one {
        return Err(Error::domain(format!(
            "element does not have order dividing the group order {n}"
        )));
    }
    let mut ord = n;
    for &(q, e) in group_order.factors() {
        for _ in 0..e {
            if g.pow(ord / q) == one {
                ord /= q;
            } else {
                break;
            }
        }
    }
    Ok(ord)
}

/// `ord_n g` in `(Z/nZ)^x`.
pub fn ord_mod(g: u64, n: u64) -> Result<u64> {
    let group = factorize(n).totient_factorization();
    mult_order(ModUnit::new(g, n), &group)
}

fn check_odd_modulus(m: u64) -> Result<()> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "modulus {m} must be odd and at least 3"
        )));
    }
    Ok(())
}

/// Whether `2^k = -1 (mod m)` has a solution, given `o = ord_m 2`.
fn reaches_minus_one(m: u64, o: u64) -> bool {
    o.is_multiple_of(2) && pow_mod(2, o / 2, m) == m - 1
}

/// Least `k >= 1` with `2^k = +-1 (mod m)` for odd `m >= 3`.
pub fn ord_prime(m: u64) -> Result<u64> {
    check_odd_modulus(m)?;
    let o = ord_mod(2, m)?;
    Ok(if reaches_minus_one(m, o) { o / 2 } else { o })
}

/// Whether `2^k = -1 (mod m)` is solvable for odd `m >= 3`.
pub fn minus_one_reachable(m: u64) -> Result<bool> {
    check_odd_modulus(m)?;
    Ok(reaches_minus_one(m, ord_mod(2, m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::PrimeField;

    fn brute_order(g: u64, n: u64) -> u64 {
        let mut x = g % n;
        let mut k = 1;
        while x != 1 % n {
            x = x * g % n;
            k += 1;
        }
        k
    }

    fn brute_ord_prime(m: u64) -> u64 {
        (1..)
            .find(|&k| {
                let r = pow_mod(2, k, m);
                r == 1 || r == m - 1
            })
            .unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(ord_mod(2, 11), Ok(10));
        assert_eq!(ord_mod(2, 9), Ok(6));
        assert_eq!(ord_mod(1, 9), Ok(1));
        let f = PrimeField::new(23).unwrap();
        assert_eq!(mult_order(f.elem(2), &factorize(22)), Ok(11));
        assert_eq!(mult_order(f.one(), &factorize(22)), Ok(1));
    }

    #[test]
    fn zero_is_rejected() {
        let f = PrimeField::new(23).unwrap();
        assert_eq!(
            mult_order(f.zero(), &factorize(22)),
            Err(Error::InvalidElement {
                value: 0,
                modulus: 23
            })
        );
        assert!(ord_mod(3, 9).is_err());
    }

    #[test]
    fn wrong_group_order_is_rejected() {
        let f = PrimeField::new(23).unwrap();
        assert!(mult_order(f.elem(5), &factorize(11)).is_err());
    }

    #[test]
    fn ord_prime_examples() {
        assert_eq!(ord_prime(11), Ok(5));
        assert_eq!(ord_prime(9), Ok(3));
        assert_eq!(ord_prime(3), Ok(1));
        assert_eq!(ord_prime(7), Ok(3));
        assert!(ord_prime(8).is_err());
        assert!(ord_prime(1).is_err());
        assert_eq!(minus_one_reachable(11), Ok(true));
        assert_eq!(minus_one_reachable(7), Ok(false));
    }

    #[test]
    fn orders_match_brute_force() {
        for n in 2..400u64 {
            for g in 1..n {
                if gcd(g, n) != 1 {
                    continue;
                }
                let o = ord_mod(g, n).unwrap();
                assert_eq!(o, brute_order(g, n), "g={g} n={n}");
            }
        }
        for m in (3..2000u64).step_by(2) {
            let op = ord_prime(m).unwrap();
            let o = ord_mod(2, m).unwrap();
            assert_eq!(op, brute_ord_prime(m), "m={m}");
            assert!(op == o || 2 * op == o);
        }
    }
}
