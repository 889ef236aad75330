//! The generators: Dickson polynomial evaluation, the degree-2 Dickson map
//! `x -> x^2 - 2`, the logistic map `a -> mu * a * (a + 1)`, orbit extraction and
//! the order-based prediction of tail length and period.

use std::collections::HashMap;

use serde::Serialize;

use crate::ivsets::{self, ParamPoint};
use crate::numtheory::{factorize, mult_order, Fp, Fp2Field, PrimeField};
use crate::{Error, Result};

/// `D_e(x, a)` by a Lucas-style ladder over the pair `(D_k, D_{k+1})`, using
/// `D_{2k} = D_k^2 - 2a^k` and `D_{2k+1} = D_k D_{k+1} - x a^k`.
pub fn dickson_eval(e: u64, x: Fp, a: Fp) -> Fp {
    let two = x.pow(0) + x.pow(0);
    if e == 0 {
        return two;
    }
    // invariant: lo = D_k, hi = D_{k+1}, a_k = a^k
    let mut lo = two;
    let mut hi = x;
    let mut a_k = x.pow(0);
    for bit in (0..64 - e.leading_zeros()).rev() {
        let cross = lo * hi - x * a_k;
        if (e >> bit) & 1 == 1 {
            // k -> 2k + 1
            hi = hi.square() - two * a_k * a;
            lo = cross;
            a_k = a_k.square() * a;
        } else {
            // k -> 2k
            lo = lo.square() - two * a_k;
            hi = cross;
            a_k = a_k.square();
        }
    }
    lo
}

/// Logistic seed to Dickson seed: `s -> 4s + 2`.
pub fn conjugate_seed(s: Fp) -> Fp {
    let one = s.pow(0);
    let two = one + one;
    let four = two + two;
    four * s + two
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GeneratorKind {
    /// `x -> D_2(x, 1) = x^2 - 2`
    DicksonDeg2,
    /// `a -> 4a(a + 1)`, needs `p > 3`
    Logistic,
    /// `a -> mu * a * (a + 1)` for a nonzero control parameter
    LogisticGeneral { mu: u64 },
}

/// A generator over a fixed prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    kind: GeneratorKind,
    field: PrimeField,
    mu: Fp,
}

impl Generator {
    pub fn dickson(field: PrimeField) -> Self {
        Generator {
            kind: GeneratorKind::DicksonDeg2,
            field,
            mu: field.zero(),
        }
    }

    pub fn logistic(field: PrimeField) -> Result<Self> {
        if field.modulus() <= 3 {
            return Err(Error::domain("the logistic generator needs p > 3"));
        }
        Ok(Generator {
            kind: GeneratorKind::Logistic,
            field,
            mu: field.elem(4),
        })
    }

    pub fn logistic_general(field: PrimeField, mu: Fp) -> Result<Self> {
        if field.modulus() <= 3 {
            return Err(Error::domain("the logistic generator needs p > 3"));
        }
        if mu.is_zero() {
            return Err(Error::domain("control parameter must be nonzero"));
        }
        Ok(Generator {
            kind: GeneratorKind::LogisticGeneral { mu: mu.value() },
            field,
            mu,
        })
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn step(&self, s: Fp) -> Fp {
        match self.kind {
            GeneratorKind::DicksonDeg2 => {
                let two = self.field.elem(2);
                s.square() - two
            }
            GeneratorKind::Logistic | GeneratorKind::LogisticGeneral { .. } => {
                self.mu * s * (s + self.field.one())
            }
        }
    }

    /// The infinite sequence `s_0, s_1, ...`.
    pub fn iter(&self, seed: Fp) -> impl Iterator<Item = Fp> + '_ {
        std::iter::successors(Some(seed), move |&s| Some(self.step(s)))
    }

    /// Exact tail and cycle of the orbit of `seed`, found by first-repeat
    /// detection. `max_steps` bounds the number of map applications; the orbit
    /// always closes within `p` of them.
    pub fn orbit(&self, seed: Fp, max_steps: usize) -> Result<OrbitReport> {
        let mut seen: HashMap<u64, usize> = HashMap::new();
        let mut states = Vec::new();
        let mut s = seed;
        loop {
            if let Some(&start) = seen.get(&s.value()) {
                let cycle = states.split_off(start);
                return Ok(OrbitReport {
                    tail: states,
                    cycle,
                });
            }
            if states.len() >= max_steps {
                return Err(Error::BudgetExhausted(max_steps));
            }
            seen.insert(s.value(), states.len());
            states.push(s);
            s = self.step(s);
        }
    }
}

/// Tail and cycle of an eventually periodic orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub tail: Vec<Fp>,
    pub cycle: Vec<Fp>,
}

impl OrbitReport {
    pub fn tail_length(&self) -> usize {
        self.tail.len()
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }
}

/// Which closed form the prediction should use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedClass {
    /// Seed in the initial-value set; uses a hyperbola preimage of the seed.
    IvSet,
    /// Any seed; uses a root of `X^2 - (4s+2) X + 1` on the Dickson side.
    Any,
}

/// Dickson-side seeds sitting on the edges `0 -> -2 -> 2 -> 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegenerateSeed {
    Zero,
    MinusTwo,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPrediction {
    pub tail_length: u64,
    pub period: u64,
    /// Multiplicative order of the parameter the prediction was derived from.
    pub order: u64,
    pub degenerate: Option<DegenerateSeed>,
}

fn split_two_power(mut n: u64) -> (u32, u64) {
    let e = n.trailing_zeros();
    n >>= e;
    (e, n)
}

fn period_from_odd_part(m: u64) -> Result<u64> {
    if m == 1 {
        Ok(1)
    } else {
        crate::numtheory::ord_prime(m)
    }
}

/// Predicted `(tail length, period)` of the logistic sequence seeded at `seed`
/// (`mu = 4`, `p > 3`).
pub fn predict_orbit(field: PrimeField, seed: Fp, class: SeedClass) -> Result<OrbitPrediction> {
    if field.modulus() <= 3 {
        return Err(Error::domain("period prediction needs p > 3"));
    }
    match class {
        SeedClass::IvSet => predict_iv_seed(field, seed),
        SeedClass::Any => predict_dickson_orbit(field, conjugate_seed(seed)),
    }
}

fn predict_iv_seed(field: PrimeField, seed: Fp) -> Result<OrbitPrediction> {
    let t = ivsets::phi_preimage(field, seed)?;
    let p = field.modulus();
    let order = match t {
        ParamPoint::Split(t) => mult_order(t, &factorize(p - 1))?,
        ParamPoint::Torus(t) => mult_order(t, &factorize(p + 1))?,
    };
    let (e, m) = split_two_power(order);
    Ok(OrbitPrediction {
        tail_length: if e == 0 { 0 } else { (e - 1) as u64 },
        period: period_from_odd_part(m)?,
        order,
        degenerate: None,
    })
}

/// Predicted `(tail length, period)` of the degree-2 Dickson sequence seeded at `x0`,
/// from the order `2^e * m` of a root of `X^2 - x0 X + 1`: tail `e`, period `ord'_m 2`.
pub fn predict_dickson_orbit(field: PrimeField, x0: Fp) -> Result<OrbitPrediction> {
    let p = field.modulus();
    let two = field.elem(2);
    let degenerate = if x0.is_zero() {
        Some(DegenerateSeed::Zero)
    } else if x0 == two {
        Some(DegenerateSeed::Two)
    } else if x0 == -two {
        Some(DegenerateSeed::MinusTwo)
    } else {
        None
    };
    let half = two.inv().expect("p is odd");
    let disc = x0.square() - two * two;
    let order = match field.legendre(disc) {
        0 => {
            // double root x0/2 = +-1
            let root = x0 * half;
            if root.is_one() {
                1
            } else {
                2
            }
        }
        1 => {
            let r = field.sqrt(disc).expect("residue has a root");
            let root = (x0 + r) * half;
            mult_order(root, &factorize(p - 1))?
        }
        _ => {
            // roots are conjugate, hence of norm one, in the order p + 1 subgroup
            let ext = Fp2Field::new(field);
            let ratio = disc * ext.non_residue().inv().expect("nonzero");
            let c1 = field.sqrt(ratio).expect("disc / ns is a residue");
            let root = ext.from_base_pair(x0 * half, c1 * half);
            mult_order(root, &factorize(p + 1))?
        }
    };
    let (e, m) = split_two_power(order);
    Ok(OrbitPrediction {
        tail_length: e as u64,
        period: period_from_odd_part(m)?,
        order,
        degenerate,
    })
}

/// Preimages of `a` under the `mu = 4` logistic map, i.e. the roots of
/// `4x^2 + 4x - a`, in increasing order.
pub fn logistic_preimages(field: PrimeField, a: Fp) -> Vec<Fp> {
    let one = field.one();
    match field.sqrt(a + one) {
        None => Vec::new(),
        Some(r) if r.is_zero() => vec![-(one + one).inv().expect("p odd")],
        Some(r) => {
            let half = (one + one).inv().expect("p odd");
            let mut v = vec![(r - one) * half, (-r - one) * half];
            v.sort();
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// Unrolls the defining recurrence D_e = x D_{e-1} - a D_{e-2}.
    fn dickson_recurrence(e: u64, x: Fp, a: Fp) -> Fp {
        let two = x.pow(0) + x.pow(0);
        let (mut prev, mut cur) = (two, x);
        if e == 0 {
            return two;
        }
        for _ in 1..e {
            let next = x * cur - a * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn dickson_examples() {
        let k = f(23);
        assert_eq!(dickson_eval(0, k.elem(5), k.one()), k.elem(2));
        assert_eq!(dickson_eval(2, k.elem(3), k.one()), k.elem(7));
        let composed = dickson_eval(2, dickson_eval(3, k.elem(3), k.one()), k.one());
        assert_eq!(dickson_eval(6, k.elem(3), k.one()), composed);
        assert_eq!(dickson_recurrence(6, k.elem(3), k.one()), composed);
    }

    #[test]
    fn ladder_matches_recurrence() {
        for p in [5u64, 23, 101, 65537] {
            let k = f(p);
            for x in [0u64, 1, 2, 3, 17, p - 1, p - 2] {
                for a in [0u64, 1, 2, 5, p - 1] {
                    for e in 0..60 {
                        let (x, a) = (k.elem(x), k.elem(a));
                        assert_eq!(
                            dickson_eval(e, x, a),
                            dickson_recurrence(e, x, a),
                            "p={p} e={e}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn step_examples() {
        let lm23 = Generator::logistic(f(23)).unwrap();
        assert_eq!(lm23.step(f(23).one()).value(), 8);
        let lm17 = Generator::logistic(f(17)).unwrap();
        assert_eq!(lm17.step(f(17).elem(12)).value(), 12);
        let d = Generator::dickson(f(23));
        assert_eq!(d.step(f(23).elem(2)).value(), 2);
        assert_eq!(d.step(f(23).zero()), -f(23).elem(2));
    }

    #[test]
    fn conjugate_seed_examples() {
        assert_eq!(conjugate_seed(f(23).one()).value(), 6);
        assert_eq!(conjugate_seed(f(17).elem(12)).value(), 16);
        let lm = Generator::logistic(f(23)).unwrap();
        let d = Generator::dickson(f(23));
        let a: Vec<_> = lm.iter(f(23).one()).take(10).map(conjugate_seed).collect();
        let b: Vec<_> = d.iter(f(23).elem(6)).take(10).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn orbit_examples() {
        let lm = Generator::logistic(f(23)).unwrap();
        let o = lm.orbit(f(23).one(), 23).unwrap();
        assert!(o.tail.is_empty());
        let cyc: Vec<u64> = o.cycle.iter().map(|x| x.value()).collect();
        assert_eq!(cyc, vec![1, 8, 12, 3, 2]);

        let lm = Generator::logistic(f(17)).unwrap();
        let o = lm.orbit(f(17).elem(3), 17).unwrap();
        let cyc: Vec<u64> = o.cycle.iter().map(|x| x.value()).collect();
        assert_eq!(cyc, vec![3, 14, 7]);
        assert_eq!(lm.orbit(f(17).elem(12), 17).unwrap().period(), 1);
    }

    #[test]
    fn orbit_budget() {
        let lm = Generator::logistic(f(23)).unwrap();
        assert_eq!(lm.orbit(f(23).one(), 3), Err(Error::BudgetExhausted(3)));
        assert!(lm.orbit(f(23).one(), 5).is_ok());
    }

    #[test]
    fn orbit_with_tail() {
        // 0 -> -2 -> 2 -> 2 on the Dickson side
        let d = Generator::dickson(f(13));
        let o = d.orbit(f(13).zero(), 13).unwrap();
        assert_eq!(o.tail_length(), 2);
        assert_eq!(o.period(), 1);
        assert_eq!(o.cycle[0].value(), 2);
    }

    #[test]
    fn constructor_checks() {
        assert!(Generator::logistic(f(3)).is_err());
        assert!(Generator::logistic_general(f(7), f(7).zero()).is_err());
        let g = Generator::logistic_general(f(7), f(7).elem(3)).unwrap();
        assert_eq!(g.step(f(7).elem(2)).value(), 3 * 2 * 3 % 7);
        assert!(g.orbit(f(7).elem(2), 7).is_ok());
    }

    #[test]
    fn prediction_examples() {
        let p = predict_orbit(f(23), f(23).elem(2), SeedClass::IvSet).unwrap();
        assert_eq!(p.order, 11);
        assert_eq!((p.tail_length, p.period), (0, 5));
        let p = predict_orbit(f(17), f(17).elem(12), SeedClass::IvSet).unwrap();
        assert_eq!((p.tail_length, p.period), (0, 1));
        assert!(predict_orbit(f(23), f(23).elem(4), SeedClass::IvSet).is_err());
    }

    #[test]
    fn degenerate_dickson_seeds_are_flagged() {
        let k = f(13);
        let p = predict_dickson_orbit(k, k.elem(2)).unwrap();
        assert_eq!(
            (p.tail_length, p.period, p.degenerate),
            (0, 1, Some(DegenerateSeed::Two))
        );
        let p = predict_dickson_orbit(k, -k.elem(2)).unwrap();
        assert_eq!(
            (p.tail_length, p.period, p.degenerate),
            (1, 1, Some(DegenerateSeed::MinusTwo))
        );
        let p = predict_dickson_orbit(k, k.zero()).unwrap();
        assert_eq!(
            (p.tail_length, p.period, p.degenerate),
            (2, 1, Some(DegenerateSeed::Zero))
        );
        // logistic seeds 0 and -1 land on the fixed point 2 and on -2
        let p = predict_orbit(k, k.zero(), SeedClass::Any).unwrap();
        assert_eq!(p.degenerate, Some(DegenerateSeed::Two));
        let p = predict_orbit(k, -k.one(), SeedClass::Any).unwrap();
        assert_eq!(p.degenerate, Some(DegenerateSeed::MinusTwo));
    }

    #[test]
    fn preimages_match_scan() {
        for p in [5u64, 7, 13, 23, 101] {
            let k = f(p);
            let lm = Generator::logistic(k).unwrap();
            for a in k.elements() {
                let scan: Vec<Fp> = k.elements().filter(|&x| lm.step(x) == a).collect();
                assert_eq!(logistic_preimages(k, a), scan);
            }
        }
    }
}
