//! Linear complexity profiles over `F_p` and the closed-form lower bounds for
//! logistic sequences.
//!
//! Two independent routes to the linear complexity of a periodic sequence are
//! provided: Berlekamp-Massey over two periods, and `T - deg gcd(X^T - 1, s^T(X))`.

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::odd_part_m;
use crate::generator::Generator;
use crate::ivsets::is_iv_member;
use crate::numtheory::{Fp, PrimeField};
use crate::{Error, Result};

/// Slack used when comparing an integer complexity with a bound involving a square root.
pub const BOUND_SLACK: f64 = 1e-9;

/// Incremental Berlekamp-Massey synthesis over `F_p`.
#[derive(Clone, Debug)]
pub struct BerlekampMassey {
    field: PrimeField,
    seq: Vec<Fp>,
    connection: Vec<Fp>,
    previous: Vec<Fp>,
    complexity: usize,
    shift: usize,
    last_discrepancy: Fp,
}

impl BerlekampMassey {
    pub fn new(field: PrimeField) -> Self {
        BerlekampMassey {
            field,
            seq: Vec::new(),
            connection: vec![field.one()],
            previous: vec![field.one()],
            complexity: 0,
            shift: 1,
            last_discrepancy: field.one(),
        }
    }

    /// Feeds the next term and returns `L(S, N)` for the prefix seen so far.
    pub fn push(&mut self, s: Fp) -> usize {
        let n = self.seq.len();
        self.seq.push(s);
        let mut d = s;
        for i in 1..=self.complexity {
            d += self.connection[i] * self.seq[n - i];
        }
        if d.is_zero() {
            self.shift += 1;
            return self.complexity;
        }
        let coef = d * self
            .last_discrepancy
            .inv()
            .expect("stored discrepancy is nonzero");
        let needed = self.previous.len() + self.shift;
        let old = if 2 * self.complexity <= n {
            Some(self.connection.clone())
        } else {
            None
        };
        if self.connection.len() < needed {
            self.connection.resize(needed, self.field.zero());
        }
        for (i, &b) in self.previous.iter().enumerate() {
            self.connection[i + self.shift] -= coef * b;
        }
        match old {
            Some(old) => {
                self.complexity = n + 1 - self.complexity;
                self.previous = old;
                self.last_discrepancy = d;
                self.shift = 1;
            }
            None => self.shift += 1,
        }
        self.complexity
    }

    pub fn complexity(&self) -> usize {
        self.complexity
    }

    /// Connection polynomial `1 + c_1 X + ... + c_L X^L`.
    pub fn connection(&self) -> &[Fp] {
        &self.connection[..=self.complexity.min(self.connection.len() - 1)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcpProfile {
    pub p: u64,
    /// `profile[N - 1] = L(S, N)`.
    pub profile: Vec<usize>,
    /// Period of the sequence when known.
    pub period: Option<usize>,
}

impl LcpProfile {
    pub fn n_max(&self) -> usize {
        self.profile.len()
    }

    /// `L(S, N)` for `1 <= N <= n_max`.
    pub fn at(&self, n: usize) -> usize {
        self.profile[n - 1]
    }

    /// `L(S, n_max)`; equals `L(S)` once `n_max >= 2T`.
    pub fn linear_complexity(&self) -> usize {
        self.profile.last().copied().unwrap_or(0)
    }
}

/// `L(S, N)` for `N = 1..=n_max` in one pass.
pub fn berlekamp_massey_profile(field: PrimeField, seq: &[Fp], n_max: usize) -> Result<LcpProfile> {
    if seq.len() < n_max {
        return Err(Error::domain(format!(
            "sequence has {} terms, profile requested to {n_max}",
            seq.len()
        )));
    }
    let mut bm = BerlekampMassey::new(field);
    Ok(LcpProfile {
        p: field.modulus(),
        profile: seq[..n_max].iter().map(|&s| bm.push(s)).collect(),
        period: None,
    })
}

/// Profile of the purely periodic sequence with the given cycle, over two periods.
pub fn periodic_profile(field: PrimeField, cycle: &[Fp]) -> Result<LcpProfile> {
    let seq: Vec<Fp> = cycle.iter().chain(cycle).copied().collect();
    let mut profile = berlekamp_massey_profile(field, &seq, seq.len())?;
    profile.period = Some(cycle.len());
    Ok(profile)
}

fn trim(poly: &mut Vec<Fp>) {
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
}

/// Remainder of `a` modulo nonzero `b`; both trimmed.
fn poly_rem(mut a: Vec<Fp>, b: &[Fp]) -> Vec<Fp> {
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("trimmed");
    while a.len() >= b.len() {
        let coef = *a.last().unwrap() * lead_inv;
        let off = a.len() - b.len();
        for (i, &c) in b.iter().enumerate() {
            a[off + i] -= coef * c;
        }
        trim(&mut a);
    }
    a
}

fn poly_gcd_degree(mut a: Vec<Fp>, mut b: Vec<Fp>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// `T - deg gcd(X^T - 1, s_0 + s_1 X + ... + s_{T-1} X^{T-1})` for one full period.
pub fn lc_via_gcd(field: PrimeField, cycle: &[Fp]) -> Result<usize> {
    let t = cycle.len();
    if t == 0 {
        return Err(Error::domain("cycle must be nonempty"));
    }
    if cycle.iter().all(|c| c.is_zero()) {
        return Ok(0);
    }
    let mut xt_minus_one = vec![field.zero(); t + 1];
    xt_minus_one[0] = -field.one();
    xt_minus_one[t] = field.one();
    Ok(t - poly_gcd_degree(xt_minus_one, cycle.to_vec()))
}

/// `min(N^2, 4T^2) / (16m) - sqrt(m)`.
pub fn bound_lcp1(n: u64, period: u64, m: u64) -> f64 {
    let num = (n as f64 * n as f64).min(4.0 * period as f64 * period as f64);
    num / (16.0 * m as f64) - (m as f64).sqrt()
}

/// `min(sqrt(2N) - 3, L(S))`.
pub fn bound_lcp2(n: u64, linear_complexity: u64) -> f64 {
    ((2.0 * n as f64).sqrt() - 3.0).min(linear_complexity as f64)
}

/// The general degree-`e` Dickson bound, `min(N^2, 4T^2) / (16(p+1)) - sqrt(p+1)`.
pub fn bound_dickson(n: u64, period: u64, p: u64) -> f64 {
    bound_lcp1(n, period, p + 1)
}

/// Negative bound values are shown as zero.
pub fn clamp_for_display(value: f64) -> f64 {
    value.max(0.0)
}

fn satisfies(l: usize, bound: f64) -> bool {
    l as f64 + BOUND_SLACK >= bound
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lcp1,
    Lcp2,
    Dickson,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCurve {
    pub kind: BoundKind,
    /// `(N, raw bound value)`.
    pub values: Vec<(u64, f64)>,
}

impl BoundCurve {
    pub fn lcp1(period: u64, m: u64, n_max: u64) -> Self {
        BoundCurve {
            kind: BoundKind::Lcp1,
            values: (1..=n_max).map(|n| (n, bound_lcp1(n, period, m))).collect(),
        }
    }

    pub fn lcp2(linear_complexity: u64, n_max: u64) -> Self {
        BoundCurve {
            kind: BoundKind::Lcp2,
            values: (1..=n_max)
                .map(|n| (n, bound_lcp2(n, linear_complexity)))
                .collect(),
        }
    }

    pub fn dickson(period: u64, p: u64, n_max: u64) -> Self {
        BoundCurve {
            kind: BoundKind::Dickson,
            values: (1..=n_max)
                .map(|n| (n, bound_dickson(n, period, p)))
                .collect(),
        }
    }

    pub fn clamped(&self) -> Vec<(u64, f64)> {
        self.values
            .iter()
            .map(|&(n, v)| (n, clamp_for_display(v)))
            .collect()
    }
}

/// Smallest `N` from which the first bound stays strictly above the second up to `n_max`.
pub fn crossover(period: u64, m: u64, linear_complexity: u64, n_max: u64) -> Option<u64> {
    let mut start = None;
    for n in 1..=n_max {
        if bound_lcp1(n, period, m) > bound_lcp2(n, linear_complexity) {
            start.get_or_insert(n);
        } else {
            start = None;
        }
    }
    start
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: u64,
    pub l: usize,
    pub lcp1: f64,
    pub lcp2: f64,
    pub dickson: f64,
}

/// A point where the measured complexity falls below a bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub p: u64,
    pub seed: u64,
    pub n: u64,
    pub l: usize,
    pub kind: BoundKind,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub p: u64,
    pub seed: u64,
    pub period: u64,
    pub m: u64,
    pub linear_complexity: u64,
    pub rows: Vec<BoundRow>,
    pub violations: Vec<Violation>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both bounds (and the general Dickson bound) against the profile of
/// the logistic sequence from an initial-value seed, for `N = 1..=n_max`.
/// Sequence terms past the first period wrap around the cycle.
pub fn verify_bounds(field: PrimeField, seed: Fp, n_max: u64) -> Result<BoundReport> {
    let p = field.modulus();
    if p <= 3 || !is_iv_member(field, seed) {
        return Err(Error::domain(format!(
            "{seed} is not in the initial-value set for p = {p}"
        )));
    }
    let checker = CycleBoundChecker::new(field, seed)?;
    let t = checker.cycle.len();
    let m = checker.m;
    let l_s = checker.linear_complexity;
    let mut bm = BerlekampMassey::new(field);
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut violations = Vec::new();
    for n in 1..=n_max {
        let l = bm.push(checker.cycle[(n as usize - 1) % t]);
        let row = BoundRow {
            n,
            l,
            lcp1: bound_lcp1(n, t as u64, m),
            lcp2: bound_lcp2(n, l_s),
            dickson: bound_dickson(n, t as u64, p),
        };
        for (kind, bound) in [
            (BoundKind::Lcp1, row.lcp1),
            (BoundKind::Lcp2, row.lcp2),
            (BoundKind::Dickson, row.dickson),
        ] {
            if !satisfies(l, bound) {
                violations.push(Violation {
                    p,
                    seed: seed.value(),
                    n,
                    l,
                    kind,
                    bound,
                });
            }
        }
        rows.push(row);
    }
    Ok(BoundReport {
        p,
        seed: seed.value(),
        period: t as u64,
        m,
        linear_complexity: l_s,
        rows,
        violations,
    })
}

/// Shares the period and `L(S)` of one logistic cycle between all of its
/// rotations, which are exactly the sequences seeded on that cycle.
#[derive(Clone, Debug)]
pub struct CycleBoundChecker {
    field: PrimeField,
    cycle: Vec<Fp>,
    m: u64,
    linear_complexity: u64,
}

impl CycleBoundChecker {
    pub fn new(field: PrimeField, seed: Fp) -> Result<Self> {
        let lm = Generator::logistic(field)?;
        let orbit = lm.orbit(seed, field.modulus() as usize)?;
        // bounds are evaluated on the purely periodic part
        let cycle = orbit.cycle;
        let linear_complexity = lc_via_gcd(field, &cycle)? as u64;
        Ok(CycleBoundChecker {
            field,
            cycle,
            m: odd_part_m(field.modulus()),
            linear_complexity,
        })
    }

    pub fn cycle(&self) -> &[Fp] {
        &self.cycle
    }

    pub fn period(&self) -> u64 {
        self.cycle.len() as u64
    }

    pub fn linear_complexity(&self) -> u64 {
        self.linear_complexity
    }

    /// Violations of the two bounds over `N = 1..=n_max` for the rotation
    /// starting at `offset`. Both bounds are nondecreasing in `N` and so is the
    /// profile, so the scan stops once `L(S, N)` reaches the largest bound value
    /// on the range.
    pub fn check_rotation(&self, offset: usize, n_max: u64) -> Vec<Violation> {
        let t = self.cycle.len();
        let period = t as u64;
        let ceiling =
            bound_lcp1(n_max, period, self.m).max(bound_lcp2(n_max, self.linear_complexity));
        let mut bm = BerlekampMassey::new(self.field);
        let mut out = Vec::new();
        for n in 1..=n_max {
            let l = bm.push(self.cycle[(offset + n as usize - 1) % t]);
            for (kind, bound) in [
                (BoundKind::Lcp1, bound_lcp1(n, period, self.m)),
                (BoundKind::Lcp2, bound_lcp2(n, self.linear_complexity)),
            ] {
                if !satisfies(l, bound) {
                    out.push(Violation {
                        p: self.field.modulus(),
                        seed: self.cycle[offset].value(),
                        n,
                        l,
                        kind,
                        bound,
                    });
                }
            }
            if satisfies(l, ceiling) {
                break;
            }
        }
        out
    }

    /// `check_rotation` for every seed on the cycle, `N <= 2T`.
    pub fn check_all_rotations(&self) -> Vec<Violation> {
        let n_max = 2 * self.period();
        (0..self.cycle.len())
            .into_par_iter()
            .flat_map_iter(|offset| self.check_rotation(offset, n_max))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn seq(field: PrimeField, vals: &[u64]) -> Vec<Fp> {
        vals.iter().map(|&v| field.elem(v)).collect()
    }

    #[test]
    fn trivial_profiles() {
        let k = f(23);
        let zeros = seq(k, &[0; 12]);
        assert!(berlekamp_massey_profile(k, &zeros, 12)
            .unwrap()
            .profile
            .iter()
            .all(|&l| l == 0));
        let consts = seq(k, &[7; 12]);
        assert!(berlekamp_massey_profile(k, &consts, 12)
            .unwrap()
            .profile
            .iter()
            .all(|&l| l == 1));
        assert!(berlekamp_massey_profile(k, &consts, 13).is_err());
    }

    #[test]
    fn connection_polynomial_generates_sequence() {
        // Fibonacci mod 101 has complexity 2 with s_n = s_{n-1} + s_{n-2}
        let k = f(101);
        let mut v = vec![1u64, 1];
        for i in 2..20 {
            v.push((v[i - 1] + v[i - 2]) % 101);
        }
        let s = seq(k, &v);
        let mut bm = BerlekampMassey::new(k);
        for &x in &s {
            bm.push(x);
        }
        assert_eq!(bm.complexity(), 2);
        assert_eq!(bm.connection(), &seq(k, &[1, 100, 100])[..]);
    }

    #[test]
    fn impulse_has_full_complexity() {
        // 0, ..., 0, 1 has L = N
        let k = f(7);
        let s = seq(k, &[0, 0, 0, 0, 1]);
        let prof = berlekamp_massey_profile(k, &s, 5).unwrap();
        assert_eq!(prof.profile, vec![0, 0, 0, 0, 5]);
    }

    #[test]
    fn gcd_route_examples() {
        let k = f(23);
        assert_eq!(lc_via_gcd(k, &seq(k, &[5])).unwrap(), 1);
        assert_eq!(lc_via_gcd(k, &seq(k, &[0, 0, 0])).unwrap(), 0);
        assert!(lc_via_gcd(k, &[]).is_err());
        let cycle = seq(k, &[1, 8, 12, 3, 2]);
        let bm = periodic_profile(k, &cycle).unwrap();
        assert_eq!(lc_via_gcd(k, &cycle).unwrap(), bm.linear_complexity());
        assert!(bm.linear_complexity() <= 5);
    }

    #[test]
    fn bound_examples() {
        // saturated first bound equals T^2/(4m) - sqrt(m)
        let (t, m) = (5u64, 11u64);
        let sat = (t * t) as f64 / (4 * m) as f64 - (m as f64).sqrt();
        assert!((bound_lcp1(2 * t, t, m) - sat).abs() < 1e-12);
        assert!((bound_lcp1(100, t, m) - sat).abs() < 1e-12);
        assert_eq!(bound_lcp2(8, 4), 1.0);
        assert_eq!(bound_lcp2(8, 1), 1.0);
        assert_eq!(bound_lcp2(1_000_000, 17), 17.0);
        assert!(bound_lcp1(1, 1649, 3299) < 0.0);
        assert_eq!(clamp_for_display(bound_lcp1(1, 1649, 3299)), 0.0);
    }

    #[test]
    fn first_bound_dominates_dickson_bound() {
        for (t, m, p) in [(5u64, 11u64, 23u64), (1649, 3299, 6599), (3, 9, 17)] {
            for n in 1..=4 * t {
                assert!(bound_lcp1(n, t, m) >= bound_dickson(n, t, p));
            }
        }
    }

    #[test]
    fn verify_small_cases() {
        let r = verify_bounds(f(23), f(23).one(), 10).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
        assert_eq!(r.period, 5);
        let k = f(13);
        let seed = crate::ivsets::build_iv_set(k).unwrap().elements[0];
        assert!(verify_bounds(k, seed, 12).unwrap().holds());
        assert!(verify_bounds(f(23), f(23).elem(4), 10).is_err());
    }

    #[test]
    fn rotation_check_agrees_with_full_report() {
        let k = f(719);
        let checker = CycleBoundChecker::new(k, k.one()).unwrap();
        assert!(checker.check_all_rotations().is_empty());
        let r = verify_bounds(k, checker.cycle()[3], 2 * checker.period()).unwrap();
        assert!(r.holds());
        assert_eq!(r.linear_complexity, checker.linear_complexity());
        assert_eq!(r.rows.last().unwrap().l as u64, checker.linear_complexity());
    }
}
