//! Cycle structure of the logistic map on the initial-value sets.
//!
//! Write `m = (p - 1)/2` when `p = 3 (mod 4)` and `m = (p + 1)/2` when
//! `p = 1 (mod 4)`. For each divisor `d != 1` of the odd number `m` the state
//! diagram on the initial-value set carries `phi(d) / (2 ord'_d 2)` cycles of
//! period `ord'_d 2`.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::generator::Generator;
use crate::ivsets::{build_iv_set, IvClass};
use crate::numtheory::{
    factorize, is_prime, mult_order, pow_mod, Factorization, ModUnit, PrimeField,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub d: u64,
    pub ord_d_2: u64,
    pub phi_d: u64,
    /// Number of cycles contributed by `d`.
    pub n_d: u64,
    /// Their common period.
    pub c_d: u64,
    /// Whether `2^k = -1 (mod d)` is solvable. Diagnostic only.
    pub minus_one_reachable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub p: u64,
    pub m: u64,
    pub class: IvClass,
    pub rows: Vec<CensusRow>,
}

impl CycleCensus {
    pub fn total_cycles(&self) -> u64 {
        self.rows.iter().map(|r| r.n_d).sum()
    }

    /// Number of initial values covered, `sum n_d c_d`.
    pub fn covered(&self) -> u64 {
        self.rows.iter().map(|r| r.n_d * r.c_d).sum()
    }

    /// `period -> number of cycles`.
    pub fn period_multiset(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for r in &self.rows {
            *out.entry(r.c_d).or_insert(0) += r.n_d;
        }
        out
    }

    /// Mean cycle length, each cycle weighted equally.
    pub fn mean_period_per_cycle(&self) -> f64 {
        match self.total_cycles() {
            0 => 0.0,
            n => self.covered() as f64 / n as f64,
        }
    }

    /// Mean period seen from a uniformly random initial value, `sum n_d c_d^2 / sum n_d c_d`.
    pub fn mean_period_per_seed(&self) -> f64 {
        let weighted: u64 = self.rows.iter().map(|r| r.n_d * r.c_d * r.c_d).sum();
        match self.covered() {
            0 => 0.0,
            n => weighted as f64 / n as f64,
        }
    }
}

/// `m` such that the parameter group has order `2m`.
pub fn odd_part_m(p: u64) -> u64 {
    if p % 4 == 3 {
        (p - 1) / 2
    } else {
        p.div_ceil(2)
    }
}

fn row_for_divisor(d: u64, d_factors: &Factorization) -> Result<CensusRow> {
    let phi_d = d_factors.totient();
    let ord_d_2 = mult_order(ModUnit::new(2, d), &d_factors.totient_factorization())?;
    let minus_one_reachable = ord_d_2 % 2 == 0 && pow_mod(2, ord_d_2 / 2, d) == d - 1;
    let c_d = if minus_one_reachable {
        ord_d_2 / 2
    } else {
        ord_d_2
    };
    debug_assert_eq!(phi_d % (2 * c_d), 0);
    Ok(CensusRow {
        d,
        ord_d_2,
        phi_d,
        n_d: phi_d / (2 * c_d),
        c_d,
        minus_one_reachable,
    })
}

/// Predicted cycle structure from the divisors of `m`.
pub fn census(field: PrimeField) -> Result<CycleCensus> {
    let p = field.modulus();
    if p <= 3 {
        return Err(Error::domain("cycle census needs p > 3"));
    }
    let m = odd_part_m(p);
    let m_factors = factorize(m);
    let rows = m_factors
        .divisors()
        .into_iter()
        .filter(|&d| d != 1)
        .map(|d| row_for_divisor(d, &m_factors.restrict_to_divisor(d)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CycleCensus {
        p,
        m,
        class: IvClass::for_prime(p),
        rows,
    })
}

/// Cycles actually traced by the logistic map from every initial value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteCensus {
    pub p: u64,
    /// Each cycle starting from its smallest element, ordered by that element.
    pub cycles: Vec<Vec<u64>>,
}

impl BruteCensus {
    pub fn period_multiset(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for c in &self.cycles {
            *out.entry(c.len() as u64).or_insert(0) += 1;
        }
        out
    }
}

pub fn brute_census(field: PrimeField) -> Result<BruteCensus> {
    let lm = Generator::logistic(field)?;
    let iv = build_iv_set(field)?;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut cycles = Vec::new();
    for &a in &iv.elements {
        if seen.contains(&a.value()) {
            continue;
        }
        let orbit = lm.orbit(a, field.modulus() as usize)?;
        let cycle: Vec<u64> = orbit.cycle.iter().map(|x| x.value()).collect();
        if orbit.tail_length() != 0 || cycle.iter().any(|&x| !iv.contains(field.elem(x))) {
            return Err(Error::domain(format!(
                "orbit of {a} leaves the initial-value set for p = {}",
                field.modulus()
            )));
        }
        seen.extend(cycle.iter().copied());
        cycles.push(cycle);
    }
    Ok(BruteCensus {
        p: field.modulus(),
        cycles,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionBranch {
    /// `ord_{p1} 2 = p1 - 1`
    FullOrder,
    /// `ord_{p1} 2 = (p1 - 1)/2` with `(p1 - 1)/2` odd
    HalfOrderOdd,
    Fails,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub p: u64,
    pub is_maximal: bool,
    /// `(p - 1)/2` or `(p + 1)/2` when that number is prime.
    pub p1: Option<u64>,
    pub condition_branch: ConditionBranch,
    /// `(p1 - 1)/2` for maximal primes.
    pub max_period: Option<u64>,
}

/// Whether the initial-value set of `p` is one single cycle of the logistic map.
pub fn is_maximal_prime(field: PrimeField) -> Result<MaximalityReport> {
    let p = field.modulus();
    if p <= 3 {
        return Err(Error::domain("maximality needs p > 3"));
    }
    let candidate = odd_part_m(p);
    let mut report = MaximalityReport {
        p,
        is_maximal: false,
        p1: None,
        condition_branch: ConditionBranch::Fails,
        max_period: None,
    };
    if !is_prime(candidate) {
        return Ok(report);
    }
    let p1 = candidate;
    report.p1 = Some(p1);
    let ord = mult_order(ModUnit::new(2, p1), &factorize(p1 - 1))?;
    let half = (p1 - 1) / 2;
    report.condition_branch = if ord == p1 - 1 {
        ConditionBranch::FullOrder
    } else if ord == half && half % 2 == 1 {
        ConditionBranch::HalfOrderOdd
    } else {
        ConditionBranch::Fails
    };
    if report.condition_branch != ConditionBranch::Fails {
        report.is_maximal = true;
        report.max_period = Some(half);
    }
    Ok(report)
}

/// Primes `p <= limit` with `p = 2 p1 + 1` and `p1 = 2 p2 + 1`, all three prime.
pub fn two_safe_primes(limit: u64) -> Vec<u64> {
    (2..=limit / 4)
        .filter(|&p2| is_prime(p2))
        .map(|p2| (2 * p2 + 1, 4 * p2 + 3))
        .filter(|&(p1, p)| p <= limit && is_prime(p1) && is_prime(p))
        .map(|(_, p)| p)
        .collect()
}

/// Primes `p <= limit`, `p = 1 (mod 4)`, with `p = 2 p1 - 1` and `p1` a safe prime.
pub fn analogous_two_safe(limit: u64) -> Vec<u64> {
    (2..=limit.saturating_add(1) / 2)
        .filter(|&p1| p1 % 2 == 1 && is_prime(p1) && is_prime((p1 - 1) / 2))
        .map(|p1| 2 * p1 - 1)
        .filter(|&p| p <= limit && p % 4 == 1 && is_prime(p))
        .collect()
}
