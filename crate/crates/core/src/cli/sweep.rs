//! Per-bit-size statistics over primes: share of maximal primes, mean cycle
//! count and mean period on the initial-value set.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{census, is_maximal_prime};
use crate::numtheory::{is_prime, primes_in_range, PrimeField};
use crate::{Error, Result};

pub const DEFAULT_SAMPLE: usize = 200;
pub const DEFAULT_EXHAUSTIVE_MAX_BITS: u32 = 24;
const MAX_BITS: u32 = 62;
const ATTEMPTS_PER_SAMPLE: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Maximal,
    Cycles,
    Periods,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, ValueEnum)]
pub enum PrimeClass {
    #[value(name = "3mod4")]
    #[serde(rename = "3mod4")]
    ThreeMod4,
    #[value(name = "1mod4")]
    #[serde(rename = "1mod4")]
    OneMod4,
}

impl PrimeClass {
    pub fn label(self) -> &'static str {
        match self {
            PrimeClass::ThreeMod4 => "3mod4",
            PrimeClass::OneMod4 => "1mod4",
        }
    }

    fn residue(self) -> u64 {
        match self {
            PrimeClass::ThreeMod4 => 3,
            PrimeClass::OneMod4 => 1,
        }
    }

    fn stream_index(self) -> u64 {
        match self {
            PrimeClass::ThreeMod4 => 0,
            PrimeClass::OneMod4 => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub kind: SweepKind,
    pub n_min: u32,
    pub n_max: u32,
    pub classes: Vec<PrimeClass>,
    pub sample: usize,
    pub seed: u64,
    pub exhaustive_max_bits: u32,
    pub budget: Option<Duration>,
}

impl SweepConfig {
    pub fn new(kind: SweepKind, n_min: u32, n_max: u32) -> Self {
        SweepConfig {
            kind,
            n_min,
            n_max,
            classes: vec![PrimeClass::ThreeMod4, PrimeClass::OneMod4],
            sample: DEFAULT_SAMPLE,
            seed: 0,
            exhaustive_max_bits: DEFAULT_EXHAUSTIVE_MAX_BITS,
            budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub bits: u32,
    pub class: PrimeClass,
    pub sampled: bool,
    pub primes_tested: usize,
    pub pct_maximal: f64,
    /// Mean number of cycles on the initial-value set; only for cycle and period sweeps.
    pub mean_cycles: Option<f64>,
    /// Mean over primes of `sum n_d c_d / sum n_d`.
    pub mean_period_per_cycle: Option<f64>,
    /// Mean over primes of `sum n_d c_d^2 / sum n_d c_d`.
    pub mean_period_per_seed: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// Set when the time budget ran out; names the first group left out.
    pub truncated_at: Option<(u32, PrimeClass)>,
}

struct PrimeStats {
    maximal: bool,
    cycles: Option<(u64, f64, f64)>,
}

fn prime_stats(p: u64, with_census: bool) -> Result<PrimeStats> {
    let field = PrimeField::new(p)?;
    let maximal = is_maximal_prime(field)?.is_maximal;
    let cycles = if with_census {
        let c = census(field)?;
        Some((
            c.total_cycles(),
            c.mean_period_per_cycle(),
            c.mean_period_per_seed(),
        ))
    } else {
        None
    };
    Ok(PrimeStats { maximal, cycles })
}

fn bit_range(bits: u32) -> (u64, u64) {
    (1u64 << (bits - 1), 1u64 << bits)
}

/// Every prime of the class with exactly `bits` bits, excluding 2 and 3.
pub fn exhaustive_primes(bits: u32, class: PrimeClass) -> Vec<u64> {
    let (lo, hi) = bit_range(bits);
    primes_in_range(lo, hi)
        .into_iter()
        .filter(|&p| p > 3 && p % 4 == class.residue())
        .collect()
}

/// `k` distinct primes of the class drawn uniformly from the `bits`-bit range,
/// from a ChaCha8 stream keyed by `(seed, bits, class)`. Returned sorted.
pub fn sampled_primes(bits: u32, class: PrimeClass, k: usize, seed: u64) -> Vec<u64> {
    let (lo, hi) = bit_range(bits);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2 * bits as u64 + class.stream_index());
    let mut picked = BTreeSet::new();
    let mut attempts = 0;
    while picked.len() < k && attempts < k * ATTEMPTS_PER_SAMPLE {
        attempts += 1;
        let c = rng.gen_range(lo..hi);
        if c > 3 && c % 4 == class.residue() && is_prime(c) {
            picked.insert(c);
        }
    }
    picked.into_iter().collect()
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    if cfg.n_min < 3 || cfg.n_min > cfg.n_max || cfg.n_max > MAX_BITS {
        return Err(Error::domain(format!(
            "bit sizes must satisfy 3 <= n_min <= n_max <= {MAX_BITS}"
        )));
    }
    if cfg.classes.is_empty() {
        return Err(Error::domain("no prime class selected"));
    }
    let with_census = cfg.kind != SweepKind::Maximal;
    let deadline = cfg.budget.map(|b| Instant::now() + b);
    let mut rows = Vec::new();
    for bits in cfg.n_min..=cfg.n_max {
        for &class in &cfg.classes {
            let sampled = bits > cfg.exhaustive_max_bits;
            let primes = if sampled {
                sampled_primes(bits, class, cfg.sample, cfg.seed)
            } else {
                exhaustive_primes(bits, class)
            };
            let stats: Vec<Option<Result<PrimeStats>>> = primes
                .par_iter()
                .map(|&p| match deadline {
                    Some(d) if Instant::now() >= d => None,
                    _ => Some(prime_stats(p, with_census)),
                })
                .collect();
            if stats.iter().any(Option::is_none) {
                return Ok(SweepOutcome {
                    rows,
                    truncated_at: Some((bits, class)),
                });
            }
            let stats = stats.into_iter().flatten().collect::<Result<Vec<_>>>()?;
            rows.push(aggregate(bits, class, sampled, &stats));
        }
    }
    Ok(SweepOutcome {
        rows,
        truncated_at: None,
    })
}

fn aggregate(bits: u32, class: PrimeClass, sampled: bool, stats: &[PrimeStats]) -> SweepRow {
    let n = stats.len();
    let mean = |f: &dyn Fn(&PrimeStats) -> Option<f64>| -> Option<f64> {
        let vals: Option<Vec<f64>> = stats.iter().map(f).collect();
        vals.filter(|v| !v.is_empty())
            .map(|v| v.iter().sum::<f64>() / v.len() as f64)
    };
    let maximal = stats.iter().filter(|s| s.maximal).count();
    SweepRow {
        bits,
        class,
        sampled,
        primes_tested: n,
        pct_maximal: if n == 0 {
            0.0
        } else {
            100.0 * maximal as f64 / n as f64
        },
        mean_cycles: mean(&|s| s.cycles.map(|c| c.0 as f64)),
        mean_period_per_cycle: mean(&|s| s.cycles.map(|c| c.1)),
        mean_period_per_seed: mean(&|s| s.cycles.map(|c| c.2)),
    }
}
