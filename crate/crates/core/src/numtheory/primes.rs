use std::sync::OnceLock;

use super::field::{mul_mod, pow_mod};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

// Sufficient for a deterministic answer on every n < 2^64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// All primes in `[lo, hi)` by a sieve of Eratosthenes; meant for `hi` up to a few times `10^7`.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi <= 2 || lo >= hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n];
    let mut i = 2;
    while i * i < n {
        if !composite[i] {
            for j in (i * i..n).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    (lo.max(2) as usize..n)
        .filter(|&k| !composite[k])
        .map(|k| k as u64)
        .collect()
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds from arbitrary pairs, merging repeated primes. The primes are not re-checked.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let mut f = Factorization::default();
        for (q, e) in pairs {
            f.push(q, e);
        }
        f
    }

    fn push(&mut self, q: u64, e: u32) {
        if e == 0 {
            return;
        }
        match self.factors.binary_search_by_key(&q, |&(r, _)| r) {
            Ok(i) => self.factors[i].1 += e,
            Err(i) => self.factors.insert(i, (q, e)),
        }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The factored integer. Panics if it does not fit in a `u64`.
    pub fn value(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &(q, e)| {
            acc.checked_mul(q.checked_pow(e).unwrap()).unwrap()
        })
    }

    pub fn multiply(&self, other: &Factorization) -> Factorization {
        let mut out = self.clone();
        for &(q, e) in &other.factors {
            out.push(q, e);
        }
        out
    }

    /// Euler's totient of the factored integer.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(q, e)| acc * q.pow(e - 1) * (q - 1))
    }

    /// Factorization of the totient, assembled from the factorizations of `q - 1`.
    pub fn totient_factorization(&self) -> Factorization {
        let mut out = Factorization::default();
        for &(q, e) in &self.factors {
            out.push(q, e - 1);
            for &(r, k) in factorize(q - 1).factors() {
                out.push(r, k);
            }
        }
        out
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(q, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= q;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Factorization of a divisor `d` of the factored integer.
    pub fn restrict_to_divisor(&self, mut d: u64) -> Factorization {
        let mut out = Factorization::default();
        for &(q, _) in &self.factors {
            let mut e = 0;
            while d.is_multiple_of(q) {
                d /= q;
                e += 1;
            }
            out.push(q, e);
        }
        debug_assert_eq!(d, 1, "not a divisor");
        out
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One nontrivial factor of an odd composite `n` by Pollard rho with Brent's
/// cycle detection. Polynomials `x^2 + c` are tried for `c = 1, 2, ...` from a
/// fixed start, so the result is reproducible.
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    let f = |x: u64, c: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    for c in 1..n {
        let mut y = 2u64;
        let mut x = y;
        let mut ys = y;
        let mut g = 1u64;
        let mut r = 1u64;
        let mut q = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // the batch overshot; replay one step at a time
            loop {
                ys = f(ys, c);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted all polynomials for {n}")
}

fn factor_large(n: u64, out: &mut Factorization) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n, 1);
        return;
    }
    let d = pollard_brent(n);
    factor_large(d, out);
    factor_large(n / d, out);
}

/// Complete factorization: trial division by primes up to 10^6, Pollard rho for the rest.
/// `factorize(0)` and `factorize(1)` are both empty.
pub fn factorize(mut n: u64) -> Factorization {
    let mut out = Factorization::default();
    if n <= 1 {
        return out;
    }
    for &q in small_primes() {
        if q * q > n {
            break;
        }
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push(q, e);
        }
    }
    factor_large(n, &mut out);
    out
}
