//! Exact arithmetic over `F_p` and `F_{p^2}` and the integer routines the rest of
//! the crate leans on.
//!
//! Moduli are capped at 63 bits so that sums of two reduced residues never
//! overflow a `u64`; products go through 128-bit intermediates.

mod field;
mod fp2;
mod order;
mod primes;

pub use field::{jacobi, legendre, mul_mod, pow_mod, Fp, PrimeField};
pub use fp2::{fp2_context, Fp2, Fp2Field};
pub use order::{minus_one_reachable, mult_order, ord_mod, ord_prime, GroupElement, ModUnit};
pub use primes::{factorize, is_prime, primes_in_range, Factorization};

/// Largest modulus accepted by [`PrimeField::new`].
pub const MAX_MODULUS: u64 = (1 << 63) - 1;
