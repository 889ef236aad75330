//! Degree-2 Dickson and logistic-map pseudorandom generators over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`numtheory`]: arithmetic in `F_p` and `F_{p^2}`, Legendre symbol, primality,
//!   factorization and multiplicative orders.
//! - [`generator`]: the generators, orbit extraction and analytic period prediction.
//! - [`ivsets`]: the long-period initial-value sets and their hyperbola parametrizations.
//! - [`diagram`]: cycle census of the logistic map on the initial-value sets,
//!   maximal primes, safe and 2-safe primes.
//! - [`lcp`]: linear complexity profiles and their closed-form lower bounds.
//! - [`cli`]: the `lmgen` command-line surface and sweep experiments.

pub mod cli;
pub mod diagram;
mod error;
pub mod generator;
pub mod ivsets;
pub mod lcp;
pub mod numtheory;

pub use error::{Error, Result};
pub use numtheory::{Fp, Fp2, Fp2Field, PrimeField};
