//! Verification engine for prime congruences built from harmonic numbers and
//! central binomial coefficients.
//!
//! The crate is organised bottom-up:
//!
//! * [`padic`]: residues modulo `p^m` and finite-precision p-adic rationals.
//! * [`prime_ctx`]: prime sieve and per-prime tables (inverses, `H_n`,
//!   `H_n^(2)`, `binom(2k,k)`, Catalan numbers).
//! * [`special`]: Bernoulli and Euler numbers mod `p`, `B_{p-2}(1/3)` and the
//!   quadratic characters `(p/3)`, `(-1/p)`.
//! * [`sequences`]: exact and modular generators for `C_n`, `f_n`, `g_n`,
//!   `h_n` and the polynomial `g_n(x)`.
//! * [`identities`]: exact checkers for the binomial identities.
//! * [`congruences`]: the registry of congruences, verdicts and the
//!   brute-force rational oracle.
//! * [`runner`]: batch sweeps over primes and report emission.

pub mod congruences;
pub mod error;
pub mod identities;
pub mod padic;
pub mod par;
pub mod prime_ctx;
pub mod runner;
pub mod sequences;
pub mod special;

pub use error::{Error, Result};
