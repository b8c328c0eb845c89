//! Residue arithmetic modulo `p^m` and finite-precision p-adic rationals.
//!
//! Two value types live here:
//!
//! * [`Residue`] is an element of `Z/p^m Z` with a least non-negative
//!   canonical representative.
//! * [`PadicRat`] is a p-adic number `u * p^v + O(p^(v+n))` with a unit `u`
//!   known to `n` digits. Sums that cancel every known digit become
//!   "zero to precision" values, kept distinct from an exact zero.
//!
//! Moduli are carried in `u128` and must stay below `2^127`, which keeps
//! `a + b` overflow free for reduced operands.

mod exact;
mod rat;
mod residue;

pub use exact::{exact_valuation, padic_from_exact, reduce_exact, val_p_bigint, ExactRational};
pub use rat::{sum_padic, PadicRat, Repr};
pub use residue::Residue;

use crate::error::{Error, Result};

/// Largest supported working precision (p-adic digits).
pub const MAX_WORK: u32 = 8;

const MODULUS_LIMIT: u128 = 1u128 << 127;

/// `p^e`, or `None` when it reaches `2^127`.
pub fn checked_pow(p: u64, e: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p as u128)?;
        if acc >= MODULUS_LIMIT {
            return None;
        }
    }
    Some(acc)
}

/// Validates a `(p, m)` pair and returns `p^m`.
pub(crate) fn modulus_for(p: u64, m: u32) -> Result<u128> {
    if p <= 3 {
        return Err(Error::Config(format!("prime must exceed 3, got {p}")));
    }
    if m == 0 || m > MAX_WORK {
        return Err(Error::Config(format!(
            "modulus exponent must lie in 1..={MAX_WORK}, got {m}"
        )));
    }
    checked_pow(p, m).ok_or_else(|| Error::Config(format!("{p}^{m} does not fit below 2^127")))
}

#[inline]
pub(crate) fn ppow(p: u64, e: u32) -> u128 {
    (p as u128).pow(e)
}

#[inline]
pub(crate) fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

/// `a * b mod m` for reduced operands and `m < 2^127`.
#[inline]
pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    match a.checked_mul(b) {
        Some(x) => x % m,
        None => mul_mod_slow(a, b, m),
    }
}

#[cold]
fn mul_mod_slow(mut a: u128, mut b: u128, m: u128) -> u128 {
    // double-and-add; every intermediate stays below 2m < 2^128
    let mut acc = 0u128;
    a %= m;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

pub(crate) fn pow_mod(mut base: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `p^k` by Hensel lifting the Fermat inverse mod `p`.
pub(crate) fn inv_mod_pk(a: u128, p: u64, k: u32) -> Option<u128> {
    let pp = p as u128;
    if a.is_multiple_of(pp) {
        return None;
    }
    let modulus = ppow(p, k);
    let a = a % modulus;
    let mut x = pow_mod(a % pp, pp - 2, pp);
    let mut digits = 1;
    while digits < k {
        let ax = mul_mod(a, x, modulus);
        x = mul_mod(x, sub_mod(2 % modulus, ax, modulus), modulus);
        digits *= 2;
    }
    Some(x % modulus)
}

/// Splits a non-zero `z` as `p^v * w` with `p` not dividing `w`.
pub(crate) fn split_i128(mut z: i128, p: u64) -> (u32, i128) {
    debug_assert!(z != 0);
    let pp = p as i128;
    let mut v = 0;
    while z % pp == 0 {
        z /= pp;
        v += 1;
    }
    (v, z)
}

/// Splits a non-zero `z` as `p^v * w` with `p` not dividing `w`.
pub(crate) fn split_u128(mut z: u128, p: u64) -> (u32, u128) {
    debug_assert!(z != 0);
    let pp = p as u128;
    let mut v = 0;
    while z.is_multiple_of(pp) {
        z /= pp;
        v += 1;
    }
    (v, z)
}

/// Canonical residue of a signed integer modulo `m`.
#[inline]
pub(crate) fn reduce_i128(z: i128, m: u128) -> u128 {
    if z >= 0 {
        (z as u128) % m
    } else {
        let r = z.unsigned_abs() % m;
        if r == 0 {
            0
        } else {
            m - r
        }
    }
}

/// Deterministic trial-division primality test, adequate for the sweep sizes.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
