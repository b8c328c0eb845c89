//! Special values modulo `p`: Bernoulli numbers, `B_{p-2}(1/3)`, Euler numbers
//! and the two quadratic characters that appear in the congruences.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::padic::{PadicRat, Residue};
use crate::prime_ctx::PrimeCtx;

/// `(p/3)`: `+1` when `p = 1 mod 3`, `-1` when `p = 2 mod 3`.
pub fn legendre_p3(p: u64) -> i8 {
    if p % 3 == 1 {
        1
    } else {
        -1
    }
}

/// `(-1/p)`: `+1` when `p = 1 mod 4`, else `-1`.
pub fn legendre_minus1(p: u64) -> i8 {
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Factorials and inverse factorials mod `p` up to `p - 1`.
fn factorials_mod_p(p: u64) -> (Vec<u64>, Vec<u64>) {
    let n = p as usize;
    let mut f = vec![1u64; n];
    for k in 1..n {
        f[k] = f[k - 1] * k as u64 % p;
    }
    let mut fi = vec![1u64; n];
    fi[n - 1] = pow_mod_u64(f[n - 1], p - 2, p);
    for k in (1..n).rev() {
        fi[k - 1] = fi[k] * k as u64 % p;
    }
    (f, fi)
}

/// `B_n mod p` for `n = 0` or even `2 <= n <= p - 3`.
///
/// Uses `sum_{j<p} j^n = p B_n (mod p^2)`, valid for even `n` in that range.
pub fn bernoulli_mod_p(ctx: &PrimeCtx, n: u64) -> Result<Residue> {
    let p = ctx.p();
    if n == 0 {
        return Residue::new(p, 1, 1);
    }
    if n % 2 == 1 || n + 3 > p {
        return Err(Error::UnsupportedIndex(n as i64));
    }
    let p2 = p * p;
    let s = (1..p).fold(0u64, |acc, j| (acc + pow_mod_u64(j, n, p2)) % p2);
    debug_assert_eq!(s % p, 0);
    Residue::new(p, 1, (s / p) as i128)
}

/// `B_{p-2}(1/3) mod p`, computed as `-2 H^(2)_{t-1}` with `t = 1/3 mod p`.
///
/// `B_n(t) - B_n = n sum_{j<t} j^(n-1)` for integer `t`, `B_{p-2} = 0`, and
/// `j^(p-3) = j^(-2) mod p`.
pub fn bernoulli_third(ctx: &PrimeCtx) -> Residue {
    let p = ctx.p();
    let t = if p % 3 == 1 {
        (2 * p + 1) / 3
    } else {
        (p + 1) / 3
    };
    let h = ctx
        .h2(t as usize - 1)
        .reduce(1)
        .expect("H^(2)_{t-1} is p-integral");
    -(h + h)
}

/// `B_{p-2}(1/3) mod p` by expanding `sum_j binom(p-2, j) B_j 3^(j-(p-2))`.
///
/// `O(p^2 log p)`; used to cross-check [`bernoulli_third`].
pub fn bernoulli_third_direct(ctx: &PrimeCtx) -> Result<Residue> {
    let p = ctx.p();
    let n = p - 2;
    let (f, fi) = factorials_mod_p(p);
    let binom = |k: u64| f[n as usize] * fi[k as usize] % p * fi[(n - k) as usize] % p;
    let third = pow_mod_u64(3, p - 2, p);
    let mut acc = 0u64;
    for j in 0..=n {
        let b = match j {
            0 => 1,
            1 => p - pow_mod_u64(2, p - 2, p),
            _ if j % 2 == 1 => continue,
            _ => bernoulli_mod_p(ctx, j)?.value() as u64,
        };
        let term = binom(j) * b % p * pow_mod_u64(third, n - j, p) % p;
        acc = (acc + term) % p;
    }
    Residue::new(p, 1, acc as i128)
}

/// `E_0, E_2, ..., E_{p-3} mod p` from `sum_{j<=k} binom(2k, 2j) E_{2j} = 0`, `E_0 = 1`.
pub fn euler_table_mod_p(ctx: &PrimeCtx) -> Vec<Residue> {
    let p = ctx.p();
    let top = ((p - 3) / 2) as usize;
    let (f, fi) = factorials_mod_p(p);
    let mut e = vec![0u64; top + 1];
    e[0] = 1;
    for k in 1..=top {
        let n = 2 * k;
        let mut s = 0u64;
        for (j, ej) in e.iter().enumerate().take(k) {
            let b = f[n] * fi[2 * j] % p * fi[n - 2 * j] % p;
            s = (s + b * ej) % p;
        }
        e[k] = (p - s) % p;
    }
    e.into_iter()
        .map(|v| Residue::new(p, 1, v as i128).expect("valid prime"))
        .collect()
}

/// `E_{p-3} mod p`.
pub fn euler_mod_p(ctx: &PrimeCtx) -> Residue {
    *euler_table_mod_p(ctx).last().expect("table starts at E_0")
}

/// Special values attached to one prime.
#[derive(Debug, Clone)]
pub struct SpecialValues {
    pub p: u64,
    pub chi3: i8,
    pub chi4: i8,
    pub bern_p2_third: Residue,
    pub bern: BTreeMap<u64, Residue>,
    /// `None` when Euler-dependent checks were disabled for this prime.
    pub euler_pm3: Option<Residue>,
}

impl SpecialValues {
    /// Computes the values used by the registry: `B_{p-3}`, `B_{p-5}`,
    /// `B_{p-2}(1/3)` and optionally `E_{p-3}`.
    pub fn compute(ctx: &PrimeCtx, with_euler: bool) -> Result<Self> {
        let p = ctx.p();
        let mut bern = BTreeMap::new();
        for n in [p - 3, p - 5] {
            bern.insert(n, bernoulli_mod_p(ctx, n)?);
        }
        Ok(Self {
            p,
            chi3: legendre_p3(p),
            chi4: legendre_minus1(p),
            bern_p2_third: bernoulli_third(ctx),
            bern,
            euler_pm3: with_euler.then(|| euler_mod_p(ctx)),
        })
    }

    pub fn bernoulli(&self, n: u64) -> Result<Residue> {
        self.bern
            .get(&n)
            .copied()
            .ok_or(Error::UnsupportedIndex(n as i64))
    }

    /// `B_n` as a p-adic value; `B_0 = 1` is exact, the rest are known mod `p`.
    pub fn bernoulli_padic(&self, n: u64, work: u32) -> Result<PadicRat> {
        if n == 0 {
            return Ok(PadicRat::one(self.p, work));
        }
        self.bernoulli(n).map(PadicRat::from_residue)
    }

    pub fn bernoulli_third_padic(&self) -> PadicRat {
        PadicRat::from_residue(self.bern_p2_third)
    }

    pub fn euler_padic(&self) -> Result<PadicRat> {
        self.euler_pm3
            .map(PadicRat::from_residue)
            .ok_or_else(|| Error::Config("Euler number was not computed for this prime".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> PrimeCtx {
        PrimeCtx::build(p, 3).unwrap()
    }

    #[test]
    fn characters() {
        assert_eq!(legendre_p3(5), -1);
        assert_eq!(legendre_p3(7), 1);
        assert_eq!(legendre_p3(13), 1);
        assert_eq!(legendre_minus1(5), 1);
        assert_eq!(legendre_minus1(7), -1);
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli_mod_p(&ctx(5), 2).unwrap().value(), 1);
        // -1/30 mod 7: 30 = 2, 1/2 = 4, -4 = 3
        assert_eq!(bernoulli_mod_p(&ctx(7), 4).unwrap().value(), 3);
        assert_eq!(bernoulli_mod_p(&ctx(5), 0).unwrap().value(), 1);
        assert_eq!(bernoulli_mod_p(&ctx(7), 3), Err(Error::UnsupportedIndex(3)));
        assert_eq!(bernoulli_mod_p(&ctx(7), 6), Err(Error::UnsupportedIndex(6)));
    }

    #[test]
    fn bernoulli_third_examples() {
        assert_eq!(bernoulli_third(&ctx(5)).value(), 3);
        assert_eq!(bernoulli_third(&ctx(7)).value(), 6);
        let c = ctx(11);
        assert_eq!(bernoulli_third(&c), bernoulli_third_direct(&c).unwrap());
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_mod_p(&ctx(5)).value(), 4);
        assert_eq!(euler_mod_p(&ctx(7)).value(), 5);
        assert_eq!(euler_mod_p(&ctx(11)).value(), 1385 % 11);
    }

    #[test]
    fn special_values_bundle() {
        let c = ctx(5);
        let sv = SpecialValues::compute(&c, false).unwrap();
        assert!(sv.euler_pm3.is_none());
        assert!(sv.euler_padic().is_err());
        assert_eq!(sv.bernoulli_padic(0, 3).unwrap(), PadicRat::one(5, 3));
        assert_eq!(sv.bernoulli(2).unwrap().value(), 1);
        assert!(sv.bernoulli(4).is_err());
    }
}
