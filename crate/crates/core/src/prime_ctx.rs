//! Prime enumeration and per-prime tables.
//!
//! A [`PrimeCtx`] holds everything the registry needs about one prime at one
//! working precision. Tables are built once, in `O(p)` p-adic operations, and
//! are read-only afterwards.

use crate::error::{Error, Result};
use crate::padic::{checked_pow, inv_mod_pk, is_prime, mul_mod, PadicRat, Residue, MAX_WORK};

/// Primes `q` with `max(lo, 4) < q <= hi`, ascending.
pub fn sieve_primes(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 5 || hi <= lo {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2usize;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    let start = lo.max(4) as usize + 1;
    (start..=n)
        .filter(|&q| !composite[q])
        .map(|q| q as u64)
        .collect()
}

/// Precomputed tables for one prime `p > 3` at working precision `work`.
#[derive(Debug, Clone)]
pub struct PrimeCtx {
    p: u64,
    work: u32,
    modulus: u128,
    /// `inv[i] = 1/i mod p^work` for `1 <= i <= 2p`, `None` at multiples of `p`.
    inv: Vec<Option<Residue>>,
    h1: Vec<PadicRat>,
    h2: Vec<PadicRat>,
    cbc: Vec<PadicRat>,
    cat: Vec<PadicRat>,
    fact: Vec<u128>,
    inv_fact: Vec<u128>,
}

impl PrimeCtx {
    /// Builds every table for `p` at precision `work`.
    pub fn build(p: u64, work: u32) -> Result<Self> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::Config(format!("{p} is not a prime greater than 3")));
        }
        if work == 0 || work > MAX_WORK {
            return Err(Error::Config(format!(
                "working precision must lie in 1..={MAX_WORK}"
            )));
        }
        // the unit of cbc[k] for k > (p-1)/2 still needs p^work, and 1/p^2 appears in H2
        let modulus = checked_pow(p, work)
            .ok_or_else(|| Error::Config(format!("{p}^{work} does not fit below 2^127")))?;
        let pu = p as usize;

        let inv: Vec<Option<Residue>> = (0..=2 * pu)
            .map(|i| {
                if i == 0 || i % pu == 0 {
                    None
                } else {
                    let v = inv_mod_pk(i as u128, p, work).expect("coprime index");
                    Some(Residue::from_parts(p, work, modulus, v))
                }
            })
            .collect();

        let recip = |i: usize, power: i64| -> PadicRat {
            match inv[i] {
                Some(r) => {
                    let u = r.value();
                    let u = if power == 2 {
                        mul_mod(u, u, modulus)
                    } else {
                        u
                    };
                    PadicRat::from_parts(p, 0, u, work).expect("unit")
                }
                // i == p: 1/p or 1/p^2
                None => PadicRat::one(p, work).shift(-power),
            }
        };

        let top = 2 * pu - 2;
        let mut h1 = Vec::with_capacity(top + 1);
        let mut h2 = Vec::with_capacity(top + 1);
        h1.push(PadicRat::exact_zero(p));
        h2.push(PadicRat::exact_zero(p));
        for n in 1..=top {
            h1.push(h1[n - 1] + recip(n, 1));
            h2.push(h2[n - 1] + recip(n, 2));
        }

        // binom(2(k+1), k+1) = binom(2k, k) * 2(2k+1) / (k+1)
        let mut cbc = Vec::with_capacity(pu);
        cbc.push(PadicRat::one(p, work));
        for k in 0..pu - 1 {
            let step = PadicRat::from_int(p, work, 2 * (2 * k as i128 + 1)) * recip(k + 1, 1);
            cbc.push(cbc[k] * step);
        }
        let cat = cbc
            .iter()
            .enumerate()
            .map(|(k, c)| *c * recip(k + 1, 1))
            .collect();

        let mut fact = vec![1u128; pu];
        for k in 1..pu {
            fact[k] = mul_mod(fact[k - 1], k as u128, modulus);
        }
        let mut inv_fact = vec![1u128; pu];
        inv_fact[pu - 1] = inv_mod_pk(fact[pu - 1], p, work).expect("(p-1)! is a unit");
        for k in (1..pu).rev() {
            inv_fact[k - 1] = mul_mod(inv_fact[k], k as u128, modulus);
        }

        Ok(Self {
            p,
            work,
            modulus,
            inv,
            h1,
            h2,
            cbc,
            cat,
            fact,
            inv_fact,
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn work(&self) -> u32 {
        self.work
    }

    /// `p^work`.
    #[inline]
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// `(p - 1) / 2`.
    #[inline]
    pub fn half(&self) -> usize {
        (self.p as usize - 1) / 2
    }

    /// `1/i mod p^work` for `1 <= i <= 2p` not divisible by `p`.
    pub fn inv(&self, i: usize) -> Result<Residue> {
        match self.inv.get(i) {
            Some(Some(r)) => Ok(*r),
            Some(None) if i > 0 => Err(Error::NotAUnit),
            _ => Err(Error::IndexOutOfRange {
                index: i,
                max: self.inv.len() - 1,
            }),
        }
    }

    /// `1/i` as a p-adic value, valid for `1 <= i <= 2p` (including `i = p`, `2p`).
    pub fn recip(&self, i: usize) -> PadicRat {
        match self.inv[i] {
            Some(r) => PadicRat::from_parts(self.p, 0, r.value(), self.work).expect("unit"),
            None => {
                let half = if i == 2 * self.p as usize {
                    PadicRat::from_frac(self.p, self.work, 1, 2).expect("2 is a unit")
                } else {
                    PadicRat::one(self.p, self.work)
                };
                half.shift(-1)
            }
        }
    }

    /// The exact integer `z` at this working precision.
    #[inline]
    pub fn int(&self, z: i128) -> PadicRat {
        PadicRat::from_int(self.p, self.work, z)
    }

    /// The exact fraction `a/b` at this working precision.
    pub fn frac(&self, a: i128, b: i128) -> PadicRat {
        PadicRat::from_frac(self.p, self.work, a, b).expect("non-zero denominator")
    }

    pub fn zero(&self) -> PadicRat {
        PadicRat::exact_zero(self.p)
    }

    /// `H_n` (order 1) or `H_n^(2)` (order 2) for `0 <= n <= 2p - 2`.
    pub fn harmonic(&self, n: usize, order: u32) -> Result<PadicRat> {
        let table = match order {
            1 => &self.h1,
            2 => &self.h2,
            _ => return Err(Error::UnsupportedIndex(order as i64)),
        };
        table.get(n).copied().ok_or(Error::IndexOutOfRange {
            index: n,
            max: table.len() - 1,
        })
    }

    /// `H_n`, panicking outside `0..=2p-2`.
    #[inline]
    pub fn h(&self, n: usize) -> PadicRat {
        self.h1[n]
    }

    /// `H_n^(2)`, panicking outside `0..=2p-2`.
    #[inline]
    pub fn h2(&self, n: usize) -> PadicRat {
        self.h2[n]
    }

    /// `binom(2k, k)` for `0 <= k <= p - 1`.
    #[inline]
    pub fn cbc(&self, k: usize) -> PadicRat {
        self.cbc[k]
    }

    /// Catalan number `C_k = binom(2k,k)/(k+1)` for `0 <= k <= p - 1`.
    #[inline]
    pub fn catalan(&self, k: usize) -> PadicRat {
        self.cat[k]
    }

    /// `H_{p-1} / p`, known to absolute precision `work - 1`.
    pub fn fermat_style_quotient(&self) -> PadicRat {
        self.h1[self.p as usize - 1].shift(-1)
    }

    /// `binom(n, k) mod p^work` for `0 <= k <= n < p`.
    #[inline]
    pub fn binom_small(&self, n: usize, k: usize) -> u128 {
        if k > n {
            return 0;
        }
        let m = self.modulus;
        mul_mod(
            mul_mod(self.fact[n], self.inv_fact[k], m),
            self.inv_fact[n - k],
            m,
        )
    }

    /// Wraps a raw value `< p^work` as a residue of this context.
    #[inline]
    pub fn residue(&self, value: u128) -> Residue {
        Residue::from_parts(self.p, self.work, self.modulus, value % self.modulus)
    }
}
