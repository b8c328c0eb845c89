//! Exact checkers for the binomial and harmonic identities the congruence
//! proofs rely on. Every check compares two exact rationals; there is no
//! tolerance.
//!
//! Polynomial identities in `x` are certified by sampling strictly more
//! integer points than the degree bound.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::padic::ExactRational;
use crate::par;

/// Outcome of one identity check at one parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityResult {
    pub id: &'static str,
    pub params: Vec<i64>,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub pass: bool,
}

impl IdentityResult {
    fn new(id: &'static str, params: Vec<i64>, lhs: ExactRational, rhs: ExactRational) -> Self {
        let pass = lhs == rhs;
        Self {
            id,
            params,
            lhs,
            rhs,
            pass,
        }
    }
}

const TABLE_MIN: i64 = -160;
const TABLE_MAX: i64 = 160;
const TABLE_K: i64 = 110;

fn table() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // binom(z, k) = binom(z-1, k-1) + binom(z-1, k) holds for every integer z
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity((TABLE_MAX - TABLE_MIN + 1) as usize);
        rows.push((0..=TABLE_K).map(|k| falling_binom(TABLE_MIN, k)).collect());
        for _ in TABLE_MIN + 1..=TABLE_MAX {
            let prev = rows.last().unwrap();
            let mut row = Vec::with_capacity(prev.len());
            row.push(BigInt::one());
            for k in 1..prev.len() {
                row.push(&prev[k - 1] + &prev[k]);
            }
            rows.push(row);
        }
        rows
    })
}

fn falling_binom(z: i64, k: i64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= z - i;
        den *= i + 1;
    }
    num / den
}

/// Generalised binomial `z(z-1)...(z-k+1)/k!`, zero for negative `k`.
pub fn gbinom(z: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if (TABLE_MIN..=TABLE_MAX).contains(&z) && k <= TABLE_K {
        return table()[(z - TABLE_MIN) as usize][k as usize].clone();
    }
    falling_binom(z, k)
}

fn int(z: BigInt) -> ExactRational {
    ExactRational::from_integer(z)
}

fn frac(a: i64, b: i64) -> ExactRational {
    ExactRational::new(a.into(), b.into())
}

/// `H_n` as an exact rational.
pub fn harmonic_exact(n: u64) -> ExactRational {
    (1..=n as i64).map(|k| frac(1, k)).sum()
}

/// Chu-Vandermonde: `sum_k binom(x,k) binom(y,n-k) = binom(x+y,n)`.
pub fn check_chu_vandermonde(n: i64, x: i64, y: i64) -> IdentityResult {
    let lhs: BigInt = (0..=n).map(|k| gbinom(x, k) * gbinom(y, n - k)).sum();
    IdentityResult::new(
        "chu_vandermonde",
        vec![n, x, y],
        int(lhs),
        int(gbinom(x + y, n)),
    )
}

/// `sum_k binom(n,k)^2 H_k = binom(2n,n) (2 H_n - H_{2n})`.
pub fn check_squared_harmonic(n: i64) -> IdentityResult {
    let lhs: ExactRational = (0..=n)
        .map(|k| {
            let b = gbinom(n, k);
            int(&b * &b) * harmonic_exact(k as u64)
        })
        .sum();
    let two_h = harmonic_exact(n as u64) * ExactRational::from_integer(2.into());
    let rhs = int(gbinom(2 * n, n)) * (two_h - harmonic_exact(2 * n as u64));
    IdentityResult::new("squared_harmonic", vec![n], lhs, rhs)
}

/// `sum_k (-1)^k binom(n,k) binom(2k,k) = (-1)^n sum_k binom(n,2k) binom(2k,k)`.
pub fn check_alternating(n: i64) -> IdentityResult {
    let lhs: BigInt = (0..=n)
        .map(|k| {
            let t = gbinom(n, k) * gbinom(2 * k, k);
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum();
    let s: BigInt = (0..=n / 2)
        .map(|k| gbinom(n, 2 * k) * gbinom(2 * k, k))
        .sum();
    let rhs = if n % 2 == 0 { s } else { -s };
    IdentityResult::new("alternating", vec![n], int(lhs), int(rhs))
}

/// `sum_{k<=n} binom(x+k, m) = binom(n+x+1, m+1) - binom(x, m+1)`.
pub fn check_hockey(n: i64, m: i64, x: i64) -> IdentityResult {
    let lhs: BigInt = (0..=n).map(|k| gbinom(x + k, m)).sum();
    let rhs = gbinom(n + x + 1, m + 1) - gbinom(x, m + 1);
    IdentityResult::new("hockey_stick", vec![n, m, x], int(lhs), int(rhs))
}

/// `sum_k binom(n,k)^2 binom(x+k, 2n) = binom(x,n)^2`.
pub fn check_square_identity(n: i64, x: i64) -> IdentityResult {
    let lhs: BigInt = (0..=n)
        .map(|k| {
            let b = gbinom(n, k);
            &b * &b * gbinom(x + k, 2 * n)
        })
        .sum();
    let b = gbinom(x, n);
    IdentityResult::new("square_binomial", vec![n, x], int(lhs), int(&b * &b))
}

/// Right-hand side `G(x)` of the degree-`2n+1` identity below.
fn telescoping_sum(n: i64, x: i64) -> ExactRational {
    let s: BigInt = (0..=n)
        .map(|k| {
            let b = gbinom(x, k);
            BigInt::from(2 * x - 3 * k) * &b * &b * gbinom(2 * k, k)
        })
        .sum();
    ExactRational::new(s, BigInt::from(4 * n + 2) * gbinom(2 * n, n))
}

/// `sum_k binom(n,k)^2 binom(x+k, 2n+1)
///    = (1/((4n+2) binom(2n,n))) sum_k (2x-3k) binom(x,k)^2 binom(2k,k)`.
pub fn check_odd_square_binomial(n: i64, x: i64) -> IdentityResult {
    let lhs: BigInt = (0..=n)
        .map(|k| {
            let b = gbinom(n, k);
            &b * &b * gbinom(x + k, 2 * n + 1)
        })
        .sum();
    IdentityResult::new("odd_square_binomial", vec![n, x], int(lhs), telescoping_sum(n, x))
}

/// The telescoping step `G(x+1) - G(x) = binom(x,n)^2` for the right-hand side above.
pub fn check_telescoping_step(n: i64, x: i64) -> IdentityResult {
    let lhs = telescoping_sum(n, x + 1) - telescoping_sum(n, x);
    let b = gbinom(x, n);
    IdentityResult::new("telescoping_step", vec![n, x], lhs, int(&b * &b))
}

/// Rearrangement over `k = 1..N-1`:
/// `sum binom(2k,k) H_{2k}/k = 2 sum binom(2k,k) H_k/k - sum (1/k) sum_j binom(k,j)^2 H_j`.
pub fn check_rearrangement(upper: i64) -> IdentityResult {
    let mut lhs = ExactRational::zero();
    let mut first = ExactRational::zero();
    let mut second = ExactRational::zero();
    for k in 1..upper {
        let c = int(gbinom(2 * k, k)) / frac(k, 1);
        lhs += &c * harmonic_exact(2 * k as u64);
        first += &c * harmonic_exact(k as u64);
        let inner: ExactRational = (1..=k)
            .map(|j| {
                let b = gbinom(k, j);
                int(&b * &b) * harmonic_exact(j as u64)
            })
            .sum();
        second += inner / frac(k, 1);
    }
    let rhs = first * frac(2, 1) - second;
    IdentityResult::new("rearrangement", vec![upper], lhs, rhs)
}

/// Consecutive integer sample points starting at `-max_abs`, covering
/// `[-max_abs, max_abs]` and extended upwards until there are more points
/// than `degree`.
pub fn sample_points(degree: usize, max_abs: i64) -> Vec<i64> {
    let count = (2 * max_abs as usize + 1).max(degree + 1);
    (0..count as i64).map(|i| i - max_abs).collect()
}

/// Parameter ranges for a full identity sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Envelope {
    pub max_n: i64,
    pub max_abs_x: i64,
    pub max_m: i64,
}

impl Default for Envelope {
    fn default() -> Self {
        Self {
            max_n: 50,
            max_abs_x: 50,
            max_m: 10,
        }
    }
}

/// Pass counts per identity plus every failing instance.
#[derive(Debug, Clone, Default)]
pub struct EnvelopeReport {
    pub counts: BTreeMap<&'static str, (usize, usize)>,
    pub failures: Vec<IdentityResult>,
}

impl EnvelopeReport {
    fn record(&mut self, r: IdentityResult) {
        let e = self.counts.entry(r.id).or_default();
        e.1 += 1;
        if r.pass {
            e.0 += 1;
        } else {
            self.failures.push(r);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total(&self) -> usize {
        self.counts.values().map(|c| c.1).sum()
    }
}

/// Runs every checker over the envelope, parallel across `n` when enabled.
pub fn run_envelope(env: Envelope, exec: par::Execution) -> EnvelopeReport {
    let ns: Vec<i64> = (0..=env.max_n).collect();
    let per_n: Vec<Vec<IdentityResult>> = par::map(exec, &ns, |&n| {
        let mut out = Vec::new();
        let xs = -env.max_abs_x..=env.max_abs_x;
        for x in xs.clone() {
            for y in xs.clone() {
                out.push(check_chu_vandermonde(n, x, y));
            }
            for m in 0..=env.max_m {
                out.push(check_hockey(n, m, x));
            }
        }
        out.push(check_squared_harmonic(n));
        out.push(check_alternating(n));
        for x in sample_points(2 * n as usize, env.max_abs_x) {
            out.push(check_square_identity(n, x));
        }
        for x in sample_points(2 * n as usize + 1, env.max_abs_x) {
            out.push(check_odd_square_binomial(n, x));
            out.push(check_telescoping_step(n, x));
        }
        if n >= 2 {
            out.push(check_rearrangement(n));
        }
        out
    });
    let mut report = EnvelopeReport::default();
    for r in per_n.into_iter().flatten() {
        report.record(r);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> ExactRational {
        frac(a, b)
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(gbinom(-2, 2), BigInt::from(3));
        assert_eq!(gbinom(-1, 5), BigInt::from(-1));
        assert_eq!(gbinom(4, 7), BigInt::zero());
        assert_eq!(gbinom(1000, 2), BigInt::from(499500));
        assert_eq!(gbinom(3, -1), BigInt::zero());
    }

    #[test]
    fn chu_vandermonde_examples() {
        let r = check_chu_vandermonde(2, 2, 2);
        assert!(r.pass);
        assert_eq!(r.lhs, q(6, 1));
        let r = check_chu_vandermonde(2, -1, -1);
        assert!(r.pass);
        assert_eq!(r.rhs, q(3, 1));
        let r = check_chu_vandermonde(3, 5, -2);
        assert!(r.pass);
        assert_eq!(r.rhs, q(1, 1));
    }

    #[test]
    fn squared_harmonic_examples() {
        let r = check_squared_harmonic(2);
        assert_eq!((r.lhs.clone(), r.pass), (q(11, 2), true));
        let r = check_squared_harmonic(0);
        assert_eq!((r.lhs.clone(), r.pass), (q(0, 1), true));
        assert!(check_squared_harmonic(5).pass);
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(check_alternating(2).lhs, q(3, 1));
        assert_eq!(check_alternating(1).rhs, q(-1, 1));
        assert_eq!(check_alternating(0).lhs, q(1, 1));
        assert!([0, 1, 2, 9].iter().all(|&n| check_alternating(n).pass));
    }

    #[test]
    fn hockey_examples() {
        assert_eq!(check_hockey(2, 1, 0).lhs, q(3, 1));
        assert_eq!(check_hockey(3, 2, 1).rhs, q(10, 1));
        let r = check_hockey(1, 0, -3);
        assert_eq!((r.lhs.clone(), r.pass), (q(2, 1), true));
    }

    #[test]
    fn square_identity_examples() {
        assert_eq!(check_square_identity(1, 3).lhs, q(9, 1));
        assert_eq!(check_square_identity(1, 0).rhs, q(0, 1));
        let r = check_square_identity(2, 4);
        assert_eq!((r.lhs.clone(), r.pass), (q(36, 1), true));
    }

    #[test]
    fn odd_square_binomial_examples() {
        let r = check_odd_square_binomial(1, 2);
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (q(1, 1), q(1, 1)));
        let r = check_odd_square_binomial(1, 0);
        assert_eq!((r.lhs.clone(), r.pass), (q(0, 1), true));
        assert!(check_odd_square_binomial(2, 5).pass);
        assert!(check_telescoping_step(3, -7).pass);
    }

    #[test]
    fn rearrangement_examples() {
        let r = check_rearrangement(3);
        assert_eq!((r.lhs.clone(), r.pass), (q(3, 1) + q(25, 4), true));
        let r = check_rearrangement(2);
        assert_eq!((r.lhs.clone(), r.pass), (q(3, 1), true));
        assert!(check_rearrangement(6).pass);
    }

    #[test]
    fn a_wrong_identity_is_caught() {
        // perturbing the right-hand side must break equality
        let r = check_square_identity(2, 4);
        assert_ne!(r.lhs, r.rhs + q(1, 1));
    }

    #[test]
    fn sample_point_counts() {
        assert_eq!(sample_points(100, 50).len(), 101);
        assert_eq!(sample_points(101, 50).len(), 102);
        assert_eq!(sample_points(3, 1), vec![-1, 0, 1, 2]);
    }

    #[test]
    fn small_envelope() {
        let rep = run_envelope(
            Envelope {
                max_n: 6,
                max_abs_x: 8,
                max_m: 4,
            },
            par::Execution::Sequential,
        );
        assert!(rep.all_pass(), "{:?}", rep.failures.first());
        assert_eq!(rep.counts["rearrangement"], (5, 5));
    }
}
