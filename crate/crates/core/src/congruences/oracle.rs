//! Exact big-rational recomputation of every registry entry.
//!
//! Nothing here touches modular arithmetic: binomials come from Pascal's
//! triangle, Bernoulli and Euler numbers from their defining recurrences and
//! `B_{p-2}(1/3)` from the binomial expansion of the Bernoulli polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lookup;
use crate::error::{Error, Result};
use crate::padic::{is_prime, ExactRational};

/// Largest prime the oracle accepts.
pub const ORACLE_MAX_P: u64 = 100;

type Q = ExactRational;

/// Exact value of one instance of a registry entry.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleInstance {
    pub index: Option<u64>,
    pub lhs: Q,
    pub rhs: Q,
}

/// Exact tables for one prime.
#[derive(Debug, Clone)]
pub struct ExactOracle {
    p: u64,
    binom: Vec<Vec<BigInt>>,
    h1: Vec<Q>,
    h2: Vec<Q>,
    bern: Vec<Q>,
    bern_third: Q,
    euler_pm3: BigInt,
    g: Vec<BigInt>,
    h: Vec<BigInt>,
}

fn q(z: impl Into<BigInt>) -> Q {
    Q::from_integer(z.into())
}

fn fr(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

fn pascal(rows: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(rows + 1);
    for n in 0..=rows {
        let mut row = vec![BigInt::one(); n + 1];
        for k in 1..n {
            row[k] = &out[n - 1][k - 1] + &out[n - 1][k];
        }
        out.push(row);
    }
    out
}

fn harmonic_table(upto: usize, order: u32) -> Vec<Q> {
    let mut acc = Q::zero();
    let mut out = vec![acc.clone()];
    for k in 1..=upto {
        acc += Q::new(BigInt::one(), BigInt::from(k).pow(order));
        out.push(acc.clone());
    }
    out
}

impl ExactOracle {
    pub fn new(p: u64) -> Result<Self> {
        if p > ORACLE_MAX_P {
            return Err(Error::SizeGuard(format!(
                "oracle limited to p <= {ORACLE_MAX_P}, got {p}"
            )));
        }
        if p <= 3 || !is_prime(p) {
            return Err(Error::Config(format!("{p} is not a prime above 3")));
        }
        let n = p as usize;
        let binom = pascal(2 * n);

        let mut bern: Vec<Q> = vec![Q::one()];
        for m in 1..n {
            let s: Q = (0..m).map(|j| q(binom[m + 1][j].clone()) * &bern[j]).sum();
            bern.push(-s / q(m as i64 + 1));
        }
        let third = fr(1, 3);
        let bern_third: Q = (0..=n - 2)
            .map(|j| q(binom[n - 2][j].clone()) * &bern[j] * third.pow((n - 2 - j) as i32))
            .sum();

        let mut euler: Vec<BigInt> = vec![BigInt::one()];
        for k in 1..=(n - 3) / 2 {
            let s: BigInt = (0..k).map(|j| &binom[2 * k][2 * j] * &euler[j]).sum();
            euler.push(-s);
        }

        let g = (0..n)
            .map(|m| {
                (0..=m)
                    .map(|k| &binom[m][k] * &binom[m][k] * &binom[2 * k][k])
                    .sum()
            })
            .collect();
        let h = (0..n)
            .map(|m| {
                (0..=m)
                    .map(|k| &binom[m][k] * &binom[m][k] * &binom[2 * k][k] / BigInt::from(k + 1))
                    .sum()
            })
            .collect();

        Ok(Self {
            p,
            h1: harmonic_table(2 * n, 1),
            h2: harmonic_table(2 * n, 2),
            euler_pm3: euler[(n - 3) / 2].clone(),
            binom,
            bern,
            bern_third,
            g,
            h,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn n(&self) -> usize {
        self.p as usize
    }

    fn pq(&self) -> Q {
        q(self.p as i64)
    }

    fn cbc(&self, k: usize) -> Q {
        q(self.binom[2 * k][k].clone())
    }

    fn chi3(&self) -> Q {
        q(if self.p % 3 == 1 { 1 } else { -1 })
    }

    fn chi4(&self) -> Q {
        q(if self.p % 4 == 1 { 1 } else { -1 })
    }

    fn sum_range(&self, range: impl Iterator<Item = usize>, f: impl Fn(usize) -> Q) -> Q {
        range.map(f).sum()
    }

    fn a1(&self, upto: usize) -> Q {
        self.sum_range(1..=upto, |k| self.cbc(k) / q(k as i64))
    }

    fn q2(&self, upto: usize) -> Q {
        self.sum_range(1..=upto, |k| self.cbc(k) / q((k * k) as i64))
    }

    fn t11(&self, upto: usize) -> Q {
        self.sum_range(1..=upto, |k| self.cbc(k) / q(k as i64) * &self.h1[k])
    }

    fn t12(&self, upto: usize) -> Q {
        self.sum_range(1..=upto, |k| self.cbc(k) / q(k as i64) * &self.h1[2 * k])
    }

    fn r_sum(&self) -> Q {
        self.sum_range(1..=(self.n() - 1) / 2, |k| {
            fr(2, 1) / (q((k * k) as i64) * self.cbc(k))
        })
    }

    fn cor_lhs(&self) -> Q {
        self.sum_range(1..self.n(), |k| {
            self.cbc(k) / q(k as i64) * (q(4) * &self.h1[2 * k] - q(7) * &self.h1[k])
        })
    }

    fn c3h_term(&self, k: usize, c: i64) -> Q {
        Q::one() - q(c) * self.pq() * self.pq() * &self.h2[k]
    }

    /// `sum g` and `sum h` run over `1 <= k <= p - 1`.
    pub fn sum_g(&self) -> Q {
        self.g[1..].iter().cloned().map(q).sum()
    }

    pub fn sum_h(&self) -> Q {
        self.h[1..].iter().cloned().map(q).sum()
    }

    fn g_at(&self, m: usize, x: &BigInt) -> BigInt {
        let mut pw = BigInt::one();
        let mut acc = BigInt::zero();
        for k in 0..=m {
            acc += &self.binom[m][k] * &self.binom[m][k] * &self.binom[2 * k][k] * &pw;
            pw *= x;
        }
        acc
    }

    /// Exact instances of a registry entry, in the same order as the modular evaluator.
    pub fn instances(&self, id: &str, x_samples: &[u128]) -> Result<Vec<OracleInstance>> {
        lookup(id)?;
        let n = self.n();
        let half = (n - 1) / 2;
        let p = self.pq();
        let single = |lhs: Q, rhs: Q| {
            vec![OracleInstance {
                index: None,
                lhs,
                rhs,
            }]
        };
        let at = |i: usize, lhs: Q, rhs: Q| OracleInstance {
            index: Some(i as u64),
            lhs,
            rhs,
        };
        let bt = self.chi3() * &self.bern_third;
        let out = match id {
            "W.HARM1" => single(self.h1[n - 1].clone(), Q::zero()),
            "W.HARM2" => single(self.h2[n - 1].clone(), Q::zero()),
            "W.CBC" => single(q(self.binom[2 * n - 1][n - 1].clone()), Q::one()),
            "ST10" => single(self.a1(n - 1), fr(8, 9) * &p * &p * &self.bern[n - 3]),
            "S11B.HALF" => single(
                self.a1(half),
                -(self.chi4() * fr(8, 3) * &p * q(self.euler_pm3.clone())),
            ),
            "T1.1" => single(self.t11(n - 1), fr(1, 3) * &bt),
            "T1.2" => single(self.t12(n - 1), fr(7, 12) * &bt),
            "COR1.3" => single(self.cor_lhs(), Q::zero()),
            "CONJ1" => single(
                self.cor_lhs(),
                q(-14) * &self.h1[n - 1] / &p + fr(278, 15) * p.pow(3) * &self.bern[n - 5],
            ),
            "P2.A" => (1..n)
                .map(|k| {
                    let sign = if k % 2 == 1 { q(1) } else { q(-1) };
                    let rhs = sign * &p / q(k as i64) * (Q::one() - &p * &self.h1[k - 1]);
                    at(k, q(self.binom[n][k].clone()), rhs)
                })
                .collect(),
            "P2.B" => (1..n)
                .map(|j| {
                    let lhs: BigInt = (j..n)
                        .map(|k| &self.binom[k][j] * &self.binom[k - 1][j - 1])
                        .sum();
                    at(
                        j,
                        q(lhs),
                        q(self.binom[2 * n - 2 * j - 1][n - 1 - j].clone()),
                    )
                })
                .collect(),
            "P2.C" => (half + 1..n)
                .map(|j| {
                    at(
                        j,
                        q(j as i64) * self.cbc(j) * self.cbc(n - j),
                        q(2 * n as i64),
                    )
                })
                .collect(),
            "P2.D" => (1..n)
                .map(|k| at(k, self.h1[n - k].clone(), &self.h1[k] - fr(1, k as i64)))
                .collect(),
            "P2.E" => single(
                &p * &self.h1[2 * n - 1],
                Q::one() - q(2) * &p * &p * &self.h2[n - 1],
            ),
            "C2.5" => single(
                self.t12(n - 1),
                fr(5, 2) * self.t11(n - 1) - fr(1, 2) * self.q2(n - 1),
            ),
            "C2.6" => {
                let inner = self.sum_range(1..n, |k| {
                    self.cbc(k) / q(k as i64) * (Q::one() - &p * &self.h1[k] + &p / q(k as i64))
                });
                let lhs = -(&p * inner) - q(self.binom[2 * n][n].clone()) + Q::one();
                let half_sum = self.sum_range(1..=half, |k| {
                    let r = fr(1, 2 * k as i64);
                    (Q::one() - &p * (&self.h1[2 * k] - &r)) * r * self.cbc(k)
                });
                single(lhs, -Q::one() + &p * half_sum)
            }
            "C2.7" => single(self.a1(n - 1), Q::zero()),
            "C2.8" => single(
                self.t11(n - 1),
                self.a1(half) / (q(2) * &p) - fr(1, 2) * self.t12(half) + fr(5, 4) * self.q2(half),
            ),
            "C2.9" => single(
                self.t11(n - 1),
                fr(5, 4) * self.q2(n - 1) - fr(1, 2) * self.t12(n - 1),
            ),
            "C2.10" => single(self.q2(n - 1), fr(1, 2) * &bt),
            "C2.HALFEQ" => single(self.q2(n - 1), self.q2(half)),
            "R2.1a" => single(-self.a1(half) / &p, self.r_sum()),
            "R2.1b" => single(
                self.r_sum(),
                self.chi4() * fr(8, 3) * q(self.euler_pm3.clone()),
            ),
            "P3.F" => (1..n)
                .map(|j| {
                    let b = q(self.binom[n - 1][j - 1].clone());
                    at(j, &b * &b, Q::one() - q(2) * &p * &self.h1[j - 1])
                })
                .collect(),
            "T1.6a" => single(self.sum_g() / (&p * &p), fr(5, 8) * &bt),
            "T1.6b" => single(
                self.sum_range(1..n, |k| q(self.g[k].clone()) * &self.h2[k]),
                fr(5, 8) * &bt,
            ),
            "T1.7a" => single(self.sum_h(), fr(3, 4) * &p * &p * &bt),
            "T1.7b" => single(
                self.sum_range(1..n, |k| q(self.h[k].clone()) * &self.h2[k]),
                fr(3, 4) * &bt,
            ),
            "C3.7" => single(
                self.sum_g(),
                &p * &p * self.sum_range(1..n, |k| q(self.g[k].clone()) * &self.h2[k])
                    + fr(7, 6) * p.pow(3) * &self.bern[n - 3],
            ),
            "C3.8" => x_samples
                .iter()
                .map(|&x| {
                    let xb = BigInt::from(x);
                    let lhs = self.sum_range(0..n, |k| q(self.g_at(k, &xb)) * self.c3h_term(k, 1));
                    let rhs = self.sum_range(0..n, |k| {
                        &p / q(2 * k as i64 + 1) * self.c3h_term(k, 2) * q(xb.pow(k as u32))
                    });
                    OracleInstance {
                        index: Some(x as u64),
                        lhs,
                        rhs,
                    }
                })
                .collect(),
            "C3.H" => single(
                self.sum_range(0..n, |k| q(self.h[k].clone()) * self.c3h_term(k, 1)),
                Q::one(),
            ),
            other => return Err(Error::Unknown(other.to_string())),
        };
        Ok(out)
    }

    /// Evaluates an expression name: `sum g`, `sum h`, or `ID LHS|RHS[@index]`.
    ///
    /// `@index` selects an instance of a quantified entry (the sample `x` for
    /// the polynomial entry); without it the first instance is used.
    pub fn value(&self, expr: &str) -> Result<Q> {
        let expr = expr.trim();
        match expr {
            "sum g" => return Ok(self.sum_g()),
            "sum h" => return Ok(self.sum_h()),
            _ => {}
        }
        let bad = || Error::Config(format!("cannot parse oracle expression {expr:?}"));
        let (id, side) = expr.split_once(char::is_whitespace).ok_or_else(bad)?;
        let (side, index) = match side.trim().split_once('@') {
            Some((s, i)) => (s, Some(i.trim().parse::<u64>().map_err(|_| bad())?)),
            None => (side.trim(), None),
        };
        let xs: Vec<u128> = index.map(|i| vec![i as u128]).unwrap_or_else(|| vec![0]);
        let instances = self.instances(id, &xs)?;
        let inst = match index {
            Some(i) => instances.iter().find(|t| t.index == Some(i)),
            None => instances.first(),
        }
        .ok_or_else(|| Error::IndexOutOfRange {
            index: index.unwrap_or(0) as usize,
            max: instances.len(),
        })?;
        match side.to_ascii_uppercase().as_str() {
            "LHS" => Ok(inst.lhs.clone()),
            "RHS" => Ok(inst.rhs.clone()),
            _ => Err(bad()),
        }
    }
}

/// The exact rational value of a named expression at `p <= 100`.
pub fn brute_force_oracle(p: u64, expr: &str) -> Result<Q> {
    ExactOracle::new(p)?.value(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p5_values() {
        let o = ExactOracle::new(5).unwrap();
        assert_eq!(o.value("T1.1 LHS").unwrap(), fr(3973, 72));
        assert_eq!(o.value("T1.2 LHS").unwrap(), fr(3511, 48));
        assert_eq!(o.value("C2.10 LHS").unwrap(), fr(727, 72));
        assert_eq!(o.value("C2.7 LHS").unwrap(), fr(175, 6));
        assert_eq!(o.value("ST10 RHS").unwrap(), fr(100, 27));
        assert_eq!(o.value("sum g").unwrap(), q(750));
        assert_eq!(o.value("sum h").unwrap(), q(225));
        let diff = o.value("CONJ1 LHS").unwrap() - o.value("CONJ1 RHS").unwrap();
        assert_eq!(diff, fr(-173125, 72));
    }

    #[test]
    fn indexed_instances() {
        let o = ExactOracle::new(7).unwrap();
        assert_eq!(o.value("P2.A LHS@3").unwrap(), q(35));
        assert_eq!(o.value("W.CBC lhs").unwrap(), q(1716));
        assert!(o.value("C3.8 LHS@2").is_ok());
        assert!(o.value("P2.A LHS@9").is_err());
        assert!(o.value("P2.A MIDDLE").is_err());
    }

    #[test]
    fn guards() {
        assert!(matches!(
            brute_force_oracle(101, "sum g"),
            Err(Error::SizeGuard(_))
        ));
        assert!(matches!(
            brute_force_oracle(9, "sum g"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            brute_force_oracle(5, "NOPE LHS"),
            Err(Error::Unknown(_))
        ));
    }

    #[test]
    fn special_tables() {
        let o = ExactOracle::new(11).unwrap();
        assert_eq!(o.bern[2], fr(1, 6));
        assert_eq!(o.bern[8], fr(-1, 30));
        assert_eq!(o.euler_pm3, BigInt::from(1385));
        // B_3(x) = x^3 - (3/2)x^2 + x/2
        assert_eq!(ExactOracle::new(5).unwrap().bern_third, fr(1, 27));
    }
}
