use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::residue::bigint_mod;
use super::{
    inv_mod_pk, mul_mod, ppow, reduce_i128, split_i128, split_u128, val_p_bigint, Residue, MAX_WORK,
};
use crate::error::{Error, Result};

/// Internal state of a [`PadicRat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Repr {
    /// The exact value zero.
    ExactZero,
    /// A value known only to be `0 mod p^abs`.
    ZeroTo(i64),
    /// `unit * p^v + O(p^(v+n))`, `unit` coprime to `p` and reduced mod `p^n`.
    Value { v: i64, unit: u128, n: u32 },
}

/// A p-adic rational with finite relative precision.
///
/// Absolute precision `v + n` of a sum is the minimum over its summands;
/// products add valuations and keep the smaller relative precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicRat {
    p: u64,
    repr: Repr,
}

impl PadicRat {
    pub fn exact_zero(p: u64) -> Self {
        Self {
            p,
            repr: Repr::ExactZero,
        }
    }

    pub fn zero_to(p: u64, abs: i64) -> Self {
        Self {
            p,
            repr: Repr::ZeroTo(abs),
        }
    }

    pub fn one(p: u64, work: u32) -> Self {
        Self {
            p,
            repr: Repr::Value {
                v: 0,
                unit: 1,
                n: work,
            },
        }
    }

    /// Builds `unit * p^v` with `n` known digits, checking that `unit` is a unit.
    pub fn from_parts(p: u64, v: i64, unit: u128, n: u32) -> Result<Self> {
        if n == 0 || n > MAX_WORK {
            return Err(Error::Config(format!(
                "relative precision {n} outside 1..={MAX_WORK}"
            )));
        }
        if unit.is_multiple_of(p as u128) {
            return Err(Error::NotAUnit);
        }
        Ok(Self {
            p,
            repr: Repr::Value {
                v,
                unit: unit % ppow(p, n),
                n,
            },
        })
    }

    /// The exact integer `z` with `work` digits of unit.
    pub fn from_int(p: u64, work: u32, z: i128) -> Self {
        if z == 0 {
            return Self::exact_zero(p);
        }
        let (v, w) = split_i128(z, p);
        Self {
            p,
            repr: Repr::Value {
                v: v as i64,
                unit: reduce_i128(w, ppow(p, work)),
                n: work,
            },
        }
    }

    /// `a / b` for machine-sized integers.
    pub fn from_frac(p: u64, work: u32, a: i128, b: i128) -> Result<Self> {
        if b == 0 {
            return Err(Error::DivisionByZero);
        }
        if a == 0 {
            return Ok(Self::exact_zero(p));
        }
        let (va, wa) = split_i128(a, p);
        let (vb, wb) = split_i128(b, p);
        let m = ppow(p, work);
        let inv = inv_mod_pk(reduce_i128(wb, m), p, work).expect("p-free part is a unit");
        let unit = mul_mod(reduce_i128(wa, m), inv, m);
        Ok(Self {
            p,
            repr: Repr::Value {
                v: va as i64 - vb as i64,
                unit,
                n: work,
            },
        })
    }

    /// `a / b` for big integers, at relative precision `work`.
    pub fn from_ratio(p: u64, work: u32, a: &BigInt, b: &BigInt) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_zero() {
            return Ok(Self::exact_zero(p));
        }
        let pb = BigInt::from(p);
        let va = val_p_bigint(a, p);
        let vb = val_p_bigint(b, p);
        let wa = a / pb.pow(va as u32);
        let wb = b / pb.pow(vb as u32);
        let m = ppow(p, work);
        let inv = inv_mod_pk(bigint_mod(&wb, m), p, work).expect("p-free part is a unit");
        let unit = mul_mod(bigint_mod(&wa, m), inv, m);
        Ok(Self {
            p,
            repr: Repr::Value {
                v: va as i64 - vb as i64,
                unit,
                n: work,
            },
        })
    }

    /// Interprets a residue mod `p^m` as a value known to absolute precision `m`.
    pub fn from_residue(r: Residue) -> Self {
        let p = r.p();
        if r.value() == 0 {
            return Self::zero_to(p, r.m() as i64);
        }
        let (v, w) = split_u128(r.value(), p);
        let n = r.m() - v;
        Self {
            p,
            repr: Repr::Value {
                v: v as i64,
                unit: w % ppow(p, n),
                n,
            },
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn repr(&self) -> Repr {
        self.repr
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::ExactZero)
    }

    pub fn is_zero_to_precision(&self) -> bool {
        matches!(self.repr, Repr::ZeroTo(_))
    }

    /// Exact valuation when a non-zero digit is known.
    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Value { v, .. } => Some(v),
            _ => None,
        }
    }

    /// Lower bound on the valuation: exact for known values, the precision for `ZeroTo`.
    pub fn valuation_lower_bound(&self) -> Option<i64> {
        match self.repr {
            Repr::ExactZero => None,
            Repr::ZeroTo(a) => Some(a),
            Repr::Value { v, .. } => Some(v),
        }
    }

    pub fn unit(&self) -> Option<u128> {
        match self.repr {
            Repr::Value { unit, .. } => Some(unit),
            _ => None,
        }
    }

    pub fn rel_precision(&self) -> Option<u32> {
        match self.repr {
            Repr::Value { n, .. } => Some(n),
            _ => None,
        }
    }

    /// `v + n`, or the `ZeroTo` bound; `None` means infinite (exact zero).
    pub fn abs_precision(&self) -> Option<i64> {
        match self.repr {
            Repr::ExactZero => None,
            Repr::ZeroTo(a) => Some(a),
            Repr::Value { v, n, .. } => Some(v + n as i64),
        }
    }

    /// Multiplication by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        let repr = match self.repr {
            Repr::ExactZero => Repr::ExactZero,
            Repr::ZeroTo(a) => Repr::ZeroTo(a + k),
            Repr::Value { v, unit, n } => Repr::Value { v: v + k, unit, n },
        };
        Self { p: self.p, repr }
    }

    /// Multiplication by an exact machine integer.
    pub fn scale(&self, z: i128) -> Self {
        match self.repr {
            Repr::ExactZero => *self,
            _ if z == 0 => Self::exact_zero(self.p),
            Repr::ZeroTo(a) => Self::zero_to(self.p, a + split_i128(z, self.p).0 as i64),
            Repr::Value { v, unit, n } => {
                let (vz, wz) = split_i128(z, self.p);
                let m = ppow(self.p, n);
                let unit = mul_mod(unit, reduce_i128(wz, m), m);
                Self {
                    p: self.p,
                    repr: Repr::Value {
                        v: v + vz as i64,
                        unit,
                        n,
                    },
                }
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self.repr {
            Repr::ExactZero => Err(Error::DivisionByZero),
            Repr::ZeroTo(a) => Err(Error::InsufficientPrecision {
                needed: a + 1,
                available: a,
            }),
            Repr::Value { v, unit, n } => {
                let unit = inv_mod_pk(unit, self.p, n).expect("stored unit is coprime to p");
                Ok(Self {
                    p: self.p,
                    repr: Repr::Value { v: -v, unit, n },
                })
            }
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inv()?)
    }

    /// Canonical residue of the represented value modulo `p^m`.
    pub fn reduce(&self, m: u32) -> Result<Residue> {
        let zero = Residue::new(self.p, m, 0)?;
        match self.repr {
            Repr::ExactZero => Ok(zero),
            Repr::ZeroTo(a) if a >= m as i64 => Ok(zero),
            Repr::ZeroTo(a) => Err(Error::InsufficientPrecision {
                needed: m as i64,
                available: a,
            }),
            Repr::Value { v, .. } if v < 0 => Err(Error::NotPIntegral),
            Repr::Value { v, n, .. } if v + (n as i64) < m as i64 => {
                Err(Error::InsufficientPrecision {
                    needed: m as i64,
                    available: v + n as i64,
                })
            }
            Repr::Value { v, .. } if v >= m as i64 => Ok(zero),
            Repr::Value { v, unit, .. } => {
                let modulus = zero.modulus();
                let scaled = ppow(self.p, v as u32) * (unit % ppow(self.p, m - v as u32));
                Ok(Residue::from_parts(self.p, m, modulus, scaled % modulus))
            }
        }
    }

    /// Drops digits so that absolute precision is at most `abs`.
    fn truncate(&self, abs: i64) -> Self {
        match self.repr {
            Repr::ExactZero => Self::zero_to(self.p, abs),
            Repr::ZeroTo(a) => Self::zero_to(self.p, a.min(abs)),
            Repr::Value { v, unit, n } => {
                let abs = abs.min(v + n as i64);
                if v < abs {
                    let n = (abs - v) as u32;
                    Self {
                        p: self.p,
                        repr: Repr::Value {
                            v,
                            unit: unit % ppow(self.p, n),
                            n,
                        },
                    }
                } else {
                    Self::zero_to(self.p, abs)
                }
            }
        }
    }

    #[inline]
    fn check_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "p-adic values over different primes");
    }
}

impl Add for PadicRat {
    type Output = PadicRat;

    fn add(self, rhs: PadicRat) -> PadicRat {
        self.check_prime(&rhs);
        let p = self.p;
        match (self.repr, rhs.repr) {
            (Repr::ExactZero, _) => rhs,
            (_, Repr::ExactZero) => self,
            (Repr::ZeroTo(a), _) => rhs.truncate(a),
            (_, Repr::ZeroTo(b)) => self.truncate(b),
            (
                Repr::Value {
                    v: v1,
                    unit: u1,
                    n: n1,
                },
                Repr::Value {
                    v: v2,
                    unit: u2,
                    n: n2,
                },
            ) => {
                let ((v1, u1, n1), (v2, u2, n2)) = if v1 <= v2 {
                    ((v1, u1, n1), (v2, u2, n2))
                } else {
                    ((v2, u2, n2), (v1, u1, n1))
                };
                let abs = (v1 + n1 as i64).min(v2 + n2 as i64);
                let k = (abs - v1) as u32;
                let modulus = ppow(p, k);
                let gap = (v2 - v1) as u32;
                let mut s = u1 % modulus;
                if gap < k {
                    // p^gap * u2 < p^k, so no reduction is needed before adding
                    s += ppow(p, gap) * (u2 % ppow(p, k - gap));
                    if s >= modulus {
                        s -= modulus;
                    }
                }
                if s == 0 {
                    return PadicRat::zero_to(p, abs);
                }
                let (t, w) = split_u128(s, p);
                PadicRat {
                    p,
                    repr: Repr::Value {
                        v: v1 + t as i64,
                        unit: w,
                        n: k - t,
                    },
                }
            }
        }
    }
}

impl Neg for PadicRat {
    type Output = PadicRat;

    fn neg(self) -> PadicRat {
        match self.repr {
            Repr::Value { v, unit, n } => {
                let m = ppow(self.p, n);
                PadicRat {
                    p: self.p,
                    repr: Repr::Value {
                        v,
                        unit: m - unit,
                        n,
                    },
                }
            }
            _ => self,
        }
    }
}

impl Sub for PadicRat {
    type Output = PadicRat;

    fn sub(self, rhs: PadicRat) -> PadicRat {
        self + (-rhs)
    }
}

impl Mul for PadicRat {
    type Output = PadicRat;

    fn mul(self, rhs: PadicRat) -> PadicRat {
        self.check_prime(&rhs);
        let p = self.p;
        let repr = match (self.repr, rhs.repr) {
            (Repr::ExactZero, _) | (_, Repr::ExactZero) => Repr::ExactZero,
            (Repr::ZeroTo(a), Repr::ZeroTo(b)) => Repr::ZeroTo(a + b),
            (Repr::ZeroTo(a), Repr::Value { v, .. }) | (Repr::Value { v, .. }, Repr::ZeroTo(a)) => {
                Repr::ZeroTo(a + v)
            }
            (
                Repr::Value {
                    v: v1,
                    unit: u1,
                    n: n1,
                },
                Repr::Value {
                    v: v2,
                    unit: u2,
                    n: n2,
                },
            ) => {
                let n = n1.min(n2);
                let m = ppow(p, n);
                Repr::Value {
                    v: v1 + v2,
                    unit: mul_mod(u1 % m, u2 % m, m),
                    n,
                }
            }
        };
        PadicRat { p, repr }
    }
}

impl fmt::Display for PadicRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.repr {
            Repr::ExactZero => write!(f, "0"),
            Repr::ZeroTo(a) => write!(f, "O({}^{})", self.p, a),
            Repr::Value { v, unit, n } => {
                write!(
                    f,
                    "{}*{}^{} + O({}^{})",
                    unit,
                    self.p,
                    v,
                    self.p,
                    v + n as i64
                )
            }
        }
    }
}

/// Sums an iterator of p-adic values, starting from exact zero.
pub fn sum_padic<I: IntoIterator<Item = PadicRat>>(p: u64, items: I) -> PadicRat {
    items
        .into_iter()
        .fold(PadicRat::exact_zero(p), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(p: u64, v: i64, unit: u128, n: u32) -> PadicRat {
        PadicRat::from_parts(p, v, unit, n).unwrap()
    }

    #[test]
    fn from_ratio_examples() {
        let x = PadicRat::from_ratio(5, 3, &25.into(), &12.into()).unwrap();
        assert_eq!(
            x.repr(),
            Repr::Value {
                v: 2,
                unit: 73,
                n: 3
            }
        );
        let y = PadicRat::from_ratio(5, 3, &175.into(), &6.into()).unwrap();
        assert_eq!(
            y.repr(),
            Repr::Value {
                v: 2,
                unit: 22,
                n: 3
            }
        );
        assert!(PadicRat::from_ratio(5, 3, &0.into(), &9.into())
            .unwrap()
            .is_exact_zero());
        assert_eq!(
            PadicRat::from_ratio(5, 3, &1.into(), &0.into()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(PadicRat::from_frac(5, 3, 25, 12).unwrap(), x);
    }

    #[test]
    fn harmonic_four_loses_digits() {
        let p = 5;
        let h = (1..=4).fold(PadicRat::exact_zero(p), |acc, k| {
            acc + PadicRat::from_frac(p, 3, 1, k).unwrap()
        });
        assert_eq!(h.valuation(), Some(2));
        assert_eq!(h.rel_precision(), Some(1));
        assert_eq!(h.unit(), Some(3));
        assert_eq!(h.abs_precision(), Some(3));
    }

    #[test]
    fn cancellation_gives_zero_to_precision() {
        let x = val(5, 1, 17, 3);
        let z = x + (-x);
        assert_eq!(z.repr(), Repr::ZeroTo(4));
        assert!(!z.is_exact_zero());
    }

    #[test]
    fn mixed_valuation_add() {
        let s = val(5, 0, 2, 3) + val(5, 1, 1, 3);
        assert_eq!(
            s.repr(),
            Repr::Value {
                v: 0,
                unit: 7,
                n: 3
            }
        );
        assert_eq!(s.abs_precision(), Some(3));
    }

    #[test]
    fn mul_and_shift() {
        let prod = val(5, 2, 7, 3) * val(5, -1, 3, 3);
        assert_eq!(
            prod.repr(),
            Repr::Value {
                v: 1,
                unit: 21,
                n: 3
            }
        );
        let h4 = PadicRat::from_frac(5, 5, 25, 12).unwrap();
        assert_eq!(h4.shift(-1).valuation(), Some(1));
        assert!((prod * PadicRat::exact_zero(5)).is_exact_zero());
    }

    #[test]
    fn reduce_examples() {
        let x = val(5, 2, 73, 3);
        assert_eq!(x.reduce(3).unwrap().value(), 75);
        assert_eq!(PadicRat::exact_zero(5).reduce(4).unwrap().value(), 0);
        assert_eq!(val(5, -1, 1, 3).reduce(1), Err(Error::NotPIntegral));
        assert!(matches!(
            val(5, 0, 1, 2).reduce(3),
            Err(Error::InsufficientPrecision {
                needed: 3,
                available: 2
            })
        ));
        assert!(matches!(
            PadicRat::zero_to(5, 2).reduce(3),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn zero_to_interactions() {
        let z = PadicRat::zero_to(7, 2);
        let x = val(7, 1, 3, 4);
        assert_eq!(
            (z + x).repr(),
            Repr::Value {
                v: 1,
                unit: 3,
                n: 1
            }
        );
        assert_eq!((z * x).repr(), Repr::ZeroTo(3));
        assert_eq!((z * z).repr(), Repr::ZeroTo(4));
        assert_eq!((z + val(7, 3, 1, 2)).repr(), Repr::ZeroTo(2));
        assert!(z.inv().is_err());
    }

    #[test]
    fn residue_round_trip() {
        let r = Residue::new(5, 4, 250).unwrap();
        let x = PadicRat::from_residue(r);
        assert_eq!(
            x.repr(),
            Repr::Value {
                v: 3,
                unit: 2,
                n: 1
            }
        );
        assert_eq!(x.reduce(4).unwrap(), r);
        assert_eq!(
            PadicRat::from_residue(r.zero_like()).repr(),
            Repr::ZeroTo(4)
        );
    }

    #[test]
    fn scale_and_inverse() {
        let x = PadicRat::from_frac(7, 4, 3, 2).unwrap();
        let y = x.scale(14);
        assert_eq!(y, PadicRat::from_int(7, 4, 21));
        let inv = y.inv().unwrap();
        assert_eq!(inv, PadicRat::from_frac(7, 4, 1, 21).unwrap());
        assert_eq!((y * inv).reduce(4).unwrap().value(), 1);
    }
}
