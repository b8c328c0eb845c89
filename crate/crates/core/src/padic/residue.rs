use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::{add_mod, inv_mod_pk, modulus_for, mul_mod, reduce_i128, split_u128, sub_mod};
use crate::error::{Error, Result};

/// An integer reduced modulo `p^m`, stored as its least non-negative representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    p: u64,
    m: u32,
    modulus: u128,
    value: u128,
}

impl Residue {
    /// Reduces the signed integer `z` modulo `p^m`.
    pub fn new(p: u64, m: u32, z: i128) -> Result<Self> {
        let modulus = modulus_for(p, m)?;
        Ok(Self {
            p,
            m,
            modulus,
            value: reduce_i128(z, modulus),
        })
    }

    pub fn from_u128(p: u64, m: u32, z: u128) -> Result<Self> {
        let modulus = modulus_for(p, m)?;
        Ok(Self {
            p,
            m,
            modulus,
            value: z % modulus,
        })
    }

    pub fn from_bigint(p: u64, m: u32, z: &BigInt) -> Result<Self> {
        let modulus = modulus_for(p, m)?;
        let r = z.mod_floor(&BigInt::from(modulus));
        let value = r.to_u128().expect("reduced value fits the modulus");
        Ok(Self {
            p,
            m,
            modulus,
            value,
        })
    }

    /// Caller guarantees `modulus == p^m` and `value < modulus`.
    #[inline]
    pub(crate) fn from_parts(p: u64, m: u32, modulus: u128, value: u128) -> Self {
        debug_assert!(value < modulus);
        Self {
            p,
            m,
            modulus,
            value,
        }
    }

    #[inline]
    pub fn zero_like(&self) -> Self {
        Self { value: 0, ..*self }
    }

    #[inline]
    pub fn one_like(&self) -> Self {
        Self { value: 1, ..*self }
    }

    /// A residue in the same ring as `self` with value `z mod p^m`.
    #[inline]
    pub fn lift(&self, z: i128) -> Self {
        Self {
            value: reduce_i128(z, self.modulus),
            ..*self
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    #[inline]
    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.p as u128)
    }

    /// `val_p` of the representative, `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        (self.value != 0).then(|| split_u128(self.value, self.p).0)
    }

    pub fn inv(&self) -> Result<Self> {
        let value = inv_mod_pk(self.value, self.p, self.m).ok_or(Error::NotAUnit)?;
        Ok(Self { value, ..*self })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.one_like();
        acc.value %= self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// The representative in `(-p^m/2, p^m/2]`, handy for printing small signs.
    pub fn symmetric(&self) -> BigInt {
        let v = BigInt::from(self.value);
        let m = BigInt::from(self.modulus);
        if &v * 2 > m {
            v - m
        } else {
            v
        }
    }

    #[inline]
    fn check_same_ring(&self, other: &Self) {
        debug_assert!(
            self.p == other.p && self.m == other.m,
            "mixed residue rings: {}^{} vs {}^{}",
            self.p,
            self.m,
            other.p,
            other.m
        );
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;
    #[inline]
    fn add(self, rhs: Residue) -> Residue {
        self.check_same_ring(&rhs);
        Residue {
            value: add_mod(self.value, rhs.value, self.modulus),
            ..self
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    #[inline]
    fn sub(self, rhs: Residue) -> Residue {
        self.check_same_ring(&rhs);
        Residue {
            value: sub_mod(self.value, rhs.value, self.modulus),
            ..self
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    #[inline]
    fn mul(self, rhs: Residue) -> Residue {
        self.check_same_ring(&rhs);
        Residue {
            value: mul_mod(self.value, rhs.value, self.modulus),
            ..self
        }
    }
}

impl Neg for Residue {
    type Output = Residue;
    #[inline]
    fn neg(self) -> Residue {
        Residue {
            value: sub_mod(0, self.value, self.modulus) % self.modulus,
            ..self
        }
    }
}

impl AddAssign for Residue {
    fn add_assign(&mut self, rhs: Residue) {
        *self = *self + rhs;
    }
}

impl SubAssign for Residue {
    fn sub_assign(&mut self, rhs: Residue) {
        *self = *self - rhs;
    }
}

impl MulAssign for Residue {
    fn mul_assign(&mut self, rhs: Residue) {
        *self = *self * rhs;
    }
}

/// Exact integer to residue conversion that tolerates arbitrary size.
pub(crate) fn bigint_mod(z: &BigInt, modulus: u128) -> u128 {
    let m = BigInt::from(modulus);
    let r = if z.is_negative() {
        z.mod_floor(&m)
    } else {
        z % &m
    };
    r.to_u128().expect("reduced value fits the modulus")
}
