use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{PadicRat, Residue};
use crate::error::{Error, Result};

/// Reduced big-integer fraction with a positive denominator.
pub type ExactRational = BigRational;

/// `val_p(z)` for a non-zero integer.
pub fn val_p_bigint(z: &BigInt, p: u64) -> u64 {
    debug_assert!(!z.is_zero());
    let pb = BigInt::from(p);
    let mut z = z.abs();
    let mut v = 0;
    loop {
        let (q, r) = z.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        z = q;
        v += 1;
    }
}

/// `val_p(q)`, `None` for zero.
pub fn exact_valuation(q: &ExactRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(val_p_bigint(q.numer(), p) as i64 - val_p_bigint(q.denom(), p) as i64)
}

/// Reduces a p-integral exact rational modulo `p^m`.
pub fn reduce_exact(q: &ExactRational, p: u64, m: u32) -> Result<Residue> {
    if q.is_zero() {
        return Residue::new(p, m, 0);
    }
    if exact_valuation(q, p).unwrap() < 0 {
        return Err(Error::NotPIntegral);
    }
    let num = Residue::from_bigint(p, m, q.numer())?;
    let den = Residue::from_bigint(p, m, q.denom())?;
    Ok(num * den.inv()?)
}

pub fn padic_from_exact(q: &ExactRational, p: u64, work: u32) -> Result<PadicRat> {
    PadicRat::from_ratio(p, work, q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> ExactRational {
        ExactRational::new(a.into(), b.into())
    }

    #[test]
    fn valuations() {
        assert_eq!(exact_valuation(&q(25, 12), 5), Some(2));
        assert_eq!(exact_valuation(&q(761, 280), 5), Some(-1));
        assert_eq!(exact_valuation(&q(0, 1), 5), None);
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_exact(&q(25, 12), 5, 3).unwrap().value(), 75);
        assert_eq!(reduce_exact(&q(-1, 30), 7, 1).unwrap().value(), 3);
        assert_eq!(reduce_exact(&q(1, 5), 5, 1), Err(Error::NotPIntegral));
    }
}
