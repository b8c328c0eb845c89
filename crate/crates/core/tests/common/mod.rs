#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

use congforge::padic::{exact_valuation, reduce_exact, ExactRational, PadicRat, Repr};

pub type Q = ExactRational;

pub fn q(a: i128, b: i128) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

fn p_pow(p: u64, e: i64) -> Q {
    let base = Q::from_integer(BigInt::from(p));
    if e >= 0 {
        base.pow(e as i32)
    } else {
        Q::one() / base.pow((-e) as i32)
    }
}

/// The rational `unit * p^v` carried by a p-adic value (zero when no digit is known).
pub fn as_exact(x: &PadicRat) -> Q {
    match x.repr() {
        Repr::Value { v, unit, .. } => Q::from_integer(BigInt::from(unit)) * p_pow(x.p(), v),
        _ => Q::zero(),
    }
}

/// Whether `x` equals `exact` to every digit it claims to know.
pub fn agrees(x: &PadicRat, exact: &Q) -> bool {
    match (x.repr(), x.abs_precision()) {
        (Repr::ExactZero, _) => exact.is_zero(),
        (_, Some(abs)) => {
            let d = exact - as_exact(x);
            exact_valuation(&d, x.p()).is_none_or(|v| v >= abs)
        }
        _ => false,
    }
}

/// Whether two values agree on their common known digits.
pub fn agree_to_common_precision(x: &PadicRat, y: &PadicRat) -> bool {
    let abs = match (x.abs_precision(), y.abs_precision()) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return x == y,
    };
    let d = as_exact(x) - as_exact(y);
    exact_valuation(&d, x.p()).is_none_or(|v| v >= abs)
}

fn abs_or_inf(x: &PadicRat) -> i64 {
    x.abs_precision().unwrap_or(i64::MAX)
}

fn rel_or_inf(x: &PadicRat) -> u32 {
    x.rel_precision().unwrap_or(u32::MAX)
}

/// A random operand: numerator and denominator, either possibly scaled by powers of `p`.
#[derive(Debug, Clone, Copy)]
pub struct Operand {
    pub num: i128,
    pub den: i128,
}

impl Operand {
    pub fn new(p: u64, num: i64, den: i64, num_shift: u32, den_shift: u32) -> Self {
        let den = if den == 0 { 1 } else { den };
        let pp = p as i128;
        Self {
            num: num as i128 * pp.pow(num_shift),
            den: den as i128 * pp.pow(den_shift),
        }
    }

    pub fn exact(&self) -> Q {
        q(self.num, self.den)
    }

    pub fn padic(&self, p: u64, m: u32) -> PadicRat {
        PadicRat::from_ratio(p, m, &BigInt::from(self.num), &BigInt::from(self.den)).unwrap()
    }
}

/// Checks ring laws, valuation additivity, precision monotonicity and
/// round-trips for one triple of operands.
pub fn check_case(p: u64, m: u32, ops: [Operand; 3]) -> Result<(), String> {
    let [a, b, c] = ops;
    let (x, y, z) = (a.padic(p, m), b.padic(p, m), c.padic(p, m));
    let (ex, ey, ez) = (a.exact(), b.exact(), c.exact());
    let fail = |what: &str| Err(format!("{what} failed for p={p} m={m} ops={ops:?}"));

    // round trips
    for (v, e) in [(&x, &ex), (&y, &ey), (&z, &ez)] {
        if !agrees(v, e) {
            return fail("from_ratio agreement");
        }
        if exact_valuation(e, p).is_some_and(|val| val >= 0) || e.is_zero() {
            let r = v.reduce(m).map_err(|e| format!("reduce: {e}"))?;
            if r != reduce_exact(e, p, m).unwrap() {
                return fail("reduce round trip");
            }
            if PadicRat::from_residue(r).reduce(m).unwrap() != r {
                return fail("residue round trip");
            }
        }
    }

    // ring laws, each side checked against the exact value
    let sum = x + y;
    let prod = x * y;
    let checks: [(&str, PadicRat, PadicRat, Q); 5] = [
        ("add commutes", x + y, y + x, &ex + &ey),
        ("mul commutes", x * y, y * x, &ex * &ey),
        ("add associates", (x + y) + z, x + (y + z), &ex + &ey + &ez),
        ("mul associates", (x * y) * z, x * (y * z), &ex * &ey * &ez),
        ("distributes", x * (y + z), x * y + x * z, &ex * (&ey + &ez)),
    ];
    for (name, l, r, e) in checks {
        if !agrees(&l, &e) || !agrees(&r, &e) || !agree_to_common_precision(&l, &r) {
            return fail(name);
        }
    }
    if x + y != y + x || x * y != y * x {
        return fail("structural commutativity");
    }
    let neg_x = -x;
    if !agrees(&(x + neg_x), &Q::zero()) || !agrees(&(x - y), &(&ex - &ey)) {
        return fail("subtraction");
    }
    if let (Repr::Value { .. }, Ok(inv)) = (x.repr(), x.inv()) {
        if !agrees(&inv, &(Q::one() / &ex)) || !agrees(&(x * inv), &Q::one()) {
            return fail("inverse");
        }
    }

    // valuation additivity
    if let (Some(vx), Some(vy)) = (x.valuation(), y.valuation()) {
        if prod.valuation() != Some(vx + vy) || exact_valuation(&(&ex * &ey), p) != Some(vx + vy) {
            return fail("valuation additivity");
        }
    }

    // precision monotonicity
    if abs_or_inf(&sum) > abs_or_inf(&x).min(abs_or_inf(&y)) {
        return fail("additive precision");
    }
    if !prod.is_exact_zero() && rel_or_inf(&prod) > rel_or_inf(&x).min(rel_or_inf(&y)) {
        return fail("multiplicative precision");
    }
    Ok(())
}
