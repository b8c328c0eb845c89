//! Exact and modular generators for the binomial sequences
//! `C_n`, `f_n = sum binom(n,k)^3`, `g_n = sum binom(n,k)^2 binom(2k,k)`,
//! `h_n = sum binom(n,k)^2 C_k`, and the polynomial
//! `g_n(x) = sum binom(n,k)^2 binom(2k,k) x^k`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::padic::{add_mod, mul_mod, ExactRational, Residue};
use crate::prime_ctx::PrimeCtx;

/// `binom(n, k)` as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn central_binom_exact(n: u64) -> BigUint {
    binomial(2 * n, n)
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    central_binom_exact(n) / (n + 1)
}

/// `C_n = binom(2n, n) - binom(2n, n + 1)`, the subtraction form.
pub fn catalan_by_difference(n: u64) -> BigUint {
    central_binom_exact(n) - binomial(2 * n, n + 1)
}

fn squared_binomial_sum(n: u64, weight: impl Fn(u64) -> BigUint) -> BigUint {
    (0..=n)
        .map(|k| {
            let b = binomial(n, k);
            &b * &b * weight(k)
        })
        .sum()
}

/// `g_n = sum_k binom(n,k)^2 binom(2k,k)`.
pub fn g_seq(n: u64) -> BigUint {
    squared_binomial_sum(n, central_binom_exact)
}

/// `h_n = sum_k binom(n,k)^2 C_k`.
pub fn h_seq(n: u64) -> BigUint {
    squared_binomial_sum(n, catalan)
}

/// Franel numbers `f_n = sum_k binom(n,k)^3`.
pub fn franel(n: u64) -> BigUint {
    squared_binomial_sum(n, |k| binomial(n, k))
}

/// The integer polynomial `g_n(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqPoly {
    coeffs: Vec<BigUint>,
}

impl SeqPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients `c_0, ..., c_n`, lowest degree first.
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn eval_exact(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + BigInt::from(c.clone()))
    }

    /// `int_0^1 g_n(x) dx = sum_k c_k / (k + 1)`.
    pub fn integral_unit_interval(&self) -> ExactRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| ExactRational::new(BigInt::from(c.clone()), BigInt::from(k + 1)))
            .sum()
    }
}

pub fn g_poly(n: u64) -> SeqPoly {
    let coeffs = (0..=n)
        .map(|k| {
            let b = binomial(n, k);
            &b * &b * central_binom_exact(k)
        })
        .collect();
    SeqPoly { coeffs }
}

/// Horner evaluation of `poly` at `x` in the residue ring of `x`.
pub fn poly_eval_mod(poly: &SeqPoly, x: Residue) -> Residue {
    poly.coeffs.iter().rev().fold(x.zero_like(), |acc, c| {
        acc * x + Residue::from_bigint(x.p(), x.m(), &BigInt::from(c.clone())).expect("same ring")
    })
}

/// Running prefix sums of a residue sequence.
pub fn partial_sums(values: &[Residue]) -> Vec<Residue> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = match values.first() {
        Some(v) => v.zero_like(),
        None => return out,
    };
    for v in values {
        acc += *v;
        out.push(acc);
    }
    out
}

/// `g_k`, `h_k` and `g_k(x)` for `0 <= k <= p - 1`, reduced mod `p^work`.
#[derive(Debug, Clone)]
pub struct SeqResidues {
    pub g: Vec<Residue>,
    pub h: Vec<Residue>,
    /// `(x, [g_0(x), ..., g_{p-1}(x)])` per requested sample point.
    pub gx: Vec<(u128, Vec<Residue>)>,
}

/// Streams the sequences modulo `p^work` without materialising exact values.
///
/// Rows of Pascal's triangle are updated in place, so each `(k, j)` pair costs
/// one squaring plus one multiplication per output sequence.
pub fn stream_residues(ctx: &PrimeCtx, xs: &[u128]) -> SeqResidues {
    let n = ctx.p() as usize;
    let m = ctx.modulus();
    let work = ctx.work();
    let cbc: Vec<u128> = (0..n)
        .map(|j| ctx.cbc(j).reduce(work).expect("integral").value())
        .collect();
    let cat: Vec<u128> = (0..n)
        .map(|j| ctx.catalan(j).reduce(work).expect("integral").value())
        .collect();

    // x = 0 and x = 1 are read off g directly
    let generic: Vec<u128> = xs.iter().copied().filter(|&x| x > 1).collect();
    let weights: Vec<Vec<u128>> = generic
        .iter()
        .map(|&x| {
            let x = x % m;
            let mut pw = 1u128;
            cbc.iter()
                .map(|&c| {
                    let w = mul_mod(c, pw, m);
                    pw = mul_mod(pw, x, m);
                    w
                })
                .collect()
        })
        .collect();

    let mut row = vec![0u128; n];
    row[0] = 1;
    let mut g = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    let mut gx: Vec<Vec<u128>> = vec![Vec::with_capacity(n); generic.len()];
    let mut acc_x = vec![0u128; generic.len()];
    for k in 0..n {
        let (mut acc_g, mut acc_h) = (0u128, 0u128);
        acc_x.iter_mut().for_each(|a| *a = 0);
        for j in 0..=k {
            let b = row[j];
            let b2 = mul_mod(b, b, m);
            acc_g = add_mod(acc_g, mul_mod(b2, cbc[j], m), m);
            acc_h = add_mod(acc_h, mul_mod(b2, cat[j], m), m);
            for (a, w) in acc_x.iter_mut().zip(&weights) {
                *a = add_mod(*a, mul_mod(b2, w[j], m), m);
            }
        }
        g.push(acc_g);
        h.push(acc_h);
        for (out, a) in gx.iter_mut().zip(&acc_x) {
            out.push(*a);
        }
        if k + 1 < n {
            for j in (1..=k + 1).rev() {
                row[j] = add_mod(row[j], row[j - 1], m);
            }
        }
    }

    let wrap = |v: Vec<u128>| v.into_iter().map(|r| ctx.residue(r)).collect::<Vec<_>>();
    let g = wrap(g);
    let h = wrap(h);
    let mut generic_iter = generic.into_iter().zip(gx.into_iter().map(wrap));
    let gx = xs
        .iter()
        .map(|&x| match x {
            0 => (0, vec![ctx.residue(1); n]),
            1 => (1, g.clone()),
            _ => generic_iter.next().expect("one series per generic sample"),
        })
        .collect();
    SeqResidues { g, h, gx }
}
