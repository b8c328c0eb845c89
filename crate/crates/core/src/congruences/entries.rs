use super::{CongruenceSpec, EvalEnv, Instance, Status};
use crate::error::Result;
use crate::padic::{mul_mod, sum_padic, PadicRat, Residue};
use crate::prime_ctx::PrimeCtx;

const fn entry(
    id: &'static str,
    mod_exp: u32,
    required_precision: u32,
    description: &'static str,
    eval: super::Evaluator,
) -> CongruenceSpec {
    CongruenceSpec {
        id,
        mod_exp,
        description,
        required_precision,
        quantified: false,
        needs_euler: false,
        status: Status::Theorem,
        eval,
    }
}

const fn quantified(mut s: CongruenceSpec) -> CongruenceSpec {
    s.quantified = true;
    s
}

const fn euler(mut s: CongruenceSpec) -> CongruenceSpec {
    s.needs_euler = true;
    s
}

const fn conjecture(mut s: CongruenceSpec) -> CongruenceSpec {
    s.status = Status::Conjecture;
    s
}

pub(super) static REGISTRY: &[CongruenceSpec] = &[
    entry("W.HARM1", 2, 2, "H_{p-1} = 0 mod p^2", w_harm1),
    entry("W.HARM2", 1, 1, "H^(2)_{p-1} = 0 mod p", w_harm2),
    entry("W.CBC", 3, 3, "binom(2p-1,p-1) = 1 mod p^3", w_cbc),
    entry(
        "ST10",
        3,
        3,
        "sum_{k<p} binom(2k,k)/k = (8/9)p^2 B_{p-3} mod p^3",
        st10,
    ),
    euler(entry(
        "S11B.HALF",
        2,
        2,
        "sum_{k<=(p-1)/2} binom(2k,k)/k = -(-1/p)(8/3)p E_{p-3} mod p^2",
        s11b_half,
    )),
    entry(
        "T1.1",
        1,
        1,
        "sum_{k<p} binom(2k,k)H_k/k = (1/3)(p/3)B_{p-2}(1/3) mod p",
        t1_1,
    ),
    entry(
        "T1.2",
        1,
        1,
        "sum_{k<p} binom(2k,k)H_{2k}/k = (7/12)(p/3)B_{p-2}(1/3) mod p",
        t1_2,
    ),
    entry(
        "COR1.3",
        1,
        1,
        "sum_{k<p} binom(2k,k)(4H_{2k}-7H_k)/k = 0 mod p",
        cor1_3,
    ),
    conjecture(entry(
        "CONJ1",
        4,
        5,
        "sum_{k<p} binom(2k,k)(4H_{2k}-7H_k)/k = -14H_{p-1}/p + (278/15)p^3 B_{p-5} mod p^4",
        conj1,
    )),
    quantified(entry(
        "P2.A",
        3,
        3,
        "binom(p,k) = (-1)^(k-1)(p/k)(1-pH_{k-1}) mod p^3",
        p2_a,
    )),
    quantified(entry(
        "P2.B",
        1,
        1,
        "sum_{k=j}^{p-1} binom(k,j)binom(k-1,j-1) = binom(2p-2j-1,p-1-j) mod p",
        p2_b,
    )),
    quantified(entry(
        "P2.C",
        2,
        2,
        "j binom(2j,j) binom(2p-2j,p-j) = 2p mod p^2, j > (p-1)/2",
        p2_c,
    )),
    quantified(entry("P2.D", 1, 1, "H_{p-k} = H_k - 1/k mod p", p2_d)),
    entry(
        "P2.E",
        3,
        3,
        "p H_{2p-1} = 1 - 2p^2 H^(2)_{p-1} mod p^3",
        p2_e,
    ),
    entry(
        "C2.5",
        1,
        1,
        "sum binom(2k,k)H_{2k}/k = (5/2)sum binom(2k,k)H_k/k - (1/2)sum binom(2k,k)/k^2 mod p",
        c2_5,
    ),
    entry(
        "C2.6",
        3,
        3,
        "binom(2p,p) expansion against the half-range sum mod p^3",
        c2_6,
    ),
    entry("C2.7", 2, 2, "sum_{k<p} binom(2k,k)/k = 0 mod p^2", c2_7),
    entry(
        "C2.8",
        1,
        2,
        "sum binom(2k,k)H_k/k through half-range sums mod p",
        c2_8,
    ),
    entry(
        "C2.9",
        1,
        1,
        "sum binom(2k,k)H_k/k = (5/4)sum binom(2k,k)/k^2 - (1/2)sum binom(2k,k)H_{2k}/k mod p",
        c2_9,
    ),
    entry(
        "C2.10",
        1,
        1,
        "sum_{k<p} binom(2k,k)/k^2 = (1/2)(p/3)B_{p-2}(1/3) mod p",
        c2_10,
    ),
    entry(
        "C2.HALFEQ",
        1,
        1,
        "sum_{k<p} binom(2k,k)/k^2 = sum_{k<=(p-1)/2} binom(2k,k)/k^2 mod p",
        c2_halfeq,
    ),
    entry(
        "R2.1a",
        1,
        2,
        "-(1/p)sum_{k<=(p-1)/2} binom(2k,k)/k = sum_{k<=(p-1)/2} 2/(k^2 binom(2k,k)) mod p",
        r2_1a,
    ),
    euler(entry(
        "R2.1b",
        1,
        1,
        "sum_{k<=(p-1)/2} 2/(k^2 binom(2k,k)) = (-1/p)(8/3)E_{p-3} mod p",
        r2_1b,
    )),
    quantified(entry(
        "P3.F",
        2,
        2,
        "binom(p-1,j-1)^2 = 1 - 2pH_{j-1} mod p^2",
        p3_f,
    )),
    entry(
        "T1.6a",
        1,
        3,
        "(1/p^2)sum_{k<p} g_k = (5/8)(p/3)B_{p-2}(1/3) mod p",
        t1_6a,
    ),
    entry(
        "T1.6b",
        1,
        1,
        "sum_{k<p} g_k H^(2)_k = (5/8)(p/3)B_{p-2}(1/3) mod p",
        t1_6b,
    ),
    entry(
        "T1.7a",
        3,
        3,
        "sum_{k<p} h_k = (3/4)p^2(p/3)B_{p-2}(1/3) mod p^3",
        t1_7a,
    ),
    entry(
        "T1.7b",
        1,
        1,
        "sum_{k<p} h_k H^(2)_k = (3/4)(p/3)B_{p-2}(1/3) mod p",
        t1_7b,
    ),
    entry(
        "C3.7",
        4,
        4,
        "sum_{k<p} g_k = p^2 sum g_k H^(2)_k + (7/6)p^3 B_{p-3} mod p^4",
        c3_7,
    ),
    quantified(entry(
        "C3.8",
        4,
        5,
        "sum g_k(x)(1-p^2 H^(2)_k) = sum (p/(2k+1))(1-2p^2 H^(2)_k)x^k mod p^4",
        c3_8,
    )),
    entry(
        "C3.H",
        3,
        3,
        "sum_{k<p} h_k(1-p^2 H^(2)_k) = 1 mod p^3",
        c3_h,
    ),
];

fn one(lhs: PadicRat, rhs: PadicRat) -> Result<Vec<Instance>> {
    Ok(vec![Instance::single(lhs, rhs)])
}

fn sum<I: IntoIterator<Item = PadicRat>>(ctx: &PrimeCtx, items: I) -> PadicRat {
    sum_padic(ctx.p(), items)
}

fn p(ctx: &PrimeCtx) -> usize {
    ctx.p() as usize
}

fn chi3(env: &EvalEnv<'_>) -> PadicRat {
    env.ctx.int(env.sv.chi3 as i128)
}

fn chi4(env: &EvalEnv<'_>) -> PadicRat {
    env.ctx.int(env.sv.chi4 as i128)
}

/// `(p/3) B_{p-2}(1/3)`.
fn chi3_bt(env: &EvalEnv<'_>) -> PadicRat {
    chi3(env) * env.sv.bernoulli_third_padic()
}

fn cbc_over_k(ctx: &PrimeCtx, k: usize) -> PadicRat {
    ctx.cbc(k) * ctx.recip(k)
}

fn cbc_over_k2(ctx: &PrimeCtx, k: usize) -> PadicRat {
    ctx.cbc(k) * ctx.recip(k) * ctx.recip(k)
}

/// `sum_{k=1}^{upto} binom(2k,k)/k * w(k)`.
fn weighted(ctx: &PrimeCtx, upto: usize, w: impl Fn(usize) -> PadicRat) -> PadicRat {
    sum(ctx, (1..=upto).map(|k| cbc_over_k(ctx, k) * w(k)))
}

fn a1(ctx: &PrimeCtx, upto: usize) -> PadicRat {
    sum(ctx, (1..=upto).map(|k| cbc_over_k(ctx, k)))
}

fn t11(ctx: &PrimeCtx) -> PadicRat {
    weighted(ctx, p(ctx) - 1, |k| ctx.h(k))
}

fn t12(ctx: &PrimeCtx) -> PadicRat {
    weighted(ctx, p(ctx) - 1, |k| ctx.h(2 * k))
}

fn q(ctx: &PrimeCtx, upto: usize) -> PadicRat {
    sum(ctx, (1..=upto).map(|k| cbc_over_k2(ctx, k)))
}

/// `sum_{k<=(p-1)/2} 2/(k^2 binom(2k,k))`; the central binomials are units here.
fn r_sum(ctx: &PrimeCtx) -> Result<PadicRat> {
    let mut acc = ctx.zero();
    for k in 1..=ctx.half() {
        acc = acc + ctx.int(2) * ctx.recip(k) * ctx.recip(k) * ctx.cbc(k).inv()?;
    }
    Ok(acc)
}

fn lhs_cor(ctx: &PrimeCtx) -> PadicRat {
    weighted(ctx, p(ctx) - 1, |k| {
        ctx.int(4) * ctx.h(2 * k) - ctx.int(7) * ctx.h(k)
    })
}

fn w_harm1(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    one(ctx.h(p(ctx) - 1), ctx.zero())
}

fn w_harm2(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    one(ctx.h2(p(ctx) - 1), ctx.zero())
}

fn w_cbc(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    // binom(2p-1, p-1) = binom(2p-2, p-1) (2p-1)/p
    let n = p(ctx);
    let lhs = ctx.cbc(n - 1) * ctx.int(2 * n as i128 - 1) * ctx.recip(n);
    one(lhs, ctx.int(1))
}

fn st10(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let b = env.sv.bernoulli_padic(ctx.p() - 3, ctx.work())?;
    one(a1(ctx, p(ctx) - 1), ctx.frac(8, 9).shift(2) * b)
}

fn s11b_half(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let rhs = -(chi4(env) * ctx.frac(8, 3).shift(1) * env.sv.euler_padic()?);
    one(a1(ctx, ctx.half()), rhs)
}

fn t1_1(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    one(t11(env.ctx), env.ctx.frac(1, 3) * chi3_bt(env))
}

fn t1_2(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    one(t12(env.ctx), env.ctx.frac(7, 12) * chi3_bt(env))
}

fn cor1_3(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    one(lhs_cor(env.ctx), env.ctx.zero())
}

fn conj1(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let pp = ctx.p() as i128;
    let b = env.sv.bernoulli_padic(ctx.p() - 5, ctx.work())?;
    let rhs = -(ctx.int(14) * ctx.fermat_style_quotient()) + ctx.frac(278 * pp * pp * pp, 15) * b;
    one(lhs_cor(ctx), rhs)
}

fn p2_a(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let n = p(ctx);
    let pp = ctx.int(n as i128);
    let mut binom = ctx.int(1);
    let mut out = Vec::with_capacity(n - 1);
    for k in 1..n {
        binom = binom * ctx.int((n - k + 1) as i128) * ctx.recip(k);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let rhs = ctx.int(sign) * pp * ctx.recip(k) * (ctx.int(1) - pp * ctx.h(k - 1));
        out.push(Instance::at(k as u64, binom, rhs));
    }
    Ok(out)
}

/// `binom(n, k) mod p` by Lucas' theorem, for `n < 2p` and `k < p`.
fn lucas_small_k(ctx: &PrimeCtx, n: usize, k: usize) -> u128 {
    // the high digit of k is zero, so only the low digits contribute
    ctx.binom_small(n % p(ctx), k) % ctx.p() as u128
}

fn p2_b(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let n = p(ctx);
    let m = ctx.modulus();
    let mut out = Vec::with_capacity(n - 1);
    for j in 1..n {
        let mut acc = 0u128;
        for k in j..n {
            acc = (acc + mul_mod(ctx.binom_small(k, j), ctx.binom_small(k - 1, j - 1), m)) % m;
        }
        let lhs = PadicRat::from_residue(ctx.residue(acc));
        let rhs = Residue::from_u128(ctx.p(), 1, lucas_small_k(ctx, 2 * n - 2 * j - 1, n - 1 - j))?;
        out.push(Instance::at(j as u64, lhs, PadicRat::from_residue(rhs)));
    }
    Ok(out)
}

fn p2_c(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let n = p(ctx);
    let two_p = ctx.int(2 * n as i128);
    Ok((ctx.half() + 1..n)
        .map(|j| {
            let lhs = ctx.int(j as i128) * ctx.cbc(j) * ctx.cbc(n - j);
            Instance::at(j as u64, lhs, two_p)
        })
        .collect())
}

fn p2_d(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let n = p(ctx);
    Ok((1..n)
        .map(|k| Instance::at(k as u64, ctx.h(n - k), ctx.h(k) - ctx.recip(k)))
        .collect())
}

fn p2_e(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let n = p(ctx);
    let lhs = (ctx.h(2 * n - 2) + ctx.recip(2 * n - 1)).shift(1);
    let rhs = ctx.int(1) - ctx.int(2).shift(2) * ctx.h2(n - 1);
    one(lhs, rhs)
}

fn c2_5(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let rhs = ctx.frac(5, 2) * t11(ctx) - ctx.frac(1, 2) * q(ctx, p(ctx) - 1);
    one(t12(ctx), rhs)
}

fn c2_6(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let n = p(ctx);
    let pp = ctx.int(n as i128);
    let one_ = ctx.int(1);
    let inner = weighted(ctx, n - 1, |k| one_ - pp * ctx.h(k) + pp * ctx.recip(k));
    // binom(2p, p) = binom(2p-2, p-1) * 2(2p-1)/p
    let central = ctx.cbc(n - 1) * ctx.int(2 * (2 * n as i128 - 1)) * ctx.recip(n);
    let lhs = -(pp * inner) - central + one_;
    let half_sum = sum(
        ctx,
        (1..=ctx.half()).map(|k| {
            let r = ctx.recip(2 * k);
            (one_ - pp * (ctx.h(2 * k) - r)) * r * ctx.cbc(k)
        }),
    );
    one(lhs, -one_ + pp * half_sum)
}

fn c2_7(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    one(a1(ctx, p(ctx) - 1), ctx.zero())
}

fn c2_8(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let h = ctx.half();
    let rhs = ctx.frac(1, 2) * a1(ctx, h).shift(-1)
        - ctx.frac(1, 2) * weighted(ctx, h, |k| ctx.h(2 * k))
        + ctx.frac(5, 4) * q(ctx, h);
    one(t11(ctx), rhs)
}

fn c2_9(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let rhs = ctx.frac(5, 4) * q(ctx, p(ctx) - 1) - ctx.frac(1, 2) * t12(ctx);
    one(t11(ctx), rhs)
}

fn c2_10(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    one(q(ctx, p(ctx) - 1), ctx.frac(1, 2) * chi3_bt(env))
}

fn c2_halfeq(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    one(q(ctx, p(ctx) - 1), q(ctx, ctx.half()))
}

fn r2_1a(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    one(-a1(ctx, ctx.half()).shift(-1), r_sum(ctx)?)
}

fn r2_1b(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    one(
        r_sum(ctx)?,
        chi4(env) * ctx.frac(8, 3) * env.sv.euler_padic()?,
    )
}

fn p3_f(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let n = p(ctx);
    let two_p = ctx.int(2 * n as i128);
    Ok((1..n)
        .map(|j| {
            let b = PadicRat::from_residue(ctx.residue(ctx.binom_small(n - 1, j - 1)));
            Instance::at(j as u64, b * b, ctx.int(1) - two_p * ctx.h(j - 1))
        })
        .collect())
}

fn seq_sum(ctx: &PrimeCtx, values: &[Residue], w: impl Fn(usize) -> PadicRat) -> PadicRat {
    sum(
        ctx,
        (1..p(ctx)).map(|k| PadicRat::from_residue(values[k]) * w(k)),
    )
}

fn t1_6a(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let s = seq_sum(ctx, &env.seq().g, |_| ctx.int(1));
    one(s.shift(-2), ctx.frac(5, 8) * chi3_bt(env))
}

fn t1_6b(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    one(
        seq_sum(ctx, &env.seq().g, |k| ctx.h2(k)),
        ctx.frac(5, 8) * chi3_bt(env),
    )
}

fn t1_7a(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let s = seq_sum(ctx, &env.seq().h, |_| ctx.int(1));
    one(s, ctx.frac(3, 4).shift(2) * chi3_bt(env))
}

fn t1_7b(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    one(
        seq_sum(ctx, &env.seq().h, |k| ctx.h2(k)),
        ctx.frac(3, 4) * chi3_bt(env),
    )
}

fn c3_7(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let g = &env.seq().g;
    let b = env.sv.bernoulli_padic(ctx.p() - 3, ctx.work())?;
    let rhs = seq_sum(ctx, g, |k| ctx.h2(k)).shift(2) + ctx.frac(7, 6).shift(3) * b;
    one(seq_sum(ctx, g, |_| ctx.int(1)), rhs)
}

/// `sum_{k=0}^{p-1} a_k (1 - c p^2 H^(2)_k)`.
fn damped(ctx: &PrimeCtx, c: i128, a: impl Fn(usize) -> PadicRat) -> PadicRat {
    let one_ = ctx.int(1);
    let cp2 = ctx.int(c).shift(2);
    sum(ctx, (0..p(ctx)).map(|k| a(k) * (one_ - cp2 * ctx.h2(k))))
}

fn c3_8(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let n = p(ctx);
    let pp = ctx.int(n as i128);
    // p/(2k+1) is an exact division, equal to 1 when 2k+1 = p
    let coeff: Vec<PadicRat> = (0..n).map(|k| pp * ctx.recip(2 * k + 1)).collect();
    let mut out = Vec::with_capacity(env.x_samples().len());
    for (x, gx) in &env.seq().gx {
        let lhs = damped(ctx, 1, |k| PadicRat::from_residue(gx[k]));
        let xr = ctx.residue(*x % ctx.modulus());
        let powers: Vec<Residue> = std::iter::successors(Some(xr.one_like()), |w| Some(*w * xr))
            .take(n)
            .collect();
        let rhs = damped(ctx, 2, |k| coeff[k] * PadicRat::from_residue(powers[k]));
        out.push(Instance::at(*x as u64, lhs, rhs));
    }
    Ok(out)
}

fn c3_h(env: &EvalEnv<'_>) -> Result<Vec<Instance>> {
    let ctx = env.ctx;
    let h = &env.seq().h;
    one(damped(ctx, 1, |k| PadicRat::from_residue(h[k])), ctx.int(1))
}
