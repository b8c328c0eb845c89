//! The congruence registry.
//!
//! Each [`CongruenceSpec`] names one displayed congruence, its modulus `p^m`
//! and an evaluator producing one or more [`Instance`]s: pairs of p-adic
//! values that must agree modulo `p^m`. [`evaluate`] turns the instances into
//! a [`Verdict`]; [`oracle`] recomputes the same quantities with exact big
//! rationals.

mod entries;
pub mod oracle;

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{checked_pow, PadicRat, Repr, Residue};
use crate::prime_ctx::PrimeCtx;
use crate::sequences::{stream_residues, SeqResidues};
use crate::special::SpecialValues;

pub use oracle::{brute_force_oracle, ExactOracle, OracleInstance};

/// Whether an entry is proven or conjectural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Theorem,
    Conjecture,
}

/// One side-by-side comparison inside an entry. Quantified entries produce
/// one instance per index (or per sample point `x` for the polynomial entry).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Instance {
    pub index: Option<u64>,
    pub lhs: PadicRat,
    pub rhs: PadicRat,
}

impl Instance {
    pub fn single(lhs: PadicRat, rhs: PadicRat) -> Self {
        Self {
            index: None,
            lhs,
            rhs,
        }
    }

    pub fn at(index: u64, lhs: PadicRat, rhs: PadicRat) -> Self {
        Self {
            index: Some(index),
            lhs,
            rhs,
        }
    }
}

type Evaluator = fn(&EvalEnv<'_>) -> Result<Vec<Instance>>;

/// A registry entry.
#[derive(Clone, Copy)]
pub struct CongruenceSpec {
    pub id: &'static str,
    pub mod_exp: u32,
    pub description: &'static str,
    /// Smallest working precision at which both sides are known mod `p^mod_exp`.
    pub required_precision: u32,
    /// Iterates an index range (or sample points) rather than a single pair.
    pub quantified: bool,
    /// Depends on `E_{p-3}`, whose `O(p^2)` recurrence is skipped for large primes.
    pub needs_euler: bool,
    pub status: Status,
    eval: Evaluator,
}

impl fmt::Debug for CongruenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CongruenceSpec")
            .field("id", &self.id)
            .field("mod_exp", &self.mod_exp)
            .field("required_precision", &self.required_precision)
            .field("quantified", &self.quantified)
            .field("needs_euler", &self.needs_euler)
            .field("status", &self.status)
            .finish()
    }
}

/// Every registry entry, in presentation order.
pub fn registry() -> &'static [CongruenceSpec] {
    entries::REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static CongruenceSpec> {
    registry()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::Unknown(id.to_string()))
}

/// Proven lower bound on `val_p(LHS - RHS)`, exact when a non-zero digit was seen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffValuation {
    Exact(i64),
    AtLeast(i64),
}

impl DiffValuation {
    pub fn bound(&self) -> i64 {
        match *self {
            DiffValuation::Exact(v) | DiffValuation::AtLeast(v) => v,
        }
    }

    fn of(diff: &PadicRat, work: u32) -> Self {
        match diff.repr() {
            Repr::Value { v, .. } => DiffValuation::Exact(v),
            Repr::ZeroTo(a) => DiffValuation::AtLeast(a),
            Repr::ExactZero => DiffValuation::AtLeast(work as i64),
        }
    }

    /// Tighter first: smaller bound, and an exact value before a bare bound.
    fn tightness(&self, other: &Self) -> Ordering {
        self.bound()
            .cmp(&other.bound())
            .then_with(|| match (self, other) {
                (DiffValuation::Exact(_), DiffValuation::AtLeast(_)) => Ordering::Less,
                (DiffValuation::AtLeast(_), DiffValuation::Exact(_)) => Ordering::Greater,
                _ => Ordering::Equal,
            })
    }
}

impl fmt::Display for DiffValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffValuation::Exact(v) => write!(f, "{v}"),
            DiffValuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// Outcome of one registry entry at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub id: &'static str,
    pub p: u64,
    pub mod_exp: u32,
    pub lhs: Residue,
    pub rhs: Residue,
    pub pass: bool,
    pub diff_valuation: DiffValuation,
    /// For quantified entries: the index (or sample `x`) whose residues are reported.
    pub witness_index: Option<u64>,
    pub status: Status,
}

/// Fixed sample points for the polynomial congruence.
pub const FIXED_X_SAMPLES: [u128; 3] = [0, 1, 2];
/// Seeded random sample points drawn in addition to the fixed ones.
pub const RANDOM_X_SAMPLES: usize = 2;

/// Sample points `x` in `[0, p^4)` for the polynomial congruence: the fixed
/// points followed by draws from a ChaCha stream keyed by `(seed, p)`.
pub fn c38_samples(p: u64, seed: u64) -> Vec<u128> {
    let bound = checked_pow(p, 4).expect("p^4 fits");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(p);
    let mut xs = FIXED_X_SAMPLES.to_vec();
    xs.extend((0..RANDOM_X_SAMPLES).map(|_| rng.random_range(0..bound)));
    xs
}

/// Everything an evaluator can read for one prime.
pub struct EvalEnv<'a> {
    pub ctx: &'a PrimeCtx,
    pub sv: &'a SpecialValues,
    x_samples: Vec<u128>,
    seq: OnceLock<SeqResidues>,
}

impl<'a> EvalEnv<'a> {
    pub fn new(ctx: &'a PrimeCtx, sv: &'a SpecialValues, x_samples: Vec<u128>) -> Self {
        Self {
            ctx,
            sv,
            x_samples,
            seq: OnceLock::new(),
        }
    }

    /// Uses [`c38_samples`] for the given seed.
    pub fn with_seed(ctx: &'a PrimeCtx, sv: &'a SpecialValues, seed: u64) -> Self {
        Self::new(ctx, sv, c38_samples(ctx.p(), seed))
    }

    pub fn x_samples(&self) -> &[u128] {
        &self.x_samples
    }

    /// `g_k`, `h_k`, `g_k(x)` mod `p^work`, computed on first use.
    pub fn seq(&self) -> &SeqResidues {
        self.seq
            .get_or_init(|| stream_residues(self.ctx, &self.x_samples))
    }
}

fn check_preconditions(env: &EvalEnv<'_>, spec: &CongruenceSpec) -> Result<()> {
    if env.ctx.work() < spec.required_precision {
        return Err(Error::InsufficientPrecision {
            needed: spec.required_precision as i64,
            available: env.ctx.work() as i64,
        });
    }
    if spec.needs_euler && env.sv.euler_pm3.is_none() {
        return Err(Error::Config(format!(
            "{} needs E_(p-3), which was not computed",
            spec.id
        )));
    }
    Ok(())
}

/// Per-instance residues `(index, lhs mod p^m, rhs mod p^m)`.
pub fn evaluate_instances(
    env: &EvalEnv<'_>,
    spec: &CongruenceSpec,
) -> Result<Vec<(Option<u64>, Residue, Residue)>> {
    check_preconditions(env, spec)?;
    (spec.eval)(env)?
        .into_iter()
        .map(|i| {
            Ok((
                i.index,
                i.lhs.reduce(spec.mod_exp)?,
                i.rhs.reduce(spec.mod_exp)?,
            ))
        })
        .collect()
}

fn verdict_from(
    env: &EvalEnv<'_>,
    spec: &CongruenceSpec,
    instances: &[Instance],
) -> Result<Verdict> {
    let work = env.ctx.work();
    let mut best: Option<(DiffValuation, &Instance)> = None;
    for inst in instances {
        // both sides must be p-integral and known to the asserted modulus
        inst.lhs.reduce(spec.mod_exp)?;
        inst.rhs.reduce(spec.mod_exp)?;
        let dv = DiffValuation::of(&(inst.lhs - inst.rhs), work);
        if best
            .as_ref()
            .is_none_or(|(b, _)| dv.tightness(b) == Ordering::Less)
        {
            best = Some((dv, inst));
        }
    }
    let (dv, inst) =
        best.ok_or_else(|| Error::Config(format!("{} produced no instances", spec.id)))?;
    let m = spec.mod_exp as i64;
    if let DiffValuation::AtLeast(a) = dv {
        if a < m {
            return Err(Error::InsufficientPrecision {
                needed: m,
                available: a,
            });
        }
    }
    Ok(Verdict {
        id: spec.id,
        p: env.ctx.p(),
        mod_exp: spec.mod_exp,
        lhs: inst.lhs.reduce(spec.mod_exp)?,
        rhs: inst.rhs.reduce(spec.mod_exp)?,
        pass: dv.bound() >= m,
        diff_valuation: dv,
        witness_index: if spec.quantified { inst.index } else { None },
        status: spec.status,
    })
}

/// Evaluates one registry entry at the prime of `env`.
pub fn evaluate(env: &EvalEnv<'_>, spec: &CongruenceSpec) -> Result<Verdict> {
    check_preconditions(env, spec)?;
    let instances = (spec.eval)(env)?;
    verdict_from(env, spec, &instances)
}

/// The polynomial congruence at each given `x`, one verdict per sample.
pub fn evaluate_c38(
    ctx: &PrimeCtx,
    sv: &SpecialValues,
    x_samples: &[Residue],
) -> Result<Vec<Verdict>> {
    let spec = lookup("C3.8")?;
    let xs: Vec<u128> = x_samples.iter().map(|x| x.value()).collect();
    let env = EvalEnv::new(ctx, sv, xs);
    check_preconditions(&env, spec)?;
    let instances = (spec.eval)(&env)?;
    instances
        .iter()
        .map(|i| verdict_from(&env, spec, std::slice::from_ref(i)))
        .collect()
}
