//! Prime sweeps and report emission.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::congruences::{evaluate, lookup, registry, CongruenceSpec, EvalEnv, Status, Verdict};
use crate::error::{Error, Result};
use crate::padic::MAX_WORK;
use crate::par::{self, Execution};
use crate::prime_ctx::{sieve_primes, PrimeCtx};
use crate::special::{bernoulli_mod_p, legendre_p3, SpecialValues};

pub const DEFAULT_WORK: u32 = 5;
pub const DEFAULT_EULER_BOUND: u64 = 20_000;

/// Parameters of one sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchConfig {
    pub lo: u64,
    pub hi: u64,
    /// Registry ids to run; empty means all.
    pub ids: Vec<String>,
    pub work: u32,
    pub jobs: usize,
    pub seed: u64,
    /// Entries needing `E_{p-3}` are skipped for primes above this bound.
    pub euler_bound: u64,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            lo: 5,
            hi: 1000,
            ids: Vec::new(),
            work: DEFAULT_WORK,
            jobs: 1,
            seed: 0,
            euler_bound: DEFAULT_EULER_BOUND,
        }
    }
}

impl BatchConfig {
    fn specs(&self) -> Result<Vec<&'static CongruenceSpec>> {
        if self.ids.is_empty() {
            return Ok(registry().iter().collect());
        }
        let mut specs = Vec::with_capacity(self.ids.len());
        for id in &self.ids {
            let spec = lookup(id)?;
            if !specs.iter().any(|s: &&CongruenceSpec| s.id == spec.id) {
                specs.push(spec);
            }
        }
        Ok(specs)
    }

    fn validate(&self, specs: &[&CongruenceSpec]) -> Result<()> {
        if self.lo <= 4 || self.lo > self.hi {
            return Err(Error::Config(format!(
                "prime range {}:{} must satisfy 4 < lo <= hi",
                self.lo, self.hi
            )));
        }
        if !(1..=MAX_WORK).contains(&self.work) {
            return Err(Error::Config(format!(
                "work must be in 1..={MAX_WORK}, got {}",
                self.work
            )));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        let needed = specs
            .iter()
            .map(|s| s.required_precision)
            .max()
            .unwrap_or(1);
        if self.work < needed {
            return Err(Error::InsufficientPrecision {
                needed: needed as i64,
                available: self.work as i64,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeRange {
    pub lo: u64,
    pub hi: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub primes: PrimeRange,
    pub prime_count: usize,
    pub ids: Vec<&'static str>,
    pub work: u32,
    pub seed: u64,
    pub euler_bound: u64,
}

/// One verdict in report form; residues are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultRow {
    pub id: &'static str,
    pub p: u64,
    pub mod_exp: u32,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub diff_valuation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_index: Option<u64>,
}

impl From<&Verdict> for ResultRow {
    fn from(v: &Verdict) -> Self {
        Self {
            id: v.id,
            p: v.p,
            mod_exp: v.mod_exp,
            lhs: v.lhs.value().to_string(),
            rhs: v.rhs.value().to_string(),
            pass: v.pass,
            diff_valuation: v.diff_valuation.to_string(),
            witness_index: v.witness_index,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdCounts {
    pub status: Option<Status>,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub id: &'static str,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_index: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skip {
    pub id: &'static str,
    pub p: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub per_id: BTreeMap<&'static str, IdCounts>,
    pub conjectures: Vec<&'static str>,
    pub failures: Vec<Failure>,
    pub skipped: Vec<Skip>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub results: Vec<ResultRow>,
    pub summary: Summary,
}

impl Report {
    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }
}

enum Outcome {
    Done(Verdict),
    Skipped(&'static str, u64, String),
}

fn run_prime(p: u64, specs: &[&'static CongruenceSpec], cfg: &BatchConfig) -> Result<Vec<Outcome>> {
    let ctx = PrimeCtx::build(p, cfg.work)?;
    let euler = p <= cfg.euler_bound && specs.iter().any(|s| s.needs_euler);
    let sv = SpecialValues::compute(&ctx, euler)?;
    let env = EvalEnv::with_seed(&ctx, &sv, cfg.seed);
    specs
        .iter()
        .map(|spec| {
            if spec.needs_euler && !euler {
                let reason = format!("p > euler bound {}", cfg.euler_bound);
                return Ok(Outcome::Skipped(spec.id, p, reason));
            }
            evaluate(&env, spec).map(Outcome::Done)
        })
        .collect()
}

/// Runs the selected registry entries over every prime in `[lo, hi]`.
///
/// The report does not depend on `jobs`: primes are evaluated independently
/// and results are sorted by `(p, id)` afterwards.
pub fn run_batch(cfg: &BatchConfig) -> Result<Report> {
    let specs = cfg.specs()?;
    cfg.validate(&specs)?;
    // the sieve is open at its lower end; sweeps include lo
    let primes = sieve_primes(cfg.lo - 1, cfg.hi);
    let per_prime = par::map(Execution::from_jobs(cfg.jobs), &primes, |&p| {
        run_prime(p, &specs, cfg)
    });

    let mut verdicts = Vec::new();
    let mut skipped = Vec::new();
    for outcome in per_prime {
        for o in outcome? {
            match o {
                Outcome::Done(v) => verdicts.push(v),
                Outcome::Skipped(id, p, reason) => skipped.push(Skip { id, p, reason }),
            }
        }
    }
    verdicts.sort_by(|a, b| (a.p, a.id).cmp(&(b.p, b.id)));
    skipped.sort_by(|a, b| (a.p, a.id).cmp(&(b.p, b.id)));

    let mut summary = Summary {
        conjectures: specs
            .iter()
            .filter(|s| s.status == Status::Conjecture)
            .map(|s| s.id)
            .collect(),
        ..Summary::default()
    };
    for spec in &specs {
        summary.per_id.insert(
            spec.id,
            IdCounts {
                status: Some(spec.status),
                ..IdCounts::default()
            },
        );
    }
    for v in &verdicts {
        let counts = summary.per_id.entry(v.id).or_default();
        if v.pass {
            counts.pass += 1;
            summary.passed += 1;
        } else {
            counts.fail += 1;
            summary.failed += 1;
            summary.failures.push(Failure {
                id: v.id,
                p: v.p,
                witness_index: v.witness_index,
            });
        }
    }
    for s in &skipped {
        summary.per_id.entry(s.id).or_default().skipped += 1;
    }
    summary.total = verdicts.len();
    summary.skipped = skipped;

    Ok(Report {
        meta: Meta {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            primes: PrimeRange {
                lo: cfg.lo,
                hi: cfg.hi,
            },
            prime_count: primes.len(),
            ids: specs.iter().map(|s| s.id).collect(),
            work: cfg.work,
            seed: cfg.seed,
            euler_bound: cfg.euler_bound,
        },
        results: verdicts.iter().map(ResultRow::from).collect(),
        summary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

pub const CSV_COLUMNS: [&str; 8] = [
    "id",
    "p",
    "mod_exp",
    "lhs",
    "rhs",
    "pass",
    "diff_valuation",
    "witness_index",
];

/// Renders a report; JSON output ends with a newline.
pub fn render_report(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out =
                serde_json::to_vec_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(CSV_COLUMNS).map_err(io)?;
            for r in &report.results {
                w.write_record([
                    r.id.to_string(),
                    r.p.to_string(),
                    r.mod_exp.to_string(),
                    r.lhs.clone(),
                    r.rhs.clone(),
                    r.pass.to_string(),
                    r.diff_valuation.clone(),
                    r.witness_index.map(|i| i.to_string()).unwrap_or_default(),
                ])
                .map_err(io)?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))
        }
    }
}

/// Writes the rendered report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> Result<()> {
    let bytes = render_report(report, format)?;
    match path {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Selector for the `value` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueQuery {
    BernoulliThird,
    Bernoulli(u64),
    Euler,
    Legendre3,
}

impl FromStr for ValueQuery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "bernoulli-third" => return Ok(ValueQuery::BernoulliThird),
            "euler" => return Ok(ValueQuery::Euler),
            "legendre3" => return Ok(ValueQuery::Legendre3),
            _ => {}
        }
        s.strip_prefix("bernoulli:")
            .and_then(|n| n.parse().ok())
            .map(ValueQuery::Bernoulli)
            .ok_or_else(|| Error::Config(format!("unknown value selector {s:?}")))
    }
}

/// A special value as printed by the `value` subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueOutput {
    Residue { value: u128, modulus: u128 },
    Sign(i8),
}

impl fmt::Display for ValueOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueOutput::Residue { value, modulus } => write!(f, "{value} (mod {modulus})"),
            ValueOutput::Sign(s) => write!(f, "{s}"),
        }
    }
}

/// Computes a special value mod `p`.
pub fn value_command(p: u64, query: ValueQuery) -> Result<ValueOutput> {
    let ctx = PrimeCtx::build(p, 1)?;
    let r = match query {
        ValueQuery::Legendre3 => return Ok(ValueOutput::Sign(legendre_p3(p))),
        ValueQuery::BernoulliThird => crate::special::bernoulli_third(&ctx),
        ValueQuery::Bernoulli(n) => bernoulli_mod_p(&ctx, n)?,
        ValueQuery::Euler => crate::special::euler_mod_p(&ctx),
    };
    Ok(ValueOutput::Residue {
        value: r.value(),
        modulus: r.modulus(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(lo: u64, hi: u64, ids: &[&str], work: u32) -> BatchConfig {
        BatchConfig {
            lo,
            hi,
            ids: ids.iter().map(|s| s.to_string()).collect(),
            work,
            ..BatchConfig::default()
        }
    }

    #[test]
    fn single_verdict_at_five() {
        let r = run_batch(&cfg(5, 5, &["T1.1"], 5)).unwrap();
        assert_eq!(r.results.len(), 1);
        let row = &r.results[0];
        assert_eq!(
            (row.lhs.as_str(), row.rhs.as_str(), row.pass),
            ("4", "4", true)
        );
        let json = serde_json::to_string(row).unwrap();
        assert_eq!(
            json,
            r#"{"id":"T1.1","p":5,"mod_exp":1,"lhs":"4","rhs":"4","pass":true,"diff_valuation":">=1"}"#
        );
    }

    #[test]
    fn conjecture_needs_work_five() {
        let err = run_batch(&cfg(5, 5, &["CONJ1"], 4)).unwrap_err();
        assert!(matches!(
            err,
            Error::InsufficientPrecision {
                needed: 5,
                available: 4
            }
        ));
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            run_batch(&cfg(3, 10, &[], 5)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            run_batch(&cfg(20, 10, &[], 5)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            run_batch(&cfg(5, 10, &[], 9)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            run_batch(&cfg(5, 10, &["X"], 5)),
            Err(Error::Unknown(_))
        ));
        let mut c = cfg(5, 10, &[], 5);
        c.jobs = 0;
        assert!(matches!(run_batch(&c), Err(Error::Config(_))));
    }

    #[test]
    fn sorted_and_counted() {
        let r = run_batch(&cfg(5, 40, &["T1.2", "T1.1", "S11B.HALF"], 5)).unwrap();
        assert_eq!(r.meta.prime_count, 10);
        assert_eq!(r.results.len(), 30);
        assert!(r
            .results
            .windows(2)
            .all(|w| (w[0].p, w[0].id) < (w[1].p, w[1].id)));
        let counted: usize = r.summary.per_id.values().map(|c| c.pass + c.fail).sum();
        assert_eq!(counted, r.results.len());
        assert!(!r.has_failures());
    }

    #[test]
    fn euler_entries_skip_above_bound() {
        let mut c = cfg(5, 30, &["S11B.HALF", "R2.1b", "T1.1"], 5);
        c.euler_bound = 11;
        let r = run_batch(&c).unwrap();
        assert_eq!(r.summary.skipped.len(), 2 * 5);
        assert_eq!(r.summary.per_id["R2.1b"].skipped, 5);
        assert!(!r.has_failures());
    }

    #[test]
    fn empty_results_render() {
        let r = run_batch(&cfg(24, 28, &["T1.1"], 5)).unwrap();
        let json = String::from_utf8(render_report(&r, Format::Json).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["results"], serde_json::json!([]));
        let csv = String::from_utf8(render_report(&r, Format::Csv).unwrap()).unwrap();
        assert_eq!(csv.trim_end(), CSV_COLUMNS.join(","));
    }

    #[test]
    fn conjecture_row_is_exact() {
        let r = run_batch(&cfg(5, 5, &["CONJ1"], 6)).unwrap();
        assert_eq!(r.results[0].diff_valuation, "4");
        assert_eq!(r.summary.conjectures, vec!["CONJ1"]);
    }

    #[test]
    fn values() {
        assert_eq!(
            value_command(7, "bernoulli-third".parse().unwrap())
                .unwrap()
                .to_string(),
            "6 (mod 7)"
        );
        assert_eq!(
            value_command(5, "legendre3".parse().unwrap())
                .unwrap()
                .to_string(),
            "-1"
        );
        assert_eq!(
            value_command(5, "euler".parse().unwrap())
                .unwrap()
                .to_string(),
            "4 (mod 5)"
        );
        assert_eq!(
            value_command(13, "bernoulli:10".parse().unwrap())
                .unwrap()
                .to_string(),
            "5 (mod 13)"
        );
        assert!("bernoulli:x".parse::<ValueQuery>().is_err());
    }
}
