use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use congforge::identities::{run_envelope, Envelope};
use congforge::par::Execution;
use congforge::runner::{
    emit_report, run_batch, value_command, BatchConfig, Format, ValueQuery, DEFAULT_EULER_BOUND,
};
use congforge::Error;

#[derive(Parser)]
#[command(
    name = "congforge",
    version,
    about = "Verify harmonic-number and central-binomial congruences over ranges of primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run registry entries over a prime range and emit a report.
    Verify {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Comma-separated registry ids, or `all`.
        #[arg(long, default_value = "all")]
        ids: String,
    },
    /// Shorthand for `verify --ids CONJ1`.
    Conjecture {
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Print a special value modulo p.
    Value {
        /// A prime greater than 3.
        p: u64,
        /// One of `bernoulli-third`, `bernoulli:N`, `euler`, `legendre3`.
        what: String,
    },
    /// Check the exact combinatorial identities over a parameter envelope.
    Identities {
        #[arg(long, default_value_t = 50)]
        max_n: i64,
        #[arg(long, default_value_t = 50)]
        max_x: i64,
        #[arg(long, env = "CONGFORGE_JOBS")]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Inclusive prime range `LO:HI`.
    #[arg(long, default_value = "5:1000", value_parser = parse_range)]
    primes: (u64, u64),
    /// Working precision in p-adic digits.
    #[arg(long, default_value_t = 5)]
    work: u32,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, env = "CONGFORGE_JOBS")]
    jobs: Option<usize>,
    /// Seed for the sampled points of the polynomial congruence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip Euler-number entries above this prime.
    #[arg(long, default_value_t = DEFAULT_EULER_BOUND)]
    euler_bound: u64,
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = lo.trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    Ok((lo, hi))
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn default_jobs(jobs: Option<usize>) -> usize {
    jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn parse_ids(ids: &str) -> Vec<String> {
    if ids.trim().eq_ignore_ascii_case("all") {
        return Vec::new();
    }
    ids.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn sweep(args: SweepArgs, ids: Vec<String>) -> Result<ExitCode, Error> {
    let cfg = BatchConfig {
        lo: args.primes.0,
        hi: args.primes.1,
        ids,
        work: args.work,
        jobs: default_jobs(args.jobs),
        seed: args.seed,
        euler_bound: args.euler_bound,
    };
    let report = run_batch(&cfg)?;
    emit_report(&report, args.format, args.out.as_deref())?;
    let s = &report.summary;
    eprintln!(
        "{} verdicts: {} passed, {} failed, {} skipped",
        s.total,
        s.passed,
        s.failed,
        s.skipped.len()
    );
    for f in &s.failures {
        match f.witness_index {
            Some(i) => eprintln!("FAIL {} p={} at index {i}", f.id, f.p),
            None => eprintln!("FAIL {} p={}", f.id, f.p),
        }
    }
    Ok(if report.has_failures() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify { sweep: args, ids } => sweep(args, parse_ids(&ids)),
        Command::Conjecture { sweep: args } => sweep(args, vec!["CONJ1".into()]),
        Command::Value { p, what } => {
            let query: ValueQuery = what.parse()?;
            println!("{}", value_command(p, query)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Identities { max_n, max_x, jobs } => {
            if max_n < 0 || max_x < 0 {
                return Err(Error::Config("envelope bounds must be non-negative".into()));
            }
            let env = Envelope {
                max_n,
                max_abs_x: max_x,
                ..Envelope::default()
            };
            let report = run_envelope(env, Execution::from_jobs(default_jobs(jobs)));
            for (id, (pass, total)) in &report.counts {
                println!("{id}\t{pass}/{total}");
            }
            for f in &report.failures {
                eprintln!("FAIL {} {:?}: lhs {} rhs {}", f.id, f.params, f.lhs, f.rhs);
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
