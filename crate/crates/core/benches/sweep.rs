use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use congforge::identities::{run_envelope, Envelope};
use congforge::par::Execution;
use congforge::runner::{run_batch, BatchConfig};

fn executions() -> Vec<(&'static str, usize)> {
    let cpus = std::thread::available_parallelism()
        .map_or(2, |n| n.get())
        .max(2);
    let mut out = vec![("sequential", 1)];
    if Execution::parallel_available() {
        out.push(("parallel", cpus));
    }
    out
}

fn registry_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("registry_sweep");
    group.sample_size(10);
    for hi in [200u64, 500] {
        for (name, jobs) in executions() {
            let cfg = BatchConfig {
                lo: 5,
                hi,
                jobs,
                ..BatchConfig::default()
            };
            group.bench_with_input(BenchmarkId::new(name, hi), &cfg, |b, cfg| {
                b.iter(|| black_box(run_batch(cfg).unwrap()))
            });
        }
    }
    group.finish();
}

fn conjecture_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("conjecture_scan");
    group.sample_size(10);
    for (name, jobs) in executions() {
        let cfg = BatchConfig {
            lo: 5,
            hi: 2000,
            ids: vec!["CONJ1".into()],
            jobs,
            ..BatchConfig::default()
        };
        group.bench_function(name, |b| b.iter(|| black_box(run_batch(&cfg).unwrap())));
    }
    group.finish();
}

fn identity_envelope(c: &mut Criterion) {
    let mut group = c.benchmark_group("identity_envelope");
    group.sample_size(10);
    let env = Envelope {
        max_n: 20,
        max_abs_x: 20,
        max_m: 5,
    };
    for (name, jobs) in executions() {
        group.bench_function(name, |b| {
            b.iter(|| black_box(run_envelope(env, Execution::from_jobs(jobs))))
        });
    }
    group.finish();
}

criterion_group!(benches, registry_sweep, conjecture_scan, identity_envelope);
criterion_main!(benches);
