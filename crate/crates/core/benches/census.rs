use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lacunary::census::{theorem2_census, ExperimentConfig, ExperimentKind};
use lacunary::homometry::{census_phi_image, PhiCensusOptions};
use lacunary::Exec;

fn executors() -> Vec<(&'static str, Exec)> {
    vec![("sequential", Exec::sequential()), ("parallel", Exec::new(0))]
}

fn phi_census(c: &mut Criterion) {
    let mut g = c.benchmark_group("phi_census");
    g.sample_size(10);
    for n in [14u32, 16] {
        for (name, exec) in executors() {
            let opts = PhiCensusOptions {
                exec,
                ..Default::default()
            };
            g.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| black_box(census_phi_image(n, &opts).unwrap()))
            });
        }
    }
    g.finish();
}

fn theorem2(c: &mut Criterion) {
    let mut g = c.benchmark_group("theorem2_k3");
    g.sample_size(10);
    for big_n in [16u64, 22] {
        for (name, exec) in executors() {
            let mut cfg = ExperimentConfig::exhaustive(ExperimentKind::Theorem2, 3, big_n);
            cfg.workers = exec.workers();
            g.bench_with_input(BenchmarkId::new(name, big_n), &cfg, |b, cfg| {
                b.iter(|| black_box(theorem2_census(cfg).unwrap().processed))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, phi_census, theorem2);
criterion_main!(benches);
