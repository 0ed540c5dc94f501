use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sublinear_match::estimate::{estimate, EstimatorConfig, EstimatorKind};
use sublinear_match::experiment::{query_trials, round_trials};
use sublinear_match::graph::gnp;
use sublinear_match::par::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn estimators(c: &mut Criterion) {
    let g = gnp(10_000, 8.0 / 9_999.0, 1).unwrap();
    let cfg = EstimatorConfig {
        samples: Some(20_000),
        ..Default::default()
    };
    let mut group = c.benchmark_group("estimate");
    group.sample_size(10);
    for (kind, eps) in [
        (EstimatorKind::ListAdditive, 0.2),
        (EstimatorKind::ListMultiplicative, 0.5),
    ] {
        for (name, exec) in MODES {
            group.bench_with_input(
                BenchmarkId::new(format!("{kind:?}"), name),
                &exec,
                |b, &exec| b.iter(|| estimate(kind, black_box(&g), eps, 7, &cfg, exec).unwrap()),
            );
        }
    }
    let small = gnp(300, 4.0 / 299.0, 2).unwrap();
    let matrix = EstimatorConfig {
        samples: Some(200),
        ..Default::default()
    };
    for (name, exec) in MODES {
        group.bench_with_input(
            BenchmarkId::new("MatrixAdditive", name),
            &exec,
            |b, &exec| {
                b.iter(|| {
                    estimate(
                        EstimatorKind::MatrixAdditive,
                        black_box(&small),
                        0.25,
                        7,
                        &matrix,
                        exec,
                    )
                    .unwrap()
                })
            },
        );
    }
    group.finish();
}

fn experiments(c: &mut Criterion) {
    let g = gnp(10_000, 8.0 / 9_999.0, 3).unwrap();
    let mut group = c.benchmark_group("experiments");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("query_trials", name), &exec, |b, &exec| {
            b.iter(|| query_trials(black_box(&g), 5_000, 11, exec))
        });
    }
    let rounds = gnp(1_000, 8.0 / 999.0, 4).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("round_trials", name), &exec, |b, &exec| {
            b.iter(|| round_trials(black_box(&rounds), 20, 11, true, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, estimators, experiments);
criterion_main!(benches);
