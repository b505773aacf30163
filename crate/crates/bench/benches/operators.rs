use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use bergman_bench::profile;
use bergman_core::geometry::AnalyticMap;
use bergman_core::operators::{boundedness_functional, toeplitz_matrix, AGrid, MatrixOracle, Scenario};
use bergman_core::quadrature::PeakIntegrator;

fn matrix_oracle(c: &mut Criterion) {
    let p = profile("std:alpha=1");
    let u = AnalyticMap::parse("poly:1,0.5").unwrap();
    let phi = AnalyticMap::parse("poly:0.1,0.5").unwrap();
    let mut group = c.benchmark_group("matrix oracle");
    group.sample_size(10);
    for n in [32, 64] {
        group.bench_function(format!("build + svd, N = {n}"), |b| b.iter(|| MatrixOracle::build(&u, &phi, &p, n).unwrap().op_norm()));
    }
    let shared = Arc::new(p);
    group.bench_function("toeplitz, N = 16", |b| b.iter(|| toeplitz_matrix(&u, &phi, &shared, 16).unwrap()));
    group.finish();
}

fn boundedness(c: &mut Criterion) {
    let scenario =
        Scenario::from_json(r#"{"weight": "std:alpha=1", "u": "one", "phi": "poly:0,0.5", "p": 2, "q": 2}"#).unwrap();
    let spec = scenario.build().unwrap();
    let mut group = c.benchmark_group("functionals");
    group.sample_size(10);
    group.bench_function("boundedness, 6 levels", |b| {
        b.iter(|| boundedness_functional(&spec, &AGrid::coarse(6), &PeakIntegrator::default()).unwrap().value)
    });
    group.finish();
}

criterion_group!(benches, matrix_oracle, boundedness);
criterion_main!(benches);
