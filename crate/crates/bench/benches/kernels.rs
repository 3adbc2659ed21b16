use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use summa_bench::{random_cloud, random_polytope, random_sequence};
use summa_core::convexdual::{conv_contains, extreme_points, i_generates, DualBody, GeneratingSet};
use summa_core::simonslab::{
    check_simons, check_theorem31, random_suite, LabOptions, PMapSpec, SuiteSpec,
};
use summa_core::summability::{
    classify_statistical, pre_cauchy_mean_term, strong_term, NumericOptions, SummabilityMatrix,
};
use summa_core::SequenceSpec;

fn hull(c: &mut Criterion) {
    let mut g = c.benchmark_group("hull");
    for (count, dim) in [(50, 2), (200, 3), (500, 4)] {
        let cloud = random_cloud(count, dim, 1);
        g.bench_with_input(
            BenchmarkId::new("extreme_points", format!("{count}x{dim}")),
            &cloud,
            |b, cloud| b.iter(|| extreme_points(black_box(cloud)).unwrap()),
        );
        let target = vec![0.1; dim];
        g.bench_with_input(
            BenchmarkId::new("conv_contains", format!("{count}x{dim}")),
            &cloud,
            |b, cloud| b.iter(|| conv_contains(cloud, black_box(&target), 1e-9).unwrap()),
        );
    }
    g.finish();
}

fn generation(c: &mut Criterion) {
    let k = random_polytope(12, 4, 2);
    let b = GeneratingSet::FinitePoints(k.vertices().unwrap().to_vec());
    c.bench_function("i_generates/polytope_12x4", |bench| {
        bench.iter(|| i_generates(&b, &k, 1e-2, 0).unwrap())
    });
    let disk = DualBody::ball(1.0, 2).unwrap();
    let samples = GeneratingSet::sphere_sample(10_000, 7, None);
    c.bench_function("i_generates/disk_10k", |bench| {
        bench.iter(|| i_generates(&samples, &disk, 1e-2, 0).unwrap())
    });
}

fn terms(c: &mut Criterion) {
    let a = SummabilityMatrix::cesaro();
    let squares = SequenceSpec::squares();
    let mut g = c.benchmark_group("terms");
    for n in [1_000u64, 100_000] {
        g.bench_with_input(BenchmarkId::new("strong_term", n), &n, |b, &n| {
            b.iter(|| strong_term(&a, &squares, 0.0, 2.0, black_box(n)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("pre_cauchy_mean_term", n), &n, |b, &n| {
            b.iter(|| pre_cauchy_mean_term(&squares, black_box(n)))
        });
    }
    g.finish();
    let opts = NumericOptions {
        diagnostics: false,
        ..NumericOptions::default()
    };
    c.bench_function("classify_statistical/squares", |b| {
        b.iter(|| classify_statistical(&a, black_box(&squares), &opts).unwrap())
    });
}

fn experiments(c: &mut Criterion) {
    let suite = random_suite(&SuiteSpec::new(100), 2024).unwrap();
    let opts = LabOptions::default();
    c.bench_function("simons/suite_100", |b| {
        b.iter(|| {
            for inst in &suite {
                check_simons(&inst.body, &inst.generating_set, &inst.xs, &opts).unwrap();
            }
        })
    });
    let k = random_polytope(8, 3, 5);
    let b = GeneratingSet::FinitePoints(k.vertices().unwrap().to_vec());
    let xs = random_sequence(3, 8, 5);
    let pm = PMapSpec::strong(SummabilityMatrix::cesaro(), 2.0).unwrap();
    c.bench_function("theorem31/strong_p2", |bench| {
        bench.iter(|| check_theorem31(&pm, &k, &b, black_box(&xs), &opts).unwrap())
    });
}

criterion_group!(benches, hull, generation, terms, experiments);
criterion_main!(benches);
