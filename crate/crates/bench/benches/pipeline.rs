use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use splitkit::{
    construct, enumerate_types, phi_matrix, psi_from_poly, sample_distribution, splitting_type,
    CurveContext, FieldSpec, SampleConfig, DEFAULT_PRIME,
};
use splitkit_bench::balanced_fixture;

const POINTS: [(usize, usize, usize); 3] = [(5, 5, 2), (6, 4, 3), (7, 7, 4)];

fn bench_split(c: &mut Criterion) {
    let mut group = c.benchmark_group("splitting_type");
    for (n, e, d) in POINTS {
        let (_, _, psi) = balanced_fixture(n, e, d, FieldSpec::Rationals);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}-{e}-{d}")), &psi, |b, psi| {
            b.iter(|| splitting_type(black_box(psi)).unwrap())
        });
    }
    group.finish();
}

fn bench_psi(c: &mut Criterion) {
    let mut group = c.benchmark_group("psi_from_poly");
    for (n, e, d) in POINTS {
        let (ctx, f, _) = balanced_fixture(n, e, d, FieldSpec::Rationals);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}-{e}-{d}")), &f, |b, f| {
            b.iter(|| psi_from_poly(&ctx, d, black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn bench_construct_all(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct_all_types");
    group.sample_size(10);
    for (n, e, d) in POINTS {
        let ctx = CurveContext::new(n, e, FieldSpec::Rationals).unwrap();
        let types = enumerate_types(n, e, d).unwrap();
        group.bench_function(format!("{n}-{e}-{d}"), |b| {
            b.iter(|| {
                for t in &types {
                    black_box(construct(&ctx, d, t).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn bench_phi(c: &mut Criterion) {
    let mut group = c.benchmark_group("phi_matrix_rank");
    group.sample_size(10);
    for (n, e, d) in POINTS {
        let ctx = CurveContext::new(n, e, FieldSpec::PrimeField(DEFAULT_PRIME)).unwrap();
        group.bench_function(format!("{n}-{e}-{d}"), |b| b.iter(|| phi_matrix(&ctx, d).unwrap().rank()));
    }
    group.finish();
}

fn bench_sample(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_200");
    group.sample_size(10);
    for (n, e, d) in POINTS {
        let ctx = CurveContext::new(n, e, FieldSpec::PrimeField(DEFAULT_PRIME)).unwrap();
        let cfg = SampleConfig::new(ctx, d, 200, 1, 0).unwrap();
        group.bench_function(format!("{n}-{e}-{d}"), |b| b.iter(|| sample_distribution(&cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_split, bench_psi, bench_construct_all, bench_phi, bench_sample);
criterion_main!(benches);
