use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use vinberg::catalog::run_case;
use vinberg::deformation::classify_subregular;
use vinberg::grading::stability_witness;
use vinberg::slice::synthesize_curve_family;
use vinberg::DynkinType;
use vinberg_bench::inner_grading;

fn roots(c: &mut Criterion) {
    c.bench_function("e8_roots", |b| {
        b.iter(|| vinberg::RootSystem::new(DynkinType::E, 8).unwrap())
    });
}

fn gradings(c: &mut Criterion) {
    c.bench_function("f4_m2_grading", |b| b.iter(|| inner_grading(DynkinType::F, 4, 2)));
    let g = inner_grading(DynkinType::F, 4, 8);
    c.bench_function("f4_m8_stability", |b| b.iter(|| stability_witness(&g, 4, black_box(7))));
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    group.bench_function("f4_m2_orbits", |b| b.iter(|| run_case(DynkinType::F, 4, 2, 1, 7).unwrap()));
    group.bench_function("e8_m5_synthesis", |b| {
        b.iter(|| synthesize_curve_family(black_box(&[20, 30, 40]), &[40, 60], 7).unwrap())
    });
    group.bench_function("e8_m5_deformation", |b| {
        b.iter(|| classify_subregular(DynkinType::E, 8, 5, 1).unwrap())
    });
    group.finish();
}

criterion_group!(benches, roots, gradings, pipeline);
criterion_main!(benches);
