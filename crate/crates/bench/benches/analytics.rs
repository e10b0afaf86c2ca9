use criterion::{criterion_group, criterion_main, Criterion};
use redq_bench::{complete_model, ring_model};
use redq_core::asymptotics::alpha_profile;
use redq_core::product_form::{
    mean_per_type, occupancy_distribution, pgf, total_queue_distribution, OccupancyOptions,
    PgfOptions,
};
use std::hint::black_box;

fn bench_pgf(c: &mut Criterion) {
    let popts = PgfOptions::default();
    let ring = ring_model(0.9);
    let complete = complete_model(4, 0.9);
    let z_ring = vec![0.7; ring.type_count()];
    let z_complete = vec![0.7; complete.type_count()];
    c.bench_function("pgf_ring4", |b| {
        b.iter(|| pgf(black_box(&ring), black_box(&z_ring), &popts).unwrap())
    });
    c.bench_function("pgf_complete4", |b| {
        b.iter(|| pgf(black_box(&complete), black_box(&z_complete), &popts).unwrap())
    });
}

fn bench_occupancy(c: &mut Criterion) {
    let oopts = OccupancyOptions::default();
    let ring = ring_model(0.8);
    c.bench_function("occupancy_ring4_q10", |b| {
        b.iter(|| occupancy_distribution(black_box(&ring), 10, &oopts).unwrap())
    });
    let complete = complete_model(4, 0.8);
    c.bench_function("occupancy_complete4_q8", |b| {
        b.iter(|| occupancy_distribution(black_box(&complete), 8, &oopts).unwrap())
    });
    c.bench_function("total_queue_ring4_q200", |b| {
        b.iter(|| total_queue_distribution(black_box(&ring), 200).unwrap())
    });
}

fn bench_alpha(c: &mut Criterion) {
    let oopts = OccupancyOptions::default();
    let complete12 = complete_model(12, 0.5);
    c.bench_function("alpha_complete12_q3", |b| {
        b.iter(|| alpha_profile(black_box(&complete12), 3, &oopts).unwrap())
    });
}

fn bench_means(c: &mut Criterion) {
    let popts = PgfOptions::default();
    let ring = ring_model(0.99);
    c.bench_function("mean_per_type_ring4_heavy", |b| {
        b.iter(|| mean_per_type(black_box(&ring), &popts).unwrap())
    });
}

criterion_group!(benches, bench_pgf, bench_occupancy, bench_alpha, bench_means);
criterion_main!(benches);
