use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use configprob::analytic::{connection_probability, Arithmetic, SeriesMode};
use configprob::degree::sample_degree_sequence;
use configprob::oracle::exact_connection_probability;
use configprob::{sample_configuration, DegreeDistribution, DegreeSequence};

fn sampler(c: &mut Criterion) {
    let dist = DegreeDistribution::PowerLaw {
        exponent: 2.5,
        k_min: 1,
        k_max: 100,
    };
    let seq = sample_degree_sequence(&dist, 1000, 7).unwrap();
    let mut seed = 0u64;
    c.bench_function("sample_configuration power-law N=1000", |b| {
        b.iter(|| {
            seed += 1;
            black_box(sample_configuration(&seq, seed))
        })
    });
}

fn series(c: &mut Criterion) {
    let seq = DegreeSequence::from_raw(&[40, 35, 20, 10, 5, 5, 3, 2]).unwrap();
    c.bench_function("connection_probability exact i_max=35", |b| {
        b.iter(|| connection_probability(black_box(&seq), 0, 1, SeriesMode::Full).unwrap())
    });
    c.bench_function("connection_probability float i_max=35", |b| {
        b.iter(|| {
            configprob::analytic::connection_probability_with(
                black_box(&seq),
                0,
                1,
                SeriesMode::Full,
                Arithmetic::Float,
            )
            .unwrap()
        })
    });
}

fn oracle(c: &mut Criterion) {
    let seq = DegreeSequence::from_raw(&[3, 3, 2, 2, 1, 1]).unwrap();
    c.bench_function("exact_connection_probability 2L=12", |b| {
        b.iter(|| exact_connection_probability(black_box(&seq), 0, 1).unwrap())
    });
}

criterion_group!(benches, sampler, series, oracle);
criterion_main!(benches);
