use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sigmatau_core::benefit::{enumerate, nu_census, BenefitQuery};
use sigmatau_core::primes::sieve;
use sigmatau_core::superchampion::{critical_stream, generate_sequence, psi};
use sigmatau_core::{PrimeTable, RealX};

fn bench_sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve");
    for limit in [100_000u64, 2_500_000] {
        group.bench_with_input(BenchmarkId::from_parameter(limit), &limit, |b, &limit| {
            b.iter(|| sieve(black_box(limit)).unwrap())
        });
    }
    group.finish();
}

fn bench_sequence(c: &mut Criterion) {
    let table = PrimeTable::new(2_500_000).unwrap();
    let mut group = c.benchmark_group("sequence");
    group.sample_size(10);
    group.bench_function("stream_to_175939", |b| {
        b.iter(|| critical_stream(&table, black_box(psi(175_939, 1))).unwrap())
    });
    group.bench_function("records_to_175939", |b| {
        b.iter(|| generate_sequence(&table, black_box(psi(175_939, 1))).unwrap())
    });
    group.finish();
}

fn bench_benefit(c: &mut Criterion) {
    let table = PrimeTable::new(2_500_000).unwrap();
    let seq = generate_sequence(&table, psi(175_939, 1)).unwrap();
    let rec = seq.record(47).unwrap();
    let mut group = c.benchmark_group("benefit");
    group.sample_size(10);
    for budget in ["0.0011545", "0.003"] {
        let q = BenefitQuery::new(
            &table,
            rec.eps_hi,
            &rec,
            RealX::parse_decimal(budget).unwrap(),
        )
        .unwrap();
        group.bench_with_input(BenchmarkId::new("enumerate_at_47", budget), &q, |b, q| {
            b.iter(|| enumerate(&table, q).unwrap())
        });
    }
    group.bench_function("census_2.597", |b| {
        b.iter(|| nu_census(&table, &seq, RealX::parse_decimal("2.597").unwrap()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_sieve, bench_sequence, bench_benefit);
criterion_main!(benches);
