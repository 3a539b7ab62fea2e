use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use typei_core::algebra::vector_norm;
use typei_core::automorphism::{evaluate_word, validate};
use typei_core::decompose::decompose;
use typei_core::random::*;
use typei_core::scalar::rational;
use typei_core::topology::{sample_element, v_membership};

fn bench_validate_and_decompose(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphism");
    for degree in [2usize, 3, 4] {
        let mut rng = seeded_rng(degree as u64);
        let spec = random_spec(&mut rng, "bench", &[degree, 1], 3).unwrap();
        let word = random_word(&mut rng, &spec, 3, &EntryDist::integers(2));
        let t = evaluate_word(spec.clone(), &word).unwrap();
        group.bench_with_input(BenchmarkId::new("validate", degree), &t, |b, t| {
            b.iter(|| validate(spec.clone(), black_box(t.basis_images().to_vec()), None).is_ok())
        });
        group.bench_with_input(BenchmarkId::new("decompose", degree), &t, |b, t| {
            b.iter(|| decompose(black_box(t)).unwrap())
        });
    }
    group.finish();
}

fn bench_norm(c: &mut Criterion) {
    let mut group = c.benchmark_group("norm");
    for degree in [2usize, 4, 6] {
        let mut rng = seeded_rng(degree as u64);
        let spec = random_spec(&mut rng, "bench", &[degree], 8).unwrap();
        let x = random_element(&mut rng, &spec, &EntryDist::fractions(5, 4));
        group.bench_with_input(BenchmarkId::new("vector_norm", degree), &x, |b, x| {
            b.iter(|| vector_norm(black_box(x)))
        });
        group.bench_with_input(BenchmarkId::new("certify", degree), &x, |b, x| {
            let n = vector_norm(x);
            b.iter(|| n.certify(black_box(x)))
        });
    }
    group.finish();
}

fn bench_v_membership(c: &mut Criterion) {
    let mut rng = seeded_rng(1);
    let spec = random_spec(&mut rng, "bench", &[1, 2, 3], 6).unwrap();
    let nb = random_neighborhood(&mut rng, &spec, rational(1, 2));
    let xs: Vec<_> = (0..64).map(|_| sample_element(&mut rng, &spec)).collect();
    c.bench_function("v_membership/64", |b| {
        b.iter(|| xs.iter().filter(|x| v_membership(black_box(x), &nb).unwrap().is_in()).count())
    });
}

criterion_group!(benches, bench_validate_and_decompose, bench_norm, bench_v_membership);
criterion_main!(benches);
