use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schur_core::casesplit::{split, SplitOptions};
use schur_core::fixtures;
use schur_core::presentation::{Assignment, Presentation};
use schur_core::smith::{concrete_mult, mult, snf_integer, Budget, PivotStrategy};

fn random_square(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-20..=20))).collect()).collect()
}

fn fixture(name: &str) -> Presentation {
    fixtures::by_name(name).expect("bundled fixture").presentation().expect("fixture parses")
}

fn integer(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let batch: Vec<_> = (0..32).map(|_| random_square(&mut rng, 8)).collect();
    c.bench_function("snf_integer 32 x 8x8", |b| {
        b.iter(|| batch.iter().map(|m| snf_integer(black_box(m), false).rank).sum::<usize>())
    });
    c.bench_function("snf_integer 32 x 8x8 with transforms", |b| {
        b.iter(|| batch.iter().map(|m| snf_integer(black_box(m), true).rank).sum::<usize>())
    });
}

fn concrete(c: &mut Criterion) {
    let stress = fixture("dim7stress");
    let a: Assignment = stress.params().iter().map(|x| (x.clone(), 1)).collect();
    let at5 = stress.evaluate_concrete(5, &a).expect("evaluates");
    c.bench_function("concrete mult dim7 at p=5", |b| b.iter(|| concrete_mult(black_box(&at5)).unwrap()));
}

fn symbolic(c: &mut Criterion) {
    let sym3 = fixture("sym3");
    c.bench_function("symbolic mult sym3", |b| {
        b.iter(|| mult(black_box(&sym3), &Budget::default(), PivotStrategy::Sparse).unwrap())
    });
    c.bench_function("case split sym3", |b| b.iter(|| split(black_box(&sym3), &SplitOptions::default()).unwrap()));
}

criterion_group!(benches, integer, concrete, symbolic);
criterion_main!(benches);
