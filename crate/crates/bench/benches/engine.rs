use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use kar2_core::grasscohom::{build, idempotents};
use kar2_core::kar2::{bj_two_idempotent, check_two_idem};
use kar2_core::{demazure_j, Monomial, ParabolicSet, Poly, Rational};

fn demazure(c: &mut Criterion) {
    let f = Poly::from_terms(
        4,
        vec![
            (Monomial::from_exponents(&[3, 2, 1, 0]), Rational::from_int(1)),
            (Monomial::from_exponents(&[0, 1, 2, 3]), Rational::from_int(-2)),
            (Monomial::from_exponents(&[2, 2, 2, 0]), Rational::from_int(5)),
        ],
    );
    let j = ParabolicSet::new(vec![1, 2, 3]);
    c.bench_function("demazure_j w0 in S4", |b| b.iter(|| demazure_j(black_box(&f), &j).unwrap()));
}

fn grassmannian(c: &mut Criterion) {
    let sigma: Vec<Rational> = [1, 1, -1, 2, 0].iter().map(|&x| Rational::from_int(x)).collect();
    c.bench_function("build H_2 N=5", |b| b.iter(|| build(black_box(&sigma), 2).unwrap()));
    let alg = build(&sigma, 2).unwrap();
    c.bench_function("idempotents H_2 N=5", |b| b.iter(|| idempotents(black_box(&alg)).unwrap()));
}

fn two_idem(c: &mut Criterion) {
    let j = ParabolicSet::new(vec![1, 2]);
    c.bench_function("B_J two-idempotent check J={1,2} n=4", |b| {
        b.iter(|| check_two_idem(&bj_two_idempotent(black_box(&j), 4).unwrap()).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = demazure, grassmannian, two_idem
}
criterion_main!(benches);
