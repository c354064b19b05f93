use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use alexmod::corpus::ten_99;
use alexmod::obstruction::{build_obstruction_system, run_filtration, solution_basis};
use alexmod::poly::Poly;
use alexmod::seifert::{alexander_matrix, alexander_polynomial};
use alexmod::snf::smith_normal_form;
use alexmod::RepBuilder;

fn bench_alexander(c: &mut Criterion) {
    let s = ten_99();
    c.bench_function("alexander_polynomial_10_99", |b| {
        b.iter(|| {
            let a = alexander_matrix(black_box(&s));
            black_box(alexander_polynomial(&a).unwrap());
        })
    });
}

fn bench_snf(c: &mut Criterion) {
    let a = alexander_matrix(&ten_99());
    c.bench_function("smith_normal_form_10_99", |b| {
        b.iter(|| black_box(smith_normal_form(black_box(&a))))
    });
}

fn bench_nullspace(c: &mut Criterion) {
    let s = ten_99();
    let f = Poly::from_int_coeffs(&[1, -1, 1]);
    let sys = build_obstruction_system(&s, &f, 3).unwrap();
    c.bench_function("obstruction_nullspace_10_99_n3", |b| {
        b.iter(|| black_box(solution_basis(black_box(&sys))))
    });
}

fn bench_filtration(c: &mut Criterion) {
    let s = ten_99();
    c.bench_function("run_filtration_10_99", |b| {
        b.iter(|| black_box(run_filtration(black_box(&s)).unwrap()))
    });
}

fn bench_homomorphism_check(c: &mut Criterion) {
    let s = ten_99();
    let f = Poly::from_int_coeffs(&[1, -1, 1]);
    let sys = build_obstruction_system(&s, &f, 3).unwrap();
    let branch = &solution_basis(&sys)[0];
    let builder = RepBuilder::from_solution(&s, &branch.field, 3, &branch.value[0]).unwrap();
    c.bench_function("verify_homomorphism_10_99_n3_100", |b| {
        b.iter(|| black_box(builder.verify_homomorphism(100, 1)))
    });
}

criterion_group!(
    benches,
    bench_alexander,
    bench_snf,
    bench_nullspace,
    bench_filtration,
    bench_homomorphism_check
);
criterion_main!(benches);
