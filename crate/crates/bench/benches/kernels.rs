//! Benchmarks for the three hot kernels: pregallery rows, Hecke products,
//! and sphere cardinalities.

use criterion::{criterion_group, criterion_main, Criterion};
use coxhecke::cosets::{enumerate_r, DoubleCosetRep};
use coxhecke::coxeter::{presets, GenSubset};
use coxhecke::hecke::parabolic_product;
use coxhecke::pregallery::parabolic_row;
use coxhecke::qpoly::{ParamAssignment, ParamValue};
use coxhecke::spheres::sphere_size;

fn f4_params() -> ParamAssignment {
    ParamAssignment::new(vec![
        ParamValue::Var("s".into()),
        ParamValue::Var("s".into()),
        ParamValue::Var("t".into()),
        ParamValue::Var("t".into()),
    ])
}

fn bench_pregallery_row(c: &mut Criterion) {
    let sys = presets::f4();
    let params = f4_params();
    let i = GenSubset::from_indices([1, 2, 3]);
    let v = DoubleCosetRep::new(sys.from_word(&[0]).unwrap(), i, i).unwrap();
    let w =
        DoubleCosetRep::new(sys.from_word(&[0, 1, 2, 1, 3, 2, 1, 0]).unwrap(), i, i).unwrap();
    c.bench_function("pregallery_row_f4_w3", |b| {
        b.iter(|| parabolic_row(i, i, &v, &w, &params).unwrap())
    });
}

fn bench_hecke_product(c: &mut Criterion) {
    let sys = presets::b3();
    let params = ParamAssignment::uniform(3, "q");
    let i = GenSubset::from_indices([0, 1]);
    let reps = enumerate_r(&sys, i, i, 6);
    let u = reps.iter().max_by_key(|r| r.element.length()).unwrap();
    c.bench_function("parabolic_product_b3", |b| {
        b.iter(|| parabolic_product(u, u, &params).unwrap())
    });
}

fn bench_sphere(c: &mut Criterion) {
    let sys = presets::a_affine(4);
    let params = ParamAssignment::uniform(5, "q");
    let i = GenSubset::from_indices(1..=4);
    let reps = enumerate_r(&sys, i, i, 12);
    let rep = reps.iter().max_by_key(|r| r.element.length()).unwrap();
    c.bench_function("sphere_size_a4_affine", |b| {
        b.iter(|| sphere_size(rep, &params).unwrap())
    });
}

criterion_group!(benches, bench_pregallery_row, bench_hecke_product, bench_sphere);
criterion_main!(benches);
