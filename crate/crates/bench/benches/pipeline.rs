use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nagumo_core::eigensolve::{build_operator, compute_spectrum, liouville_transform, Window};
use nagumo_core::fronts::{solve_front, GridConfig};
use nagumo_core::spectrum::{classify_and_threshold, select_weight};
use nagumo_core::{FrontCase, Model};

fn fronts(c: &mut Criterion) {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    let s = Model::shigesada(1.0, 0.625).unwrap();
    let cfg = GridConfig::with_n(4000);
    let mut g = c.benchmark_group("front");
    g.sample_size(10);
    g.bench_function("Nn", |b| b.iter(|| solve_front(&m, FrontCase::Nn, 1.0, &cfg).unwrap()));
    g.bench_function("Nd", |b| b.iter(|| solve_front(&m, FrontCase::Nd, 1.0, &cfg).unwrap()));
    g.bench_function("sN-inc", |b| {
        b.iter(|| solve_front(&s, FrontCase::SnIncreasing, 0.0, &cfg).unwrap())
    });
    g.finish();
}

fn spectra(c: &mut Criterion) {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    let front = solve_front(&m, FrontCase::Nn, 1.0, &GridConfig::with_n(4000)).unwrap();
    let a = select_weight(&m, FrontCase::Nn, 1.0).unwrap().a;
    let op = build_operator(&front, &m, a, 0.0).unwrap();
    let mut g = c.benchmark_group("spectrum");
    g.bench_function("build_operator", |b| b.iter(|| build_operator(&front, &m, a, 0.0).unwrap()));
    g.bench_function("top6", |b| b.iter(|| compute_spectrum(&op, 6, Window::All).unwrap()));
    g.bench_function("liouville_top6", |b| {
        b.iter(|| liouville_transform(&op).unwrap().spectrum(6, Window::All).unwrap())
    });
    g.finish();
}

fn closed_forms(c: &mut Criterion) {
    let m = Model::shigesada(1.0, 0.5).unwrap();
    c.bench_function("classify", |b| b.iter(|| classify_and_threshold(black_box(&m)).unwrap()));
    c.bench_function("select_weight", |b| {
        b.iter(|| select_weight(black_box(&m), FrontCase::Nn, 1.0).unwrap())
    });
}

criterion_group!(benches, fronts, spectra, closed_forms);
criterion_main!(benches);
