use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use syment_core::cloning::{clone1_block_spectrum, clone1_spectrum, clone2_spectrum, CloneParams};
use syment_core::ratelab::{estimate_ec, sigma_dilution};
use syment_core::spectra::{iid_block_spectrum, iid_type_spectrum};
use syment_core::{Budget, ProbVector};

fn pv(s: &str) -> ProbVector {
    s.parse().unwrap()
}

fn iid(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("iid_block_spectrum");
    for (p, n) in [("0.7,0.3", 200u32), ("0.5,0.3,0.2", 60)] {
        let p = pv(p);
        g.bench_with_input(BenchmarkId::new(format!("d{}", p.dim()), n), &n, |b, &n| {
            b.iter(|| iid_block_spectrum(black_box(&p), n, &budget).unwrap())
        });
    }
    g.finish();
    let p = pv("0.7,0.3");
    c.bench_function("iid_type_spectrum/d2/1000", |b| {
        b.iter(|| iid_type_spectrum(black_box(&p), 1000, &budget).unwrap())
    });
}

fn clones(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("clone_spectra");
    g.sample_size(20);
    for m in [50u32, 200] {
        let params = CloneParams::from_ratio(m, 2.0, pv("0.7,0.3")).unwrap();
        g.bench_with_input(BenchmarkId::new("clone1_flat", m), &params, |b, c| {
            b.iter(|| clone1_spectrum(c, &budget).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("clone1_block", m), &params, |b, c| {
            b.iter(|| clone1_block_spectrum(c, &budget).unwrap())
        });
    }
    let params = CloneParams::from_ratio(40, 2.0, pv("0.7,0.3")).unwrap();
    g.bench_function("clone2_flat/40", |b| {
        b.iter(|| clone2_spectrum(&params, &budget).unwrap())
    });
    g.finish();
}

fn rate_tools(c: &mut Criterion) {
    let budget = Budget::default();
    let params = CloneParams::from_ratio(200, 2.0, pv("0.7,0.3")).unwrap();
    let ws = clone1_spectrum(&params, &budget).unwrap();
    let bs = iid_block_spectrum(&pv("0.7,0.3"), 200, &budget).unwrap();
    c.bench_function("estimate_ec/clone1_m200", |b| {
        b.iter(|| estimate_ec(black_box(&ws), 0.01).unwrap())
    });
    c.bench_function("sigma_dilution/iid_n200", |b| {
        b.iter(|| sigma_dilution(black_box(&bs), 0.9))
    });
}

criterion_group!(benches, iid, clones, rate_tools);
criterion_main!(benches);
