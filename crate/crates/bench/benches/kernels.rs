use std::f64::consts::FRAC_PI_2;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use wulff_core::body::{is_self_dual, lift_body, width_report, SELF_DUAL_TOL_SAMPLED};
use wulff_core::catalog::{make_reuleaux, make_rotated_cap};
use wulff_core::wulff::{build_wulff, dual_wulff, SupportFunction};
use wulff_core::PlanePoint;

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_wulff");
    for grid in [360usize, 720, 1440] {
        let g = SupportFunction::constant(grid, 1.0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(grid), &g, |b, g| {
            b.iter(|| build_wulff(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn dual(c: &mut Criterion) {
    let w = make_reuleaux(1.6, PlanePoint::ORIGIN, 720).unwrap();
    c.bench_function("dual_wulff/reuleaux_720", |b| {
        b.iter(|| dual_wulff(black_box(&w), 720).unwrap())
    });
}

fn self_dual(c: &mut Criterion) {
    let body = lift_body(&make_rotated_cap(0.3, PlanePoint::new(0.0, 1.0), 720).unwrap()).unwrap();
    c.bench_function("is_self_dual/rotated_cap_720", |b| {
        b.iter(|| is_self_dual(black_box(&body), SELF_DUAL_TOL_SAMPLED).unwrap())
    });
    c.bench_function("width_report/rotated_cap_720", |b| {
        b.iter(|| width_report(black_box(&body), 256, FRAC_PI_2, SELF_DUAL_TOL_SAMPLED).unwrap())
    });
}

criterion_group!(benches, build, dual, self_dual);
criterion_main!(benches);
