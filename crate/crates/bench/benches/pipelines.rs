//! Benchmarks for the exact kernels and the three partition-function routes.
//!
//! Run with `cargo bench -p pdwbc-bench`. Sizes are chosen so a full pass
//! stays under a minute while still exercising the big-integer growth that
//! dominates real workloads.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use pdwbc_core::ik::z_det;
use pdwbc_core::lattice::partition_transfer;
use pdwbc_core::orthopoly::{hankel_minors, moments, op_zeros, WeightKind};
use pdwbc_core::scalar::bigfloat::BigFloat;
use pdwbc_core::scalar::polylog::negorder_polylog;
use pdwbc_core::scalar::rational::rat;
use pdwbc_core::ModelParams;

fn params() -> ModelParams {
    ModelParams::from_i64(2, 1, 5, 4).unwrap()
}

fn bench_transfer(c: &mut Criterion) {
    let p = params();
    let weights = p.weights();
    c.bench_function("transfer_n8_m4", |b| {
        b.iter(|| partition_transfer(black_box(8), black_box(4), &weights).unwrap())
    });
    c.bench_function("transfer_n12_m6", |b| {
        b.iter(|| partition_transfer(black_box(12), black_box(6), &weights).unwrap())
    });
}

fn bench_determinant_route(c: &mut Criterion) {
    let p = params();
    c.bench_function("z_det_n8_m4", |b| {
        b.iter(|| z_det(black_box(8), black_box(4), &p).unwrap())
    });
}

fn bench_orthopoly_route(c: &mut Criterion) {
    let p = params();
    c.bench_function("z_op_n12_m6", |b| {
        b.iter(|| pdwbc_core::orthopoly::z_op(black_box(12), black_box(6), &p).unwrap())
    });
    c.bench_function("hankel_minors_12", |b| {
        b.iter_batched(
            || moments(&p, 2, 24, WeightKind::Full).unwrap(),
            |table| hankel_minors(&table, black_box(12)).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_scalar_kernels(c: &mut Criterion) {
    c.bench_function("polylog_order_60", |b| {
        let mut tick = 0i64;
        b.iter(|| {
            // A fresh ratio each pass keeps the per-value cache out of the
            // measurement; the shared symbolic table is steady-state.
            tick += 1;
            let r = rat(97 + (tick % 50), 401);
            negorder_polylog(black_box(60), &r).unwrap()
        })
    });
    c.bench_function("bigfloat_exp_256", |b| {
        let x = BigFloat::from_rational(&rat(-1234, 997), 256);
        b.iter(|| black_box(&x).exp())
    });
    c.bench_function("bigfloat_ln_256", |b| {
        let x = BigFloat::from_rational(&rat(84017, 113), 256);
        b.iter(|| black_box(&x).ln().unwrap())
    });
}

fn bench_zeros(c: &mut Criterion) {
    let p = params();
    c.bench_function("op_zeros_k15_m2", |b| {
        b.iter(|| op_zeros(black_box(15), black_box(2), &p, 128).unwrap())
    });
}

criterion_group!(
    benches,
    bench_transfer,
    bench_determinant_route,
    bench_orthopoly_route,
    bench_scalar_kernels,
    bench_zeros
);
criterion_main!(benches);
