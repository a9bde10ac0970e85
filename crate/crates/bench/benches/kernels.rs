use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use morita::algebra::Algebra;
use morita::bicategory::associator;
use morita::bimodule::{hom_right, tensor_over, Bimodule};
use morita::duality::comp_cell;
use morita_bench::{composable_pair, random_mat};
use std::sync::Arc;

fn bench_rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [16usize, 32, 64] {
        let m = random_mat(n, 42 + n as u64);
        group.bench_function(format!("{n}x{n}"), |b| {
            b.iter_batched(|| m.clone(), |m| m.rref(), BatchSize::SmallInput)
        });
    }
    group.finish();
}

fn bench_tensor_over(c: &mut Criterion) {
    let (m, n) = composable_pair(7);
    c.bench_function("tensor_over", |b| b.iter(|| tensor_over(&m, &n).unwrap()));
}

fn bench_hom_right(c: &mut Criterion) {
    let (m, _) = composable_pair(7);
    let reg = Bimodule::regular(&m.right);
    c.bench_function("hom_right_into_regular", |b| {
        b.iter(|| hom_right(&m, &reg).unwrap())
    });
}

fn bench_associator(c: &mut Criterion) {
    let (m, n) = composable_pair(7);
    let p = Bimodule::regular(&n.right);
    c.bench_function("associator", |b| b.iter(|| associator(&m, &n, &p).unwrap()));
}

fn bench_comp_cell(c: &mut Criterion) {
    let (m, n) = composable_pair(7);
    c.bench_function("dual_composition_cell", |b| b.iter(|| comp_cell(&m, &n).unwrap()));
}

fn bench_wedderburn(c: &mut Criterion) {
    let mut alg = Algebra::product(&Algebra::matrix_algebra(2), &Algebra::matrix_algebra(1));
    alg.certificate = None;
    let alg = Arc::new(alg);
    c.bench_function("wedderburn_from_scratch", |b| b.iter(|| alg.wedderburn(7).unwrap()));
}

criterion_group!(
    kernels,
    bench_rref,
    bench_tensor_over,
    bench_hom_right,
    bench_associator,
    bench_comp_cell,
    bench_wedderburn
);
criterion_main!(kernels);
