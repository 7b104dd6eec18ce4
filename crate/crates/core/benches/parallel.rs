use std::hint::black_box;

use affmon::canonical::two_dim_sweep;
use affmon::cone::dual_description;
use affmon::oracle::{random_suite, verify_monoid, DEFAULT_BOUND};
use affmon::polytope::{lattice_points_with, HalfSpace};
use affmon::standard_monoid;
use affmon::Strategy;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn hilbert_basis(c: &mut Criterion) {
    let cone = dual_description(
        &[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![1, 1, 0],
            vec![5, 7, 11],
            vec![9, 2, 13],
        ],
        3,
    )
    .unwrap();
    let mut group = c.benchmark_group("hilbert_basis");
    for (name, strategy) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(cone.hilbert_basis_with(strategy).unwrap()))
        });
    }
    group.finish();
}

fn lattice_points(c: &mut Criterion) {
    let constraints = vec![
        HalfSpace::new(vec![1, 0, 0], -30),
        HalfSpace::new(vec![-1, 0, 0], -30),
        HalfSpace::new(vec![0, 1, 0], -30),
        HalfSpace::new(vec![0, -1, 0], -30),
        HalfSpace::new(vec![0, 0, 1], -30),
        HalfSpace::new(vec![-1, -1, -1], -40),
    ];
    let mut group = c.benchmark_group("lattice_points");
    for (name, strategy) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(lattice_points_with(&constraints, 3, strategy)))
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("two_dim_sweep");
    group.sample_size(10);
    for bound in [3, 5] {
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, bound), &bound, |b, &bound| {
                b.iter(|| black_box(two_dim_sweep(bound, strategy).unwrap()))
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let q = standard_monoid("jungian", &[5, 2]).unwrap();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_function(BenchmarkId::new("verify_jungian_5_2", name), |b| {
            b.iter(|| black_box(verify_monoid(&q, DEFAULT_BOUND, 1, 16, strategy).unwrap()))
        });
        group.bench_function(BenchmarkId::new("random_suite_40", name), |b| {
            b.iter(|| black_box(random_suite(1, 40, DEFAULT_BOUND, strategy)))
        });
    }
    group.finish();
}

criterion_group!(benches, hilbert_basis, lattice_points, sweep, oracle);
criterion_main!(benches);
