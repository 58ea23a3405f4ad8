use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use quadlie_core::dblext::{amalgamate, extract_double_extension, g_of_partition, jordan_map};
use quadlie_core::exterior::super_poisson;
use quadlie_core::iso::{decide_iso, quadratic_dimension};
use quadlie_core::linalg::{char_poly, det, rref};
use quadlie_core::orbits::orbit_invariant;
use quadlie_core::{GaussScalar, JordanKind, Mat, Partition, Qla};

fn dense(n: usize) -> Mat {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = ((i * 7 + j * 3) % 11) as i64 - 5;
                    let b = ((i * 5 + j * 2) % 7) as i64 - 3;
                    GaussScalar::from_parts((a, 1 + (i + j) as i64 % 3), (b, 1))
                })
                .collect()
        })
        .collect();
    Mat::from_rows(rows)
}

fn mixed() -> Qla {
    let parts = [
        jordan_map(&JordanKind::Scaled(2, "1+i".parse().unwrap())).unwrap(),
        jordan_map(&JordanKind::Scaled(1, "2".parse().unwrap())).unwrap(),
        jordan_map(&JordanKind::Odd(2)).unwrap(),
        jordan_map(&JordanKind::Even(2)).unwrap(),
    ];
    amalgamate(&parts).unwrap()
}

fn linalg(c: &mut Criterion) {
    let m = dense(12);
    c.bench_function("rref 12x12", |b| b.iter(|| rref(black_box(&m))));
    c.bench_function("det 12x12", |b| b.iter(|| det(black_box(&m))));
    c.bench_function("char_poly 12x12", |b| b.iter(|| char_poly(black_box(&m))));
}

fn algebra(c: &mut Criterion) {
    let g = g_of_partition(&"5,3,2,2".parse::<Partition>().unwrap()).unwrap();
    let h = mixed();
    let i3 = h.threeform().unwrap();
    c.bench_function("jacobi dim 14", |b| b.iter(|| black_box(&g).check_jacobi()));
    c.bench_function("dup dim 14", |b| b.iter(|| black_box(&g).dup().unwrap()));
    c.bench_function("poisson {I,I} dim 17", |b| {
        b.iter(|| super_poisson(h.space(), black_box(&i3), &i3).unwrap())
    });
    c.bench_function("extract dim 17", |b| {
        b.iter(|| extract_double_extension(black_box(&h)).unwrap())
    });
    let cbar = extract_double_extension(&h).unwrap().cbar;
    c.bench_function("orbit_invariant dim 15", |b| {
        b.iter(|| orbit_invariant(black_box(&cbar)).unwrap())
    });
    c.bench_function("decide_iso dim 17", |b| {
        b.iter(|| decide_iso(black_box(&h), &h).unwrap())
    });
    c.bench_function("qdim dim 14", |b| {
        b.iter(|| quadratic_dimension(black_box(&g)))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = linalg, algebra
}
criterion_main!(benches);
