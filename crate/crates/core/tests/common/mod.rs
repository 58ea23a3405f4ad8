#![allow(dead_code)]

use std::collections::BTreeMap;

use quadlie_core::dblext::{builtin, g_of_partition, jordan_type_algebra, partition_map};
use quadlie_core::linalg::{cayley_orthogonal, inverse, Mat, QuadSpace, SkewMap};
use quadlie_core::orbits::{all_partitions, enumerate_pprime, witness_for_triple};
use quadlie_core::{Builtin, GaussScalar, InvertibleTriple, JordanKind, Partition, Qla};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn s(t: &str) -> GaussScalar {
    t.parse().unwrap()
}

pub fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

/// Small Gaussian rational with numerators in [-3, 3] and denominators in
/// [1, 3].
pub fn scalar(rng: &mut impl Rng) -> GaussScalar {
    GaussScalar::from_parts(
        (rng.gen_range(-3..=3), rng.gen_range(1..=3)),
        (rng.gen_range(-3..=3), rng.gen_range(1..=3)),
    )
}

pub fn nonzero_scalar(rng: &mut impl Rng) -> GaussScalar {
    loop {
        let c = scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn small_int_scalar(rng: &mut impl Rng) -> GaussScalar {
    GaussScalar::from_parts((rng.gen_range(-2..=2), 1), (rng.gen_range(-2..=2), 1))
}

pub fn mat(rng: &mut impl Rng, r: usize, c: usize) -> Mat {
    let mut m = Mat::zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            if rng.gen_bool(0.6) {
                m[(i, j)] = scalar(rng);
            }
        }
    }
    m
}

pub fn invertible(rng: &mut impl Rng, n: usize) -> Mat {
    loop {
        let m = mat(rng, n, n);
        if inverse(&m).is_some() {
            return m;
        }
    }
}

/// A random skew map `G⁻¹K` with `K` antisymmetric.
pub fn skew(rng: &mut impl Rng, space: &QuadSpace) -> SkewMap {
    let n = space.dim();
    let mut k = Mat::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.7) {
                let c = scalar(rng);
                k[(j, i)] = -c.clone();
                k[(i, j)] = c;
            }
        }
    }
    SkewMap::new(space.clone(), space.gram_inv().mul(&k)).unwrap()
}

/// A random exact isometry: the Cayley transform of `G⁻¹K` with `K`
/// antisymmetric with small Gaussian-integer entries.
pub fn isometry(rng: &mut impl Rng, space: &QuadSpace) -> Mat {
    let n = space.dim();
    loop {
        let mut k = Mat::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let c = small_int_scalar(rng);
                k[(j, i)] = -c.clone();
                k[(i, j)] = c;
            }
        }
        let a = SkewMap::new(space.clone(), space.gram_inv().mul(&k)).unwrap();
        if let Ok(u) = cayley_orthogonal(space, &a) {
            return u;
        }
    }
}

/// A random invertible matrix with entries in {-1, 0, 1}.
pub fn small_invertible(rng: &mut impl Rng, n: usize) -> Mat {
    loop {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = GaussScalar::from_int(rng.gen_range(-1..=1));
            }
        }
        if inverse(&m).is_some() {
            return m;
        }
    }
}

/// A random symmetric nondegenerate Gram matrix of size `n`.
pub fn gram(rng: &mut impl Rng, n: usize) -> QuadSpace {
    let p = invertible(rng, n);
    QuadSpace::new(
        p.transpose()
            .mul(&QuadSpace::canonical(n).gram().clone())
            .mul(&p),
    )
    .unwrap()
}

const EIGEN_POOL: [&str; 8] = ["1", "2", "3", "i", "1+i", "1/2", "2-i", "3/2i"];

/// A random invertible triple on a space of dimension `2p`, with distinct
/// eigenvalue pairs drawn from a fixed pool.
pub fn triple(rng: &mut impl Rng, p: usize) -> InvertibleTriple {
    let mut pool: Vec<GaussScalar> = EIGEN_POOL.iter().map(|t| s(t)).collect();
    pool.shuffle(rng);
    let mut left = p;
    let mut entries = BTreeMap::new();
    let mut k = 0;
    while left > 0 {
        let m = if k + 1 == pool.len() {
            left
        } else {
            rng.gen_range(1..=left)
        };
        let parts = all_partitions(m);
        let d = parts.choose(rng).unwrap().clone();
        let l = pool[k].clone();
        entries.insert(-l.clone(), (m, d.clone()));
        entries.insert(l, (m, d));
        left -= m;
        k += 1;
    }
    InvertibleTriple::new(entries).unwrap()
}

/// A skew map in block normal form: nilpotent partition block on `nil`
/// dimensions plus an invertible witness on `2p` dimensions.
pub fn normal_form(
    rng: &mut impl Rng,
    nil: usize,
    p: usize,
) -> (Option<Partition>, InvertibleTriple, SkewMap) {
    let t = triple(rng, p);
    let mut blocks = Vec::new();
    let d = if nil > 0 {
        let d = enumerate_pprime(nil).choose(rng).unwrap().clone();
        blocks.push(partition_map(&d).unwrap());
        Some(d)
    } else {
        None
    };
    if p > 0 {
        blocks.push(witness_for_triple(&t));
    }
    (d, t, SkewMap::direct_sum(&blocks))
}

/// Hides a normal-form map: a random isometry followed by a random change
/// of basis (which also randomizes the Gram matrix).
pub fn disguise(rng: &mut impl Rng, c: &SkewMap) -> SkewMap {
    let u = isometry(rng, c.space());
    let c = c.conjugate(&u).unwrap();
    c.change_basis(&small_invertible(rng, c.dim())).unwrap()
}

/// A random skew map with split characteristic polynomial, dimension in
/// `1..=max_dim`.
pub fn mixed_skew(rng: &mut impl Rng, max_dim: usize) -> SkewMap {
    let n = rng.gen_range(1..=max_dim);
    let p = rng.gen_range(0..=n / 2);
    let (_, _, c) = normal_form(rng, n - 2 * p, p);
    disguise(rng, &c)
}

pub fn g3(l: &str) -> Qla {
    builtin(&Builtin::G3(s(l))).unwrap()
}

pub fn g4() -> Qla {
    builtin(&Builtin::G4).unwrap()
}

pub fn g5() -> Qla {
    builtin(&Builtin::G5).unwrap()
}

pub fn g6() -> Qla {
    builtin(&Builtin::G6).unwrap()
}

pub fn central(n: usize) -> Qla {
    Qla::abelian(QuadSpace::identity(n))
}

pub fn j(kind: JordanKind) -> Qla {
    jordan_type_algebra(&kind).unwrap()
}

/// Reduced singular fixtures: builtins, Jordan-type algebras and the
/// partition algebras with `ker ⊆ im`, `n ≤ 6`.
pub fn reduced_singular_fixtures() -> Vec<(String, Qla)> {
    let mut out = vec![
        ("g4".to_string(), g4()),
        ("g5".to_string(), g5()),
        ("g6".to_string(), g6()),
        ("j4".to_string(), j(JordanKind::Even(2))),
        ("j6".to_string(), j(JordanKind::Even(3))),
        ("j5".to_string(), j(JordanKind::Odd(2))),
        ("j4(2)".to_string(), j(JordanKind::Scaled(2, s("2")))),
    ];
    for n in 1..=6 {
        for d in enumerate_pprime(n) {
            let g = g_of_partition(&d).unwrap();
            if g.is_abelian() || !g.is_reduced() {
                continue;
            }
            out.push((format!("g{d}"), g));
        }
    }
    out
}

/// The same algebra written in the basis given by the columns of `p`.
pub fn transform(g: &Qla, p: &Mat) -> Qla {
    let n = g.dim();
    let p_inv = inverse(p).expect("invertible change of basis");
    let space = QuadSpace::new(p.transpose().mul(g.space().gram()).mul(p)).unwrap();
    let cols = p.col_vecs();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            entries.push((i, j, p_inv.mul_vec(&g.bracket(&cols[i], &cols[j]))));
        }
    }
    Qla::from_brackets(space, entries).unwrap()
}

/// A random alternating form of the given degree with a few terms.
pub fn altform(rng: &mut impl Rng, n: usize, degree: usize, terms: usize) -> quadlie_core::AltForm {
    let mut idx: Vec<usize> = (0..n).collect();
    quadlie_core::AltForm::from_terms(
        n,
        degree,
        (0..terms).map(|_| {
            idx.shuffle(rng);
            (idx[..degree].to_vec(), scalar(rng))
        }),
    )
    .unwrap()
}
