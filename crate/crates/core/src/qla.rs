//! Quadratic Lie algebras given by structure constants, and their intrinsic
//! invariants.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{threeform_from_brackets, wedge, AltForm};
use crate::linalg::{
    add_vec, echelon_basis, is_zero_vec, kernel, orthogonal_complement, scale_vec, zero_vec,
    Coordinates, Mat, QuadSpace, Subspace, Vector,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{GaussInt, GaussScalar, ScaledInts};

/// Structure constants over one common denominator, for repeated brackets.
struct IntTable {
    dim: usize,
    den: BigInt,
    pairs: Vec<(usize, usize, Vec<GaussInt>)>,
}

impl IntTable {
    fn new(g: &Qla) -> Self {
        let n = g.dim();
        let scaled: Vec<(usize, usize, ScaledInts)> = g
            .brackets()
            .into_iter()
            .map(|(i, j, c)| (i, j, ScaledInts::new(&c)))
            .collect();
        let den = scaled
            .iter()
            .fold(BigInt::one(), |acc, (_, _, s)| acc.lcm(&s.den));
        let pairs = scaled
            .into_iter()
            .map(|(i, j, s)| {
                let f = &den / &s.den;
                let ints = s
                    .ints
                    .into_iter()
                    .map(|z| GaussInt::new(z.re * &f, z.im * &f))
                    .collect();
                (i, j, ints)
            })
            .collect();
        IntTable { dim: n, den, pairs }
    }

    fn bracket(&self, x: &[GaussScalar], y: &[GaussScalar]) -> Vector {
        let (xs, ys) = (ScaledInts::new(x), ScaledInts::new(y));
        let mut re = vec![BigInt::zero(); self.dim];
        let mut im = vec![BigInt::zero(); self.dim];
        for (i, j, c) in &self.pairs {
            let w = gauss_sub(
                &xs.ints[*i].mul(&ys.ints[*j]),
                &xs.ints[*j].mul(&ys.ints[*i]),
            );
            if w.is_zero() {
                continue;
            }
            for (k, ck) in c.iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                let p = w.mul(ck);
                re[k] += p.re;
                im[k] += p.im;
            }
        }
        let den = &self.den * &xs.den * &ys.den;
        re.into_iter()
            .zip(im)
            .map(|(a, b)| GaussScalar::from_ratio(a, b, &den))
            .collect()
    }
}

fn gauss_sub(a: &GaussInt, b: &GaussInt) -> GaussInt {
    GaussInt::new(&a.re - &b.re, &a.im - &b.im)
}

/// A quadratic space with an antisymmetric bracket on its basis. Invariance
/// of the form and the Jacobi identity are checked on demand, not at
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Qla {
    space: QuadSpace,
    /// `table[i * n + j] = [E_i, E_j]`.
    table: Vec<Vector>,
    ints: IntCache,
}

impl fmt::Debug for Qla {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Qla")
            .field("space", &self.space)
            .field("table", &self.table)
            .finish()
    }
}

/// Lazily built [`IntTable`]. Clones start empty, so a cloned algebra may
/// be mutated freely; the cache never takes part in comparisons.
#[derive(Default)]
struct IntCache(OnceLock<IntTable>);

impl Clone for IntCache {
    fn clone(&self) -> Self {
        IntCache::default()
    }
}

impl PartialEq for IntCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for IntCache {}

impl Qla {
    /// The Abelian algebra on a quadratic space.
    pub fn abelian(space: QuadSpace) -> Self {
        let n = space.dim();
        Qla {
            space,
            table: vec![zero_vec(n); n * n],
            ints: IntCache::default(),
        }
    }

    /// Builds an algebra from brackets `[E_i, E_j] = c` with `i ≠ j`; the
    /// opposite order is filled in by antisymmetry, omitted pairs are zero.
    pub fn from_brackets(
        space: QuadSpace,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let n = space.dim();
        let mut g = Qla::abelian(space);
        let mut seen = vec![false; n * n];
        for (i, j, c) in brackets {
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch(format!(
                    "bracket index ({i}, {j}) out of range for dimension {n}"
                )));
            }
            if c.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({i}, {j}) has {} coordinates, expected {n}",
                    c.len()
                )));
            }
            if i == j {
                if is_zero_vec(&c) {
                    continue;
                }
                return Err(Error::domain(format!("nonzero bracket [E{i}, E{i}]")));
            }
            let (a, b, c) = if i < j {
                (i, j, c)
            } else {
                (j, i, scale_vec(&c, &GaussScalar::from_int(-1)))
            };
            if std::mem::replace(&mut seen[a * n + b], true) {
                return Err(Error::domain(format!("bracket ({a}, {b}) given twice")));
            }
            g.table[b * n + a] = scale_vec(&c, &GaussScalar::from_int(-1));
            g.table[a * n + b] = c;
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    /// `[E_i, E_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero brackets `[E_i, E_j]` with `i < j`.
    pub fn brackets(&self) -> Vec<(usize, usize, Vector)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = self.bracket_basis(i, j);
                if !is_zero_vec(c) {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    fn int_table(&self) -> &IntTable {
        self.ints.0.get_or_init(|| IntTable::new(self))
    }

    pub fn bracket(&self, x: &[GaussScalar], y: &[GaussScalar]) -> Vector {
        self.int_table().bracket(x, y)
    }

    /// Matrix of `ad(E_i)`.
    pub fn ad_basis(&self, i: usize) -> Mat {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket_basis(i, j).clone()).collect();
        Mat::from_cols(n, &cols)
    }

    /// Matrix of `ad(x)`.
    pub fn ad(&self, x: &[GaussScalar]) -> Mat {
        let n = self.dim();
        let table = self.int_table();
        let cols: Vec<Vector> = (0..n)
            .map(|j| {
                let mut e = zero_vec(n);
                e[j] = GaussScalar::one();
                table.bracket(x, &e)
            })
            .collect();
        Mat::from_cols(n, &cols)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|c| is_zero_vec(c))
    }

    /// `G·[E_i,E_j]` for every pair, in table order.
    pub(crate) fn lowered_table(&self) -> Vec<Vector> {
        let n = self.dim();
        if n == 0 {
            return Vec::new();
        }
        self.space
            .gram()
            .mul(&Mat::from_cols(n, &self.table))
            .col_vecs()
    }

    /// `B([E_i,E_j],E_k) = B(E_i,[E_j,E_k])` on all basis triples.
    pub fn check_invariant_form(&self) -> bool {
        let n = self.dim();
        // t[i][j][k] = B([E_i,E_j],E_k)
        let t = self.lowered_table();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| t[i * n + j][k] == t[j * n + k][i])))
    }

    /// Direct scan of the Jacobi identity on basis triples.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(self.bracket_basis(i, j), &unit(n, k));
                    let b = self.bracket(self.bracket_basis(j, k), &unit(n, i));
                    let c = self.bracket(self.bracket_basis(k, i), &unit(n, j));
                    if !is_zero_vec(&add_vec(&add_vec(&a, &b), &c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The canonical 3-form of the algebra.
    pub fn threeform(&self) -> Result<AltForm> {
        threeform_from_brackets(self)
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            rows.extend(self.ad_basis(i).row_vecs());
        }
        if rows.is_empty() {
            return Subspace::zero(0);
        }
        Subspace::span(n, &kernel(&Mat::from_rows(rows)))
    }

    pub fn derived(&self) -> Subspace {
        Subspace::span(self.dim(), &self.table)
    }

    /// `[A, B] = span{[a, b]}`.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let table = self.int_table();
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(table.bracket(x, y));
            }
        }
        Subspace::span(self.dim(), &vs)
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![Subspace::full(self.dim())];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_spaces(last, last);
            if &next == last {
                return out;
            }
            out.push(next);
        }
    }

    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut out = vec![full.clone()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_spaces(&full, last);
            if &next == last {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(|s| s.dim() == 0)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series()
            .last()
            .is_some_and(|s| s.dim() == 0)
    }

    /// The dup-number together with `V_I` and `W_I` as covector bases.
    pub fn dup(&self) -> Result<DupClass> {
        if self.is_abelian() {
            return Err(Error::Abelian);
        }
        let n = self.dim();
        let i3 = self.threeform()?;
        let images: Vec<AltForm> = (0..n)
            .map(|k| wedge(&AltForm::monomial(n, &[k], GaussScalar::one()), &i3))
            .collect();
        let mut keys: Vec<Vec<usize>> = images
            .iter()
            .flat_map(|f| f.terms().map(|(k, _)| k.to_vec()))
            .collect();
        keys.sort();
        keys.dedup();
        let v_i = if keys.is_empty() {
            Subspace::full(n).basis().to_vec()
        } else {
            let cols: Vec<Vector> = images.iter().map(|f| f.coordinates(&keys)).collect();
            echelon_basis(n, &kernel(&Mat::from_cols(keys.len(), &cols)))
        };
        let w_i = echelon_basis(n, &self.lowered_table());
        let kind = match v_i.len() {
            0 => DupKind::Ordinary,
            1 => DupKind::S1,
            3 => DupKind::S3,
            d => {
                return Err(Error::InternalInvariant(format!(
                    "dup-number {d} outside {{0, 1, 3}}"
                )))
            }
        };
        Ok(DupClass { kind, v_i, w_i })
    }

    /// Whether the center is totally isotropic.
    pub fn is_reduced(&self) -> bool {
        let z = self.center();
        let b = z.basis();
        b.iter()
            .all(|x| b.iter().all(|y| self.space.bilinear(x, y).is_zero()))
    }

    /// For singular algebras, indecomposability coincides with being
    /// reduced.
    pub fn is_indecomposable_singular(&self) -> Result<bool> {
        if self.dup()?.value() == 0 {
            return Err(Error::domain(
                "indecomposability test needs a singular algebra",
            ));
        }
        Ok(self.is_reduced())
    }

    /// Restriction to the span of `basis`, which must be a nondegenerate
    /// subalgebra; the result is expressed in that basis.
    pub fn restrict(&self, basis: &[Vector]) -> Result<Qla> {
        let n = self.dim();
        let coords = Coordinates::new(n, basis)
            .ok_or_else(|| Error::domain("restriction basis is linearly dependent"))?;
        let b = Mat::from_cols(n, basis);
        let space = QuadSpace::new(b.transpose().mul(self.space.gram()).mul(&b))?;
        let mut brackets = Vec::new();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate().skip(i + 1) {
                let c = coords
                    .coords(&self.bracket(x, y))
                    .ok_or_else(|| Error::domain("span is not closed under the bracket"))?;
                if !is_zero_vec(&c) {
                    brackets.push((i, j, c));
                }
            }
        }
        Qla::from_brackets(space, brackets)
    }

    /// Splits off a nondegenerate central ideal `𝔷` so that the remaining
    /// factor has totally isotropic center.
    pub fn reduce(&self) -> Result<Reduction> {
        if self.is_abelian() {
            return Err(Error::Abelian);
        }
        let n = self.dim();
        let z = self.center();
        let zd = z.intersect(&self.derived());
        let mut chosen: Vec<Vector> = zd.basis().to_vec();
        let mut central = Vec::new();
        for v in z.basis() {
            chosen.push(v.clone());
            if echelon_basis(n, &chosen).len() == chosen.len() {
                central.push(v.clone());
            } else {
                chosen.pop();
            }
        }
        let cb = Mat::from_cols(n, &central);
        let restricted = cb.transpose().mul(self.space.gram()).mul(&cb);
        if !central.is_empty() && crate::linalg::inverse(&restricted).is_none() {
            return Err(Error::NonSplitForm(
                "central complement carries a degenerate form".into(),
            ));
        }
        let l_basis = if central.is_empty() {
            Subspace::full(n).basis().to_vec()
        } else {
            orthogonal_complement(&self.space, &central)
        };
        let reduced = self.restrict(&l_basis)?;
        Ok(Reduction {
            central_dim: central.len(),
            central_basis: central,
            reduced_basis: l_basis,
            reduced,
        })
    }

    /// Orthogonal direct sum: block Gram matrix and block structure
    /// constants, basis of `self` first.
    pub fn orthogonal_sum(&self, o: &Qla) -> Qla {
        let (n, m) = (self.dim(), o.dim());
        let space = self.space.direct_sum(&o.space);
        let mut g = Qla::abelian(space);
        let t = n + m;
        for i in 0..n {
            for j in 0..n {
                let mut c = self.bracket_basis(i, j).clone();
                c.extend(zero_vec(m));
                g.table[i * t + j] = c;
            }
        }
        for i in 0..m {
            for j in 0..m {
                let mut c = zero_vec(n);
                c.extend(o.bracket_basis(i, j).iter().cloned());
                g.table[(n + i) * t + (n + j)] = c;
            }
        }
        g
    }

    /// `κ(E_i, E_j) = tr(ad E_i ∘ ad E_j)`.
    pub fn killing_form(&self) -> Mat {
        let n = self.dim();
        let ads: Vec<Mat> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut k = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].mul(&ads[j]).trace();
                k[(i, j)] = t.clone();
                k[(j, i)] = t;
            }
        }
        k
    }

    /// The same bracket with a different invariant form.
    pub fn with_gram(&self, gram: Mat) -> Result<Qla> {
        if gram.rows() != self.dim() {
            return Err(Error::DimensionMismatch("Gram size differs".into()));
        }
        Ok(Qla {
            space: QuadSpace::new(gram)?,
            table: self.table.clone(),
            ints: IntCache::default(),
        })
    }

    /// Overwrites `[E_i,E_j]` (and `[E_j,E_i]`) without any checks.
    pub fn with_bracket(&self, i: usize, j: usize, c: Vector) -> Qla {
        let n = self.dim();
        let mut g = self.clone();
        g.table[j * n + i] = scale_vec(&c, &GaussScalar::from_int(-1));
        g.table[i * n + j] = c;
        g
    }
}

fn unit(n: usize, k: usize) -> Vector {
    let mut v = zero_vec(n);
    v[k] = GaussScalar::one();
    v
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum DupKind {
    Ordinary,
    S1,
    S3,
}

impl DupKind {
    pub fn value(self) -> usize {
        match self {
            DupKind::Ordinary => 0,
            DupKind::S1 => 1,
            DupKind::S3 => 3,
        }
    }
}

/// dup-number with the covector spaces `V_I = {α : α ∧ I = 0}` and
/// `W_I = span{ι_{E_i∧E_j} I}`, as echelon bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DupClass {
    pub kind: DupKind,
    pub v_i: Vec<Vector>,
    pub w_i: Vec<Vector>,
}

impl DupClass {
    pub fn value(&self) -> usize {
        self.kind.value()
    }
}

/// `𝔤 = 𝔷 ⊥⊕ 𝔩` with `𝔷` central and `Z(𝔩)` totally isotropic.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub central_dim: usize,
    pub central_basis: Vec<Vector>,
    pub reduced_basis: Vec<Vector>,
    pub reduced: Qla,
}
