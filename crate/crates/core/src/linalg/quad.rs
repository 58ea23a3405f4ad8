use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{GaussScalar, Poly};

use super::echelon::{inverse, kernel, power_chain, Coordinates, Subspace};
use super::mat::{dot, Mat, Vector};

/// A finite-dimensional space with a nondegenerate symmetric bilinear form,
/// given by its Gram matrix in a fixed basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadSpace {
    gram: Mat,
    gram_inv: Mat,
}

impl QuadSpace {
    pub fn new(gram: Mat) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::domain("Gram matrix is not square"));
        }
        if !gram.is_symmetric() {
            return Err(Error::domain("Gram matrix is not symmetric"));
        }
        let gram_inv = inverse(&gram).ok_or_else(|| Error::domain("Gram matrix is degenerate"))?;
        Ok(QuadSpace { gram, gram_inv })
    }

    pub fn identity(n: usize) -> Self {
        QuadSpace::new(Mat::identity(n)).expect("identity form")
    }

    /// Scalar multiple `c·I`, `c ≠ 0`.
    pub fn scalar(n: usize, c: &GaussScalar) -> Result<Self> {
        QuadSpace::new(Mat::scalar(n, c))
    }

    /// The canonical basis: for `n = 2p` it is `(E₁..E_p, F₁..F_p)` with
    /// `B(Eᵢ,F_j) = δᵢⱼ` and all other pairings zero; for `n = 2p+1` a unit
    /// vector `G` orthogonal to both halves sits between them.
    pub fn canonical(n: usize) -> Self {
        let p = n / 2;
        let mut g = Mat::zeros(n, n);
        let off = n - p;
        for k in 0..p {
            g[(k, off + k)] = GaussScalar::one();
            g[(off + k, k)] = GaussScalar::one();
        }
        if n % 2 == 1 {
            g[(p, p)] = GaussScalar::one();
        }
        QuadSpace::new(g).expect("canonical form")
    }

    pub fn direct_sum(&self, o: &QuadSpace) -> QuadSpace {
        QuadSpace {
            gram: Mat::block_diag(&[self.gram.clone(), o.gram.clone()]),
            gram_inv: Mat::block_diag(&[self.gram_inv.clone(), o.gram_inv.clone()]),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Mat {
        &self.gram_inv
    }

    pub fn bilinear(&self, x: &[GaussScalar], y: &[GaussScalar]) -> GaussScalar {
        dot(x, &self.gram.mul_vec(y))
    }

    /// `φ(v) = B(v, ·)` as a coordinate row.
    pub fn phi(&self, v: &[GaussScalar]) -> Vector {
        self.gram.mul_vec(v)
    }

    pub fn phi_inv(&self, f: &[GaussScalar]) -> Vector {
        self.gram_inv.mul_vec(f)
    }

    /// Whether `m` is skew with respect to the form and traceless.
    pub fn is_skew(&self, m: &Mat) -> bool {
        m.rows() == self.dim()
            && m.is_square()
            && m.transpose()
                .mul(&self.gram)
                .add(&self.gram.mul(m))
                .is_zero()
            && m.trace().is_zero()
    }

    /// Whether `p` carries this form onto `target`: `pᵀ G_target p = G`.
    pub fn is_isometry_onto(&self, p: &Mat, target: &QuadSpace) -> bool {
        p.transpose().mul(&target.gram).mul(p) == self.gram
    }

    /// Whether `u` preserves the form.
    pub fn is_isometry(&self, u: &Mat) -> bool {
        u.transpose().mul(&self.gram).mul(u) == self.gram
    }
}

/// An element of the orthogonal Lie algebra of a [`QuadSpace`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewMap {
    space: QuadSpace,
    mat: Mat,
}

impl SkewMap {
    pub fn new(space: QuadSpace, mat: Mat) -> Result<Self> {
        if !space.is_skew(&mat) {
            return Err(Error::NotSkew);
        }
        Ok(SkewMap { space, mat })
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `P⁻¹ C P` on the space with Gram `Pᵀ G P`.
    pub fn change_basis(&self, p: &Mat) -> Result<SkewMap> {
        let p_inv = inverse(p).ok_or(Error::NotInvertible)?;
        let gram = p.transpose().mul(self.space.gram()).mul(p);
        SkewMap::new(QuadSpace::new(gram)?, p_inv.mul(&self.mat).mul(p))
    }

    pub fn into_parts(self) -> (QuadSpace, Mat) {
        (self.space, self.mat)
    }

    /// Restriction to an invariant nondegenerate subspace, in the given
    /// basis.
    pub fn restrict(&self, basis: &[Vector]) -> Result<SkewMap> {
        let n = self.dim();
        let coords = Coordinates::new(n, basis)
            .ok_or_else(|| Error::domain("restriction basis is linearly dependent"))?;
        let b = Mat::from_cols(n, basis);
        let space = QuadSpace::new(b.transpose().mul(self.space.gram()).mul(&b))?;
        let cols = basis
            .iter()
            .map(|v| {
                coords
                    .coords(&self.mat.mul_vec(v))
                    .ok_or_else(|| Error::domain("subspace is not invariant"))
            })
            .collect::<Result<Vec<_>>>()?;
        SkewMap::new(space, Mat::from_cols(basis.len(), &cols))
    }

    /// Orthogonal direct sum of skew maps.
    pub fn direct_sum(parts: &[SkewMap]) -> SkewMap {
        let space = parts
            .iter()
            .fold(QuadSpace::identity(0), |acc, p| acc.direct_sum(p.space()));
        let mats: Vec<Mat> = parts.iter().map(|p| p.mat.clone()).collect();
        SkewMap {
            space,
            mat: Mat::block_diag(&mats),
        }
    }

    pub fn scale(&self, c: &GaussScalar) -> SkewMap {
        SkewMap {
            space: self.space.clone(),
            mat: self.mat.scale(c),
        }
    }

    /// `U C U⁻¹` for an isometry `U`.
    pub fn conjugate(&self, u: &Mat) -> Result<SkewMap> {
        let u_inv = inverse(u).ok_or(Error::NotInvertible)?;
        SkewMap::new(self.space.clone(), u.mul(&self.mat).mul(&u_inv))
    }
}

/// `A* = G⁻¹ Aᵀ G`, characterized by `B(Ax, y) = B(x, A*y)`.
pub fn adjoint_wrt(space: &QuadSpace, m: &Mat) -> Mat {
    space.gram_inv().mul(&m.transpose()).mul(space.gram())
}

/// Basis of `{v : B(v, w) = 0 for all w in the span}`.
pub fn orthogonal_complement(space: &QuadSpace, basis: &[Vector]) -> Vec<Vector> {
    let n = space.dim();
    if basis.is_empty() {
        return Subspace::full(n).basis().to_vec();
    }
    let rows: Vec<Vector> = basis.iter().map(|w| space.phi(w)).collect();
    let k = kernel(&Mat::from_rows(rows));
    Subspace::span(n, &k).basis().to_vec()
}

/// `U = (I − a)(I + a)⁻¹`, an isometry of the space.
pub fn cayley_orthogonal(space: &QuadSpace, a: &SkewMap) -> Result<Mat> {
    assert_eq!(space.dim(), a.dim());
    let n = space.dim();
    let id = Mat::identity(n);
    let inv = inverse(&id.add(a.mat())).ok_or(Error::CayleyPole)?;
    Ok(id.sub(a.mat()).mul(&inv))
}

/// `det(xI − m)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(m: &Mat) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![GaussScalar::zero(); n + 1];
    coeffs[n] = GaussScalar::one();
    let mut mk = Mat::zeros(n, n);
    for k in 1..=n {
        mk = m.mul(&mk).add(&Mat::scalar(n, &coeffs[n - k + 1]));
        let t = m.mul(&mk).trace();
        coeffs[n - k] = -(&t / &GaussScalar::from_int(k as i64));
    }
    Poly::new(coeffs)
}

/// Generalized eigenspaces `ker (m − λI)^{mult λ}` for a root multiset of the
/// characteristic polynomial.
pub fn generalized_eigenspaces(
    m: &Mat,
    roots: &[GaussScalar],
) -> Result<BTreeMap<GaussScalar, Vec<Vector>>> {
    let n = m.rows();
    let mut mult: BTreeMap<GaussScalar, u32> = BTreeMap::new();
    for r in roots {
        *mult.entry(r.clone()).or_default() += 1;
    }
    let mut out = BTreeMap::new();
    let mut total = 0;
    for (lambda, k) in mult {
        let chain = power_chain(&m.sub(&Mat::scalar(n, &lambda)));
        let basis = Subspace::span(n, &chain.stable_kernel).basis().to_vec();
        if basis.len() != k as usize {
            return Err(Error::InternalInvariant(format!(
                "generalized eigenspace of {lambda} has dimension {} but multiplicity {k}",
                basis.len()
            )));
        }
        total += basis.len();
        out.insert(lambda, basis);
    }
    if total != n {
        return Err(Error::InternalInvariant(format!(
            "generalized eigenspaces span {total} of {n} dimensions"
        )));
    }
    Ok(out)
}
