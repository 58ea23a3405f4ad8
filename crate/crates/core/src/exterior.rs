//! Alternating forms on a coordinate space: wedge, interior product, the
//! super-Poisson bracket, and the bracket ↔ 3-form correspondence.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{inverse, Mat, QuadSpace, Vector};
use crate::qla::Qla;
use crate::scalar::GaussScalar;

/// A homogeneous alternating form of fixed degree, stored sparsely by
/// strictly increasing index tuples.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AltForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, GaussScalar>,
}

/// Sorts `idx` in place, returning the sign of the permutation, or `None`
/// when an index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

impl AltForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        AltForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The constant `c` as a 0-form.
    pub fn constant(dim: usize, c: GaussScalar) -> Self {
        let mut f = AltForm::zero(dim, 0);
        f.add_term(Vec::new(), c);
        f
    }

    /// `e_{i₁}* ∧ … ∧ e_{i_k}*` times `c`; indices in any order.
    pub fn monomial(dim: usize, indices: &[usize], c: GaussScalar) -> Self {
        let mut f = AltForm::zero(dim, indices.len());
        f.add_term(indices.to_vec(), c);
        f
    }

    /// The 1-form with the given coordinates.
    pub fn covector(coords: &[GaussScalar]) -> Self {
        let mut f = AltForm::zero(coords.len(), 1);
        for (k, c) in coords.iter().enumerate() {
            f.add_term(vec![k], c.clone());
        }
        f
    }

    /// Builds a form from arbitrary (possibly unsorted, repeated) index
    /// tuples, summing coefficients.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, GaussScalar)>,
    ) -> Result<Self> {
        let mut f = AltForm::zero(dim, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "term {idx:?} does not have degree {degree}"
                )));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::DimensionMismatch(format!(
                    "index {bad} out of range for dimension {dim}"
                )));
            }
            f.add_term(idx, c);
        }
        Ok(f)
    }

    fn add_term(&mut self, mut idx: Vec<usize>, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        let Some(odd) = sort_with_sign(&mut idx) else {
            return;
        };
        let c = if odd { -c } else { c };
        let entry = self.terms.entry(idx);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &GaussScalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient on the given index tuple, with the alternating sign.
    pub fn coeff(&self, indices: &[usize]) -> GaussScalar {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            None => GaussScalar::zero(),
            Some(odd) => {
                let c = self.terms.get(&idx).cloned().unwrap_or_default();
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn add(&self, o: &AltForm) -> AltForm {
        assert_eq!(
            (self.dim, self.degree),
            (o.dim, o.degree),
            "incompatible forms"
        );
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussScalar) -> AltForm {
        if c.is_zero() {
            return AltForm::zero(self.dim, self.degree);
        }
        AltForm {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn sub(&self, o: &AltForm) -> AltForm {
        self.add(&o.scale(&GaussScalar::from_int(-1)))
    }

    /// Evaluates the form on `degree` vectors.
    pub fn eval(&self, vectors: &[Vector]) -> GaussScalar {
        assert_eq!(vectors.len(), self.degree);
        let mut f = self.clone();
        for v in vectors {
            f = contract(v, &f).expect("degree is positive");
        }
        // ι_{v_k} ⋯ ι_{v_1} equals evaluation on (v_1, …, v_k).
        f.coeff(&[])
    }

    /// Coordinates in the basis of increasing index tuples of this degree,
    /// listed in lexicographic order.
    pub fn coordinates(&self, basis: &[Vec<usize>]) -> Vector {
        basis
            .iter()
            .map(|k| self.terms.get(k).cloned().unwrap_or_default())
            .collect()
    }
}

/// All strictly increasing `k`-tuples from `0..n` in lexicographic order.
pub fn index_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn wedge(a: &AltForm, b: &AltForm) -> AltForm {
    assert_eq!(a.dim, b.dim, "forms over different spaces");
    let mut out = AltForm::zero(a.dim, a.degree + b.degree);
    for (ka, va) in &a.terms {
        for (kb, vb) in &b.terms {
            let mut idx = ka.clone();
            idx.extend_from_slice(kb);
            out.add_term(idx, va * vb);
        }
    }
    out
}

/// Interior product `ι_v a`.
pub fn contract(v: &[GaussScalar], a: &AltForm) -> Result<AltForm> {
    if a.degree == 0 {
        return Err(Error::ZeroDegree);
    }
    assert_eq!(v.len(), a.dim, "vector length differs from form dimension");
    let mut out = AltForm::zero(a.dim, a.degree - 1);
    for (k, c) in &a.terms {
        for (r, &i) in k.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            let mut rest = k.clone();
            rest.remove(r);
            let t = c * &v[i];
            out.add_term(rest, if r % 2 == 1 { -t } else { t });
        }
    }
    Ok(out)
}

/// `ι_{X∧Y} a = a(X, Y, ·)`.
pub fn contract2(x: &[GaussScalar], y: &[GaussScalar], a: &AltForm) -> Result<AltForm> {
    contract(y, &contract(x, a)?)
}

/// Super-Poisson bracket computed with the coordinate basis and its
/// B-dual basis.
pub fn super_poisson(space: &QuadSpace, a: &AltForm, b: &AltForm) -> Result<AltForm> {
    super_poisson_with_basis(space, &Mat::identity(space.dim()), a, b)
}

/// Super-Poisson bracket computed with the basis `v_j = P e_j` and the dual
/// family `w_j` satisfying `B(v_i, w_j) = δ_ij`. The result does not depend
/// on `P`.
pub fn super_poisson_with_basis(
    space: &QuadSpace,
    p: &Mat,
    a: &AltForm,
    b: &AltForm,
) -> Result<AltForm> {
    let n = space.dim();
    if a.dim != n || b.dim != n {
        return Err(Error::DimensionMismatch(
            "forms and quadratic space differ in dimension".into(),
        ));
    }
    if a.degree == 0 || b.degree == 0 {
        let total = a.degree + b.degree;
        return if total >= 2 {
            Ok(AltForm::zero(n, total - 2))
        } else {
            Err(Error::ZeroDegree)
        };
    }
    let p_inv = inverse(p).ok_or(Error::NotInvertible)?;
    // W = G⁻¹ P⁻ᵀ, so that Vᵀ G W = I.
    let w = space.gram_inv().mul(&p_inv.transpose());
    let mut out = AltForm::zero(n, a.degree + b.degree - 2);
    for j in 0..n {
        let ia = contract(&p.col(j), a)?;
        if ia.is_zero() {
            continue;
        }
        let ib = contract(&w.col(j), b)?;
        out = out.add(&wedge(&ia, &ib));
    }
    if a.degree.is_multiple_of(2) {
        out = out.scale(&GaussScalar::from_int(-1));
    }
    Ok(out)
}

/// The canonical 3-form `I(X,Y,Z) = B([X,Y],Z)`.
pub fn threeform_from_brackets(g: &Qla) -> Result<AltForm> {
    if !g.check_invariant_form() {
        return Err(Error::NotInvariant);
    }
    let n = g.dim();
    let lowered = g.lowered_table();
    let mut out = AltForm::zero(n, 3);
    for i in 0..n {
        for j in i + 1..n {
            if g.bracket_basis(i, j).iter().all(GaussScalar::is_zero) {
                continue;
            }
            let row = lowered[i * n + j].clone();
            for (k, c) in row.into_iter().enumerate().skip(j + 1) {
                out.add_term(vec![i, j, k], c);
            }
        }
    }
    Ok(out)
}

/// The bracket `[X,Y] = φ⁻¹(ι_{X∧Y} I)`; the form is always invariant for
/// the result, Jacobi holds exactly when `{I,I} = 0`.
pub fn brackets_from_threeform(space: &QuadSpace, i3: &AltForm) -> Result<Qla> {
    let n = space.dim();
    if i3.degree != 3 || i3.dim != n {
        return Err(Error::DimensionMismatch(
            "expected a 3-form over the given space".into(),
        ));
    }
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let row: Vector = (0..n).map(|k| i3.coeff(&[i, j, k])).collect();
            if row.iter().all(GaussScalar::is_zero) {
                continue;
            }
            brackets.push((i, j, space.phi_inv(&row)));
        }
    }
    Qla::from_brackets(space.clone(), brackets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vec;

    fn s(t: &str) -> GaussScalar {
        t.parse().unwrap()
    }

    fn e(n: usize, idx: &[usize]) -> AltForm {
        AltForm::monomial(n, idx, GaussScalar::one())
    }

    #[test]
    fn wedge_examples() {
        let w = wedge(&e(4, &[0]), &e(4, &[1]));
        assert_eq!(
            w.terms().collect::<Vec<_>>(),
            vec![(&[0usize, 1][..], &s("1"))]
        );
        let a = AltForm::covector(&[s("1"), s("2"), s("i"), s("0")]);
        assert!(wedge(&a, &a).is_zero());
        assert_eq!(wedge(&e(4, &[0, 1]), &e(4, &[2, 3])), e(4, &[0, 1, 2, 3]));
        assert_eq!(wedge(&e(4, &[2, 3]), &e(4, &[0, 1])), e(4, &[0, 1, 2, 3]));
        assert_eq!(
            wedge(&e(4, &[1]), &e(4, &[0])),
            e(4, &[0, 1]).scale(&s("-1"))
        );
    }

    #[test]
    fn contraction_examples() {
        let f = e(3, &[0, 1]);
        assert_eq!(contract(&unit_vec(3, 0), &f).unwrap(), e(3, &[1]));
        assert_eq!(
            contract(&unit_vec(3, 1), &f).unwrap(),
            e(3, &[0]).scale(&s("-1"))
        );
        assert!(contract(&unit_vec(3, 2), &f).unwrap().is_zero());
        assert!(matches!(
            contract(&unit_vec(3, 0), &AltForm::constant(3, s("1"))),
            Err(Error::ZeroDegree)
        ));
    }

    #[test]
    fn evaluation_matches_coefficient() {
        let f = e(3, &[0, 1, 2]).scale(&s("5"));
        let v = [unit_vec(3, 1), unit_vec(3, 0), unit_vec(3, 2)];
        assert_eq!(f.eval(&v), s("-5"));
    }

    #[test]
    fn poisson_on_covectors() {
        let h = QuadSpace::canonical(2);
        let a = e(2, &[0]);
        let b = e(2, &[1]);
        let got = super_poisson(&h, &a, &b).unwrap();
        assert_eq!(got, AltForm::constant(2, s("1")));
        assert!(super_poisson(&h, &a, &a).unwrap().is_zero());
    }

    #[test]
    fn index_tuple_listing() {
        assert_eq!(
            index_tuples(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
