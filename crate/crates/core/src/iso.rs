//! Isomorphism and i-isomorphism of singular quadratic Lie algebras,
//! centromorphisms and the quadratic dimension.

use serde::Serialize;

use crate::dblext::{extract_double_extension, split_nonsolvable_singular, NonsolvableSplit};
use crate::error::{Error, Result};
use crate::linalg::{det, unit_vec, IncrementalEchelon, Mat, Vector};
use crate::orbits::{orbit_invariant, projective_equal, projective_normalize, OrbitInvariant};
use crate::qla::Qla;
use crate::scalar::GaussScalar;

/// What the verdict was decided on.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum Evidence {
    Orbit(OrbitInvariant),
    Nonsolvable(NonsolvableSplit),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub i_isomorphic: bool,
    pub invariant_a: Option<Evidence>,
    pub invariant_b: Option<Evidence>,
}

impl IsoVerdict {
    fn no(a: Option<Evidence>, b: Option<Evidence>) -> Self {
        IsoVerdict {
            isomorphic: false,
            i_isomorphic: false,
            invariant_a: a,
            invariant_b: b,
        }
    }
}

fn require_singular(g: &Qla) -> Result<()> {
    match g.dup() {
        Ok(d) if d.value() > 0 => Ok(()),
        Ok(_) => Err(Error::domain("algebra is ordinary (dup = 0)")),
        Err(Error::Abelian) => Err(Error::domain("algebra is Abelian, hence not singular")),
        Err(e) => Err(e),
    }
}

fn evidence(g: &Qla) -> Result<Evidence> {
    if g.is_solvable() {
        let data = extract_double_extension(g)?;
        Ok(Evidence::Orbit(orbit_invariant(&projective_normalize(
            &data.cbar,
        ))?))
    } else {
        Ok(Evidence::Nonsolvable(split_nonsolvable_singular(g)?))
    }
}

/// Decides isomorphism and i-isomorphism of two singular algebras.
pub fn decide_iso(g: &Qla, h: &Qla) -> Result<IsoVerdict> {
    require_singular(g)?;
    require_singular(h)?;
    let a = evidence(g)?;
    let b = evidence(h)?;
    if g.dim() != h.dim() {
        return Ok(IsoVerdict::no(Some(a), Some(b)));
    }
    let (iso, i_iso) = match (&a, &b) {
        (Evidence::Orbit(x), Evidence::Orbit(y)) => {
            let eq = projective_equal(x, y);
            (eq, eq)
        }
        (Evidence::Nonsolvable(x), Evidence::Nonsolvable(y)) => (true, x.lambda == y.lambda),
        _ => (false, false),
    };
    Ok(IsoVerdict {
        isomorphic: iso,
        i_isomorphic: i_iso,
        invariant_a: Some(a),
        invariant_b: Some(b),
    })
}

/// Basis of the space of centromorphisms: `B`-symmetric maps `D` with
/// `D[X,Y] = [DX,Y]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CentroBasis {
    pub maps: Vec<Mat>,
}

impl CentroBasis {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }
}

/// Whether `d` is a centromorphism of `g`.
pub fn is_centromorphism(g: &Qla, d: &Mat) -> bool {
    let n = g.dim();
    if d.rows() != n || !d.is_square() || !g.space().gram().mul(d).is_symmetric() {
        return false;
    }
    let cols = d.col_vecs();
    (0..n).all(|i| {
        (0..n).all(|j| d.mul_vec(g.bracket_basis(i, j)) == g.bracket(&cols[i], &unit_vec(n, j)))
    })
}

pub fn centromorphisms(g: &Qla) -> CentroBasis {
    let n = g.dim();
    let var = |r: usize, c: usize| r * n + c;
    let gram = g.space().gram();
    let mut sys = IncrementalEchelon::new(n * n);
    // (GD)_{ij} = (GD)_{ji}
    for i in 0..n {
        for j in i + 1..n {
            let mut row = vec![GaussScalar::zero(); n * n];
            for k in 0..n {
                row[var(k, j)] += &gram[(i, k)];
                row[var(k, i)] -= &gram[(j, k)];
            }
            sys.push(row);
        }
    }
    // D[E_i,E_j] − [D E_i, E_j] = 0, componentwise.
    for i in 0..n {
        for j in 0..n {
            let bij = g.bracket_basis(i, j);
            for r in 0..n {
                let mut row = vec![GaussScalar::zero(); n * n];
                for (k, c) in bij.iter().enumerate() {
                    if !c.is_zero() {
                        row[var(r, k)] += c;
                    }
                }
                for k in 0..n {
                    let c = &g.bracket_basis(k, j)[r];
                    if !c.is_zero() {
                        row[var(k, i)] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    sys.push(row);
                }
            }
        }
    }
    let maps = sys
        .kernel()
        .into_iter()
        .map(|v| Mat::from_rows(v.chunks(n).map(<[GaussScalar]>::to_vec).collect()))
        .collect();
    CentroBasis { maps }
}

pub fn quadratic_dimension(g: &Qla) -> usize {
    centromorphisms(g).dim()
}

/// `1 + z(z+1)/2`, the quadratic dimension of a reduced singular algebra
/// with center of dimension `z`.
pub fn quadratic_dimension_formula(z: usize) -> usize {
    1 + z * (z + 1) / 2
}

/// dup of `g` with respect to `B` and with respect to `B'(X,Y) = B(DX,Y)`.
pub fn dup_transport_check(g: &Qla, d: &Mat, require_invertible: bool) -> Result<(usize, usize)> {
    if !is_centromorphism(g, d) {
        return Err(Error::domain("map is not a centromorphism"));
    }
    if det(d).is_zero() {
        return Err(Error::domain(if require_invertible {
            "centromorphism is not invertible"
        } else {
            "centromorphism is not invertible, so the transported form is degenerate"
        }));
    }
    let transported = g.with_gram(g.space().gram().mul(d))?;
    if !transported.check_invariant_form() {
        return Err(Error::InternalInvariant(
            "transported form is not invariant".into(),
        ));
    }
    Ok((g.dup()?.value(), transported.dup()?.value()))
}

/// Whether every centromorphism of a reduced singular algebra is
/// `μ·Id + Z` with `Z` vanishing on `[g,g]` and valued in the center.
pub fn centromorphism_shape_check(g: &Qla) -> Result<bool> {
    if !g.is_reduced() {
        return Err(Error::domain("algebra is not reduced"));
    }
    require_singular(g)?;
    let n = g.dim();
    let derived = g.derived();
    let center = g.center();
    for d in centromorphisms(g).maps {
        let Some(mu) = scalar_on(&d, derived.basis()) else {
            return Ok(false);
        };
        let z = d.sub(&Mat::scalar(n, &mu));
        if !z.col_vecs().iter().all(|c| center.contains(c)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The scalar `μ` with `D w = μ w` for every `w` in the list, if any.
fn scalar_on(d: &Mat, ws: &[Vector]) -> Option<GaussScalar> {
    let w0 = ws.first()?;
    let k = w0.iter().position(|c| !c.is_zero())?;
    let mu = &d.mul_vec(w0)[k] / &w0[k];
    ws.iter()
        .all(|w| d.mul_vec(w) == w.iter().map(|c| c * &mu).collect::<Vector>())
        .then_some(mu)
}
