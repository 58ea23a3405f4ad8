//! Double extensions by a skew map, amalgamated products, Jordan-type
//! algebras and the named small examples; extraction of a double extension
//! from a solvable singular algebra.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    is_zero_vec, orthogonal_complement, scale_vec, sub_vec, unit_vec, zero_vec, Coordinates, Mat,
    QuadSpace, SkewMap, Subspace, Vector,
};
use crate::orbits::{paired_jordan_map, Partition};
use crate::qla::Qla;
use crate::scalar::GaussScalar;

/// Double extension of `core` by `cbar`, on the basis `(X₁, core…, Y₁)`.
pub fn double_extend(core: &QuadSpace, cbar: &Mat) -> Result<Qla> {
    Ok(double_extend_skew(&SkewMap::new(
        core.clone(),
        cbar.clone(),
    )?))
}

pub fn double_extend_skew(cbar: &SkewMap) -> Qla {
    let q = cbar.dim();
    let n = q + 2;
    let gq = cbar.space().gram();
    let mut gram = Mat::zeros(n, n);
    gram[(0, n - 1)] = GaussScalar::one();
    gram[(n - 1, 0)] = GaussScalar::one();
    for a in 0..q {
        for b in 0..q {
            gram[(a + 1, b + 1)] = gq[(a, b)].clone();
        }
    }
    let space = QuadSpace::new(gram).expect("hyperbolic pair plus nondegenerate core");
    // B(C̄ E_a, E_b) = (C̄ᵀ G_q)_{ab}
    let pairing = cbar.mat().transpose().mul(gq);
    let mut brackets = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            if !pairing[(a, b)].is_zero() {
                let mut v = zero_vec(n);
                v[0] = pairing[(a, b)].clone();
                brackets.push((a + 1, b + 1, v));
            }
        }
        let col = cbar.mat().col(a);
        if !is_zero_vec(&col) {
            let mut v = zero_vec(n);
            for (k, c) in col.into_iter().enumerate() {
                v[k + 1] = -c;
            }
            brackets.push((a + 1, n - 1, v));
        }
    }
    Qla::from_brackets(space, brackets).expect("well-formed brackets")
}

/// Double extension of the orthogonal sum of the cores by the
/// block-diagonal map.
pub fn amalgamate(parts: &[SkewMap]) -> Result<Qla> {
    if parts.is_empty() {
        return Err(Error::domain("amalgamated product of no parts"));
    }
    Ok(double_extend_skew(&SkewMap::direct_sum(parts)))
}

/// Parameters of the Jordan-type algebras.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum JordanKind {
    /// Paired nilpotent Jordan blocks of size `p ≥ 2`.
    Even(usize),
    /// Single nilpotent Jordan block of size `2p + 1`, `p ≥ 1`.
    Odd(usize),
    /// Paired Jordan blocks of size `p ≥ 1` at `±λ`.
    Scaled(usize, GaussScalar),
}

impl FromStr for JordanKind {
    type Err = Error;

    /// `even:<p>`, `odd:<p>` or `scaled:<p>:<λ>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("bad Jordan kind {s:?}"));
        let mut it = s.splitn(3, ':');
        let kind = it.next().ok_or_else(bad)?;
        let p: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let rest = it.next();
        match (kind, rest) {
            ("even", None) => Ok(JordanKind::Even(p)),
            ("odd", None) => Ok(JordanKind::Odd(p)),
            ("scaled", Some(l)) => Ok(JordanKind::Scaled(p, l.parse()?)),
            _ => Err(bad()),
        }
    }
}

/// `[[J_{p+1}, M], [0, −J_pᵀ]]` on the canonical `(2p+1)`-dimensional
/// space, `M` having a single entry `−1` in its bottom-right corner. For
/// `p = 0` this is the zero map on a line.
pub fn odd_jordan_map(p: usize) -> SkewMap {
    let n = 2 * p + 1;
    let mut m = Mat::zeros(n, n);
    for k in 0..p {
        m[(k, k + 1)] = GaussScalar::one();
    }
    for k in 0..p.saturating_sub(1) {
        m[(p + 2 + k, p + 1 + k)] = GaussScalar::from_int(-1);
    }
    if p > 0 {
        m[(p, 2 * p)] = GaussScalar::from_int(-1);
    }
    SkewMap::new(QuadSpace::canonical(n), m).expect("odd Jordan map is skew")
}

pub fn jordan_map(kind: &JordanKind) -> Result<SkewMap> {
    match kind {
        JordanKind::Even(p) if *p >= 2 => Ok(paired_jordan_map(*p, &GaussScalar::zero())),
        JordanKind::Even(p) => Err(Error::domain(format!(
            "even Jordan type needs p ≥ 2, got {p}"
        ))),
        JordanKind::Odd(p) if *p >= 1 => Ok(odd_jordan_map(*p)),
        JordanKind::Odd(p) => Err(Error::domain(format!(
            "odd Jordan type needs p ≥ 1, got {p}"
        ))),
        JordanKind::Scaled(0, _) => Err(Error::domain("scaled Jordan type needs p ≥ 1")),
        JordanKind::Scaled(p, l) if l.is_zero() && *p < 2 => {
            Err(Error::domain("scaled Jordan type with λ = 0 needs p ≥ 2"))
        }
        JordanKind::Scaled(p, l) => Ok(paired_jordan_map(*p, l)),
    }
}

pub fn jordan_type_algebra(kind: &JordanKind) -> Result<Qla> {
    Ok(double_extend_skew(&jordan_map(kind)?))
}

/// The skew map attached to an admissible partition: one paired block per
/// pair of equal even parts, one odd block per odd part; even pairs first,
/// each group in decreasing order.
pub fn partition_map(d: &Partition) -> Result<SkewMap> {
    if !d.is_admissible() {
        return Err(Error::NotAdmissiblePartition(d.parts().to_vec()));
    }
    if d.is_empty() {
        return Err(Error::domain("empty partition"));
    }
    let mut blocks = Vec::new();
    for (part, mult) in d.multiplicities() {
        if part % 2 == 0 {
            for _ in 0..mult / 2 {
                blocks.push(paired_jordan_map(part, &GaussScalar::zero()));
            }
        }
    }
    for &part in d.parts() {
        if part % 2 == 1 {
            blocks.push(odd_jordan_map(part / 2));
        }
    }
    Ok(SkewMap::direct_sum(&blocks))
}

/// The nilpotent algebra attached to an admissible partition.
pub fn g_of_partition(d: &Partition) -> Result<Qla> {
    Ok(double_extend_skew(&partition_map(d)?))
}

/// The amalgamated product of `g₄(λ)` and `g₄(μ)`.
pub fn g_lambda_mu(lambda: &GaussScalar, mu: &GaussScalar) -> Result<Qla> {
    amalgamate(&[scaled_map(lambda)?, scaled_map(mu)?])
}

fn scaled_map(lambda: &GaussScalar) -> Result<SkewMap> {
    if lambda.is_zero() {
        return Err(Error::domain("λ must be nonzero"));
    }
    Ok(paired_jordan_map(1, lambda))
}

/// The named small examples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Builtin {
    /// `o(3)` with the form `λκ`.
    G3(GaussScalar),
    G4,
    G4Scaled(GaussScalar),
    G5,
    G6,
}

impl FromStr for Builtin {
    type Err = Error;

    /// `g3:<λ>`, `g4`, `g4:<λ>`, `g5` or `g6`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        match (name, arg) {
            ("g3", Some(l)) => Ok(Builtin::G3(l.parse()?)),
            ("g4", None) => Ok(Builtin::G4),
            ("g4", Some(l)) => Ok(Builtin::G4Scaled(l.parse()?)),
            ("g5", None) => Ok(Builtin::G5),
            ("g6", None) => Ok(Builtin::G6),
            _ => Err(Error::domain(format!("unknown builtin {s:?}"))),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::G3(l) => write!(f, "g3:{l}"),
            Builtin::G4 => write!(f, "g4"),
            Builtin::G4Scaled(l) => write!(f, "g4:{l}"),
            Builtin::G5 => write!(f, "g5"),
            Builtin::G6 => write!(f, "g6"),
        }
    }
}

/// `o(3)` with `[L₁,L₂] = L₃` and cyclic, Killing form `−2I`, equipped
/// with `λκ`.
pub fn o3(lambda: &GaussScalar) -> Result<Qla> {
    if lambda.is_zero() {
        return Err(Error::domain("λ must be nonzero"));
    }
    let space = QuadSpace::scalar(3, &(lambda * &GaussScalar::from_int(-2)))?;
    Qla::from_brackets(
        space,
        vec![
            (0, 1, unit_vec(3, 2)),
            (1, 2, unit_vec(3, 0)),
            (2, 0, unit_vec(3, 1)),
        ],
    )
}

pub fn builtin(b: &Builtin) -> Result<Qla> {
    match b {
        Builtin::G3(l) => o3(l),
        Builtin::G4 => Ok(double_extend_skew(&scaled_map(&GaussScalar::one())?)),
        Builtin::G4Scaled(l) => Ok(double_extend_skew(&scaled_map(l)?)),
        Builtin::G5 => Ok(double_extend_skew(&odd_jordan_map(1))),
        Builtin::G6 => Ok(double_extend_skew(&paired_jordan_map(
            2,
            &GaussScalar::zero(),
        ))),
    }
}

/// A solvable singular algebra written as a double extension: `x0`, `y0`
/// span a hyperbolic plane, `x0` is central, the core is its orthogonal
/// and `cbar = ad(y0)` on the core.
#[derive(Clone, Debug)]
pub struct DoubleExtensionData {
    pub ambient: Qla,
    pub x0: Vector,
    pub y0: Vector,
    pub core: QuadSpace,
    pub cbar: SkewMap,
    /// Core basis expressed in ambient coordinates.
    pub embedding: Vec<Vector>,
}

impl DoubleExtensionData {
    /// Columns `(x0, embedding…, y0)`: the map from the double-extension
    /// basis into the ambient algebra.
    pub fn change_of_basis(&self) -> Mat {
        let mut cols = vec![self.x0.clone()];
        cols.extend(self.embedding.iter().cloned());
        cols.push(self.y0.clone());
        Mat::from_cols(self.ambient.dim(), &cols)
    }

    /// Whether the change of basis is an isometric Lie algebra isomorphism
    /// from `double_extend(core, cbar)` onto the ambient algebra.
    pub fn verify(&self) -> bool {
        let model = double_extend_skew(&self.cbar);
        let p = self.change_of_basis();
        if !model.space().is_isometry_onto(&p, self.ambient.space()) {
            return false;
        }
        let n = model.dim();
        let cols = p.col_vecs();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                self.ambient.bracket(&cols[i], &cols[j]) == p.mul_vec(model.bracket_basis(i, j))
            })
        })
    }
}

/// A nonzero isotropic vector in the span of `basis`: basis vectors first,
/// then `x + t·y` over pairs, solving the quadratic isotropy equation.
fn isotropic_in(space: &QuadSpace, basis: &[Vector]) -> Option<Vector> {
    if let Some(v) = basis.iter().find(|v| space.bilinear(v, v).is_zero()) {
        return Some(v.clone());
    }
    for (a, x) in basis.iter().enumerate() {
        for y in &basis[a + 1..] {
            let (bxx, bxy, byy) = (
                space.bilinear(x, x),
                space.bilinear(x, y),
                space.bilinear(y, y),
            );
            // byy t² + 2 bxy t + bxx = 0, with byy ≠ 0 here.
            let disc = &(&bxy * &bxy) - &(&bxx * &byy);
            if let Some(r) = disc.sqrt() {
                let t = &(&(-bxy.clone()) + &r) / &byy;
                let v: Vector = x.iter().zip(y).map(|(p, q)| p + &(&t * q)).collect();
                if !is_zero_vec(&v) {
                    debug_assert!(space.bilinear(&v, &v).is_zero());
                    return Some(v);
                }
            }
        }
    }
    None
}

/// Writes a solvable singular algebra as a double extension.
pub fn extract_double_extension(g: &Qla) -> Result<DoubleExtensionData> {
    if !g.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let dup = g.dup()?;
    if dup.value() == 0 {
        return Err(Error::domain("extraction needs a singular algebra"));
    }
    let n = g.dim();
    let space = g.space();
    let v_vecs: Vec<Vector> = dup.v_i.iter().map(|a| space.phi_inv(a)).collect();
    let candidates = g.center().intersect(&Subspace::span(n, &v_vecs));
    let x0 = isotropic_in(space, candidates.basis()).ok_or_else(|| {
        Error::ExtractionFailure(
            "no isotropic central vector with Gaussian-rational coordinates".into(),
        )
    })?;
    let gx = space.phi(&x0);
    let k = gx
        .iter()
        .position(|c| !c.is_zero())
        .expect("nondegenerate form");
    let y = scale_vec(&unit_vec(n, k), &gx[k].inv().expect("nonzero"));
    let half = GaussScalar::from_frac(1, 2);
    let y0 = sub_vec(&y, &scale_vec(&x0, &(&half * &space.bilinear(&y, &y))));
    let embedding = orthogonal_complement(space, &[x0.clone(), y0.clone()]);
    let e = Mat::from_cols(n, &embedding);
    let core = QuadSpace::new(e.transpose().mul(space.gram()).mul(&e))
        .map_err(|_| Error::ExtractionFailure("core carries a degenerate form".into()))?;
    let coords = Coordinates::new(n, &embedding).expect("complement basis is independent");
    let cols = embedding
        .iter()
        .map(|v| {
            coords
                .coords(&g.bracket(&y0, v))
                .ok_or_else(|| Error::ExtractionFailure("ad(Y0) does not preserve the core".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let cbar = SkewMap::new(core.clone(), Mat::from_cols(embedding.len(), &cols))
        .map_err(|_| Error::ExtractionFailure("ad(Y0) is not skew on the core".into()))?;
    let data = DoubleExtensionData {
        ambient: g.clone(),
        x0,
        y0,
        core,
        cbar,
        embedding,
    };
    if !data.verify() {
        return Err(Error::ExtractionFailure(
            "core brackets do not match the double extension".into(),
        ));
    }
    Ok(data)
}

/// `𝔤 = 𝔰 ⊥⊕ 𝔷` with `𝔰 ≅ o(3)` carrying `λκ` and `𝔷` central.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NonsolvableSplit {
    pub lambda: GaussScalar,
    pub central_dim: usize,
}

pub fn split_nonsolvable_singular(g: &Qla) -> Result<NonsolvableSplit> {
    if g.is_solvable() {
        return Err(Error::domain("algebra is solvable"));
    }
    if g.dup()?.value() == 0 {
        return Err(Error::domain("algebra is not singular"));
    }
    let n = g.dim();
    let derived = g.derived();
    if derived.dim() != 3 {
        return Err(Error::NotRecognized(format!(
            "derived algebra has dimension {}",
            derived.dim()
        )));
    }
    let center = g.center();
    if center.dim() != n - 3 || center.intersect(&derived).dim() != 0 {
        return Err(Error::NotRecognized(
            "center is not a complement of the derived algebra".into(),
        ));
    }
    let s = g
        .restrict(derived.basis())
        .map_err(|e| Error::NotRecognized(e.to_string()))?;
    if s.derived().dim() != 3 {
        return Err(Error::NotRecognized(
            "derived algebra is not perfect".into(),
        ));
    }
    let kappa = s.killing_form();
    let b = s.space().gram();
    let (i, j) = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .find(|&(i, j)| !kappa[(i, j)].is_zero())
        .ok_or_else(|| Error::NotRecognized("Killing form vanishes".into()))?;
    let lambda = &b[(i, j)] / &kappa[(i, j)];
    if b != &kappa.scale(&lambda) {
        return Err(Error::NotRecognized(
            "form is not a multiple of the Killing form".into(),
        ));
    }
    Ok(NonsolvableSplit {
        lambda,
        central_dim: n - 3,
    })
}
