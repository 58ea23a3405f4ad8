//! Orbit invariants of skew-symmetric maps under the orthogonal group.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    char_poly, det, echelon_basis, generalized_eigenspaces, inverse, power_chain, Mat, QuadSpace,
    SkewMap, Vector,
};
use crate::scalar::{gauss_factor, poly_roots_gaussian, GaussInt, GaussScalar};

/// A partition stored as a weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts into decreasing order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of each distinct part, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Every even part occurs with even multiplicity.
    pub fn is_admissible(&self) -> bool {
        self.multiplicities()
            .iter()
            .all(|&(p, k)| p % 2 == 1 || k % 2 == 0)
    }

    /// Partition from the rank sequence of a nilpotent map on `n`
    /// dimensions: sizes `s` occur `r_{s-1} - 2 r_s + r_{s+1}` times.
    pub fn from_ranks(ranks: &[usize]) -> Partition {
        let r = |k: usize| ranks.get(k).copied().unwrap_or(0) as i64;
        let mut parts = Vec::new();
        for s in (1..=ranks.len()).rev() {
            let count = r(s - 1) - 2 * r(s) + r(s + 1);
            debug_assert!(count >= 0);
            parts.extend(std::iter::repeat_n(s, count.max(0) as usize));
        }
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `3,2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, each weakly decreasing.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Admissible partitions of `n` in lexicographic order.
pub fn enumerate_pprime(n: usize) -> Vec<Partition> {
    let mut out: Vec<Partition> = all_partitions(n)
        .into_iter()
        .filter(Partition::is_admissible)
        .collect();
    out.sort();
    out
}

/// Spectrum, multiplicities and per-eigenvalue Jordan partitions of an
/// invertible skew map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct InvertibleTriple {
    entries: BTreeMap<GaussScalar, (usize, Partition)>,
}

impl InvertibleTriple {
    /// Checks the negation symmetry and `Σ jordan(λ) = mult(λ)`.
    pub fn new(entries: BTreeMap<GaussScalar, (usize, Partition)>) -> Result<Self> {
        for (lambda, (m, d)) in &entries {
            if lambda.is_zero() {
                return Err(Error::domain("zero in an invertible spectrum"));
            }
            if *m == 0 || d.size() != *m {
                return Err(Error::domain(format!(
                    "Jordan data {d} at {lambda} does not sum to multiplicity {m}"
                )));
            }
            match entries.get(&-lambda.clone()) {
                Some((m2, d2)) if m2 == m && d2 == d => {}
                _ => {
                    return Err(Error::domain(format!(
                        "spectrum is not symmetric under negation at {lambda}"
                    )))
                }
            }
        }
        Ok(InvertibleTriple { entries })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn spectrum(&self) -> impl Iterator<Item = &GaussScalar> {
        self.entries.keys()
    }

    pub fn entries(&self) -> &BTreeMap<GaussScalar, (usize, Partition)> {
        &self.entries
    }

    pub fn mult(&self, lambda: &GaussScalar) -> usize {
        self.entries.get(lambda).map_or(0, |e| e.0)
    }

    pub fn jordan(&self, lambda: &GaussScalar) -> Option<&Partition> {
        self.entries.get(lambda).map(|e| &e.1)
    }

    /// Dimension of the invertible part.
    pub fn dim(&self) -> usize {
        self.entries.values().map(|e| e.0).sum()
    }

    /// `μ·(Λ, m, d)`.
    pub fn scale(&self, mu: &GaussScalar) -> InvertibleTriple {
        InvertibleTriple {
            entries: self
                .entries
                .iter()
                .map(|(l, e)| (l * mu, e.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for InvertibleTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(l, (m, d))| (l, (m, d))))
            .finish()
    }
}

/// Complete orbit datum: nilpotent partition of the Fitting-nilpotent part
/// and invertible triple of the Fitting-invertible part.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OrbitInvariant {
    pub nilpotent: Partition,
    pub invertible: InvertibleTriple,
}

#[derive(Serialize, Deserialize)]
struct TripleEntry {
    lambda: GaussScalar,
    mult: usize,
    jordan: Partition,
}

#[derive(Serialize, Deserialize)]
struct OrbitInvariantWire {
    nilpotent: Partition,
    invertible: Vec<TripleEntry>,
}

impl Serialize for OrbitInvariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OrbitInvariantWire {
            nilpotent: self.nilpotent.clone(),
            invertible: self
                .invertible
                .entries
                .iter()
                .map(|(l, (m, d))| TripleEntry {
                    lambda: l.clone(),
                    mult: *m,
                    jordan: d.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrbitInvariant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = OrbitInvariantWire::deserialize(d)?;
        let nilpotent = Partition::new(w.nilpotent.parts).map_err(serde::de::Error::custom)?;
        let entries = w
            .invertible
            .into_iter()
            .map(|e| Partition::new(e.jordan.parts).map(|p| (e.lambda, (e.mult, p))))
            .collect::<Result<BTreeMap<_, _>>>()
            .map_err(serde::de::Error::custom)?;
        let invertible = InvertibleTriple::new(entries).map_err(serde::de::Error::custom)?;
        Ok(OrbitInvariant {
            nilpotent,
            invertible,
        })
    }
}

/// `𝔮 = 𝔮_N ⊕ 𝔮_I` with the restricted maps and the chosen bases.
#[derive(Clone, Debug)]
pub struct FittingSplit {
    pub nil_part: SkewMap,
    pub inv_part: SkewMap,
    pub nil_basis: Vec<Vector>,
    pub inv_basis: Vec<Vector>,
}

pub fn fitting(c: &SkewMap) -> Result<FittingSplit> {
    let chain = power_chain(c.mat());
    let nil_part = c.restrict(&chain.stable_kernel)?;
    let inv_part = c.restrict(&chain.stable_image)?;
    Ok(FittingSplit {
        nil_part,
        inv_part,
        nil_basis: chain.stable_kernel,
        inv_basis: chain.stable_image,
    })
}

/// Jordan partition of a nilpotent skew map. With `require_nilpotent`
/// unset, the map is first cut down to its Fitting-nilpotent part.
pub fn nilpotent_partition(c: &SkewMap, require_nilpotent: bool) -> Result<Partition> {
    let ranks = power_chain(c.mat()).ranks;
    if *ranks.last().expect("nonempty") != 0 {
        if require_nilpotent {
            return Err(Error::NotNilpotent);
        }
        return nilpotent_partition(&fitting(c)?.nil_part, true);
    }
    let d = Partition::from_ranks(&ranks);
    if !d.is_admissible() {
        return Err(Error::InternalInvariant(format!(
            "computed partition {d} is not admissible"
        )));
    }
    Ok(d)
}

/// Generalized eigenspaces of `c` in a fixed order, with the change of
/// basis matrix whose columns list them.
fn eigen_decomposition(c: &Mat) -> Result<(BTreeMap<GaussScalar, Vec<Vector>>, Mat)> {
    let roots = poly_roots_gaussian(&char_poly(c))?;
    let spaces = generalized_eigenspaces(c, &roots)?;
    let cols: Vec<Vector> = spaces.values().flatten().cloned().collect();
    Ok((spaces, Mat::from_cols(c.rows(), &cols)))
}

/// `c = s + n` with `s` semisimple, `n` nilpotent and `sn = ns`.
pub fn sn_split(c: &SkewMap) -> Result<(SkewMap, SkewMap)> {
    let dim = c.dim();
    let (spaces, t) = eigen_decomposition(c.mat())?;
    let diag: Vec<GaussScalar> = spaces
        .iter()
        .flat_map(|(l, b)| std::iter::repeat_n(l.clone(), b.len()))
        .collect();
    let t_inv =
        inverse(&t).ok_or_else(|| Error::InternalInvariant("eigenvectors are dependent".into()))?;
    let s = if dim == 0 {
        Mat::zeros(0, 0)
    } else {
        t.mul(&Mat::diag(&diag)).mul(&t_inv)
    };
    let n = c.mat().sub(&s);
    let wrap = |m: Mat| {
        SkewMap::new(c.space().clone(), m).map_err(|_| {
            Error::InternalInvariant("semisimple or nilpotent part is not skew".into())
        })
    };
    Ok((wrap(s)?, wrap(n)?))
}

pub fn invertible_triple(c: &SkewMap) -> Result<InvertibleTriple> {
    let dim = c.dim();
    if dim == 0 {
        return Ok(InvertibleTriple::default());
    }
    if det(c.mat()).is_zero() {
        return Err(Error::NotInvertible);
    }
    let (spaces, _) = eigen_decomposition(c.mat())?;
    let mut entries = BTreeMap::new();
    for (lambda, basis) in spaces {
        let k = basis.len();
        let shifted = c.mat().sub(&Mat::scalar(dim, &lambda));
        // Ranks of (c - λ)^j on V_λ: dim of its image of V_λ.
        let mut ranks = vec![k];
        let mut cur = basis.clone();
        while *ranks.last().expect("nonempty") > 0 {
            let image: Vec<Vector> = cur.iter().map(|v| shifted.mul_vec(v)).collect();
            cur = echelon_basis(dim, &image);
            let r = cur.len();
            if r == *ranks.last().expect("nonempty") {
                return Err(Error::InternalInvariant(format!(
                    "c - {lambda} is not nilpotent on its generalized eigenspace"
                )));
            }
            ranks.push(r);
        }
        entries.insert(lambda, (k, Partition::from_ranks(&ranks)));
    }
    InvertibleTriple::new(entries)
        .map_err(|e| Error::InternalInvariant(format!("invertible triple: {e}")))
}

pub fn orbit_invariant(c: &SkewMap) -> Result<OrbitInvariant> {
    let f = fitting(c)?;
    Ok(OrbitInvariant {
        nilpotent: nilpotent_partition(&f.nil_part, true)?,
        invertible: invertible_triple(&f.inv_part)?,
    })
}

/// `z` with `t = u·w·z^e` for a unit `u` and `e`-th-power-free `w`, from
/// the factorizations of the numerator and denominator of `t`.
fn power_part(t: &GaussScalar, e: u32) -> Result<GaussScalar> {
    let d = t.denom_lcm();
    let dd = GaussScalar::from_gauss_int(&GaussInt::new(d.clone(), 0));
    let num = t * &dd;
    let a = GaussInt::new(num.re().to_integer(), num.im().to_integer());
    let root = |z: &GaussInt| -> Result<GaussScalar> {
        let mut r = GaussInt::one();
        for (p, m) in gauss_factor(z)? {
            for _ in 0..m / e {
                r = r.mul(&p);
            }
        }
        Ok(GaussScalar::from_gauss_int(&r))
    };
    Ok(&root(&a)? / &root(&GaussInt::new(d, 0))?)
}

/// A nonzero multiple `s·c` whose eigenvalues have small height: with `k`
/// the least index where `tr(c^{2k}) ≠ 0`, `s` strips the largest
/// `2k`-th power from that trace. Nilpotent maps are returned unchanged, as
/// is `c` itself when the trace cannot be factored within the bound.
///
/// `s·c` has the same orbit invariant as `c` up to [`projective_equal`].
pub fn projective_normalize(c: &SkewMap) -> SkewMap {
    let sq = c.mat().mul(c.mat());
    let mut pw = sq.clone();
    for k in 1..=c.dim() / 2 {
        let t = pw.trace();
        if !t.is_zero() {
            return match power_part(&t, 2 * k as u32) {
                Ok(z) => c.scale(&z.inv().expect("nonzero")),
                Err(_) => c.clone(),
            };
        }
        pw = pw.mul(&sq);
    }
    c.clone()
}

/// Equality of orbits of lines: equal nilpotent partitions and triples
/// equal up to a common nonzero scalar.
pub fn projective_equal(a: &OrbitInvariant, b: &OrbitInvariant) -> bool {
    if a.nilpotent != b.nilpotent {
        return false;
    }
    let (ta, tb) = (&a.invertible, &b.invertible);
    if ta.is_empty() || tb.is_empty() {
        return ta.is_empty() && tb.is_empty();
    }
    let lambda0 = ta.spectrum().next().expect("nonempty");
    let inv0 = lambda0.inv().expect("nonzero eigenvalue");
    tb.spectrum().any(|l| &ta.scale(&(l * &inv0)) == tb)
}

/// `diag(J_p(λ), −J_p(λ)ᵀ)` on the canonical `2p`-dimensional space.
pub fn paired_jordan_map(p: usize, lambda: &GaussScalar) -> SkewMap {
    let mut m = Mat::zeros(2 * p, 2 * p);
    for k in 0..p {
        m[(k, k)] = lambda.clone();
        m[(p + k, p + k)] = -lambda.clone();
        if k + 1 < p {
            m[(k, k + 1)] = GaussScalar::one();
            m[(p + k + 1, p + k)] = GaussScalar::from_int(-1);
        }
    }
    SkewMap::new(QuadSpace::canonical(2 * p), m).expect("paired Jordan blocks are skew")
}

/// A skew map realizing a given invertible triple: one paired Jordan
/// block per part, taking one eigenvalue from each pair `±λ`.
pub fn witness_for_triple(t: &InvertibleTriple) -> SkewMap {
    let mut blocks = Vec::new();
    for (lambda, (_, d)) in t.entries() {
        let neg = -lambda.clone();
        if &neg < lambda {
            continue;
        }
        for &s in d.parts() {
            blocks.push(paired_jordan_map(s, lambda));
        }
    }
    SkewMap::direct_sum(&blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> GaussScalar {
        t.parse().unwrap()
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn pprime_small() {
        assert_eq!(enumerate_pprime(2), vec![part(&[1, 1])]);
        assert_eq!(enumerate_pprime(3), vec![part(&[1, 1, 1]), part(&[3])]);
        assert_eq!(
            enumerate_pprime(4),
            vec![part(&[1, 1, 1, 1]), part(&[2, 2]), part(&[3, 1])]
        );
    }

    #[test]
    fn partitions_from_ranks() {
        assert_eq!(Partition::from_ranks(&[3]), part(&[1, 1, 1]));
        assert_eq!(Partition::from_ranks(&[4, 2, 0]), part(&[2, 2]));
        assert_eq!(Partition::from_ranks(&[3, 2, 1, 0]), part(&[3]));
    }

    #[test]
    fn zero_map_partition() {
        let c = SkewMap::new(QuadSpace::identity(3), Mat::zeros(3, 3)).unwrap();
        assert_eq!(nilpotent_partition(&c, true).unwrap(), part(&[1, 1, 1]));
    }

    #[test]
    fn not_nilpotent() {
        let c = paired_jordan_map(1, &s("1"));
        assert!(matches!(
            nilpotent_partition(&c, true),
            Err(Error::NotNilpotent)
        ));
        assert_eq!(nilpotent_partition(&c, false).unwrap(), Partition::empty());
    }

    #[test]
    fn triple_of_scaled_block() {
        let c = paired_jordan_map(2, &s("3"));
        let t = invertible_triple(&c).unwrap();
        assert_eq!(t.mult(&s("3")), 2);
        assert_eq!(t.jordan(&s("-3")), Some(&part(&[2])));
        let (ss, nn) = sn_split(&c).unwrap();
        assert_eq!(ss.mat().mul(nn.mat()), nn.mat().mul(ss.mat()));
        assert_eq!(crate::linalg::rank(nn.mat()), 2);
    }

    #[test]
    fn diagonal_triple() {
        let m = Mat::diag(&[s("1"), s("2"), s("-1"), s("-2")]);
        let c = SkewMap::new(QuadSpace::canonical(4), m).unwrap();
        let t = invertible_triple(&c).unwrap();
        assert_eq!(t.spectrum().count(), 4);
        for l in ["1", "2", "-1", "-2"] {
            assert_eq!(t.mult(&s(l)), 1);
            assert_eq!(t.jordan(&s(l)), Some(&part(&[1])));
        }
    }

    #[test]
    fn projective_scaling() {
        let c = paired_jordan_map(2, &s("1+2i"));
        let a = orbit_invariant(&c).unwrap();
        let b = orbit_invariant(&c.scale(&s("7"))).unwrap();
        assert_ne!(a, b);
        assert!(projective_equal(&a, &b));
    }

    #[test]
    fn invariant_json_shape() {
        let inv = orbit_invariant(&paired_jordan_map(1, &s("1"))).unwrap();
        let j = serde_json::to_string(&inv).unwrap();
        assert_eq!(
            j,
            r#"{"nilpotent":[],"invertible":[{"lambda":"-1","mult":1,"jordan":[1]},{"lambda":"1","mult":1,"jordan":[1]}]}"#
        );
        let back: OrbitInvariant = serde_json::from_str(&j).unwrap();
        assert_eq!(back, inv);
    }
}
