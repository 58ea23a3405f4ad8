use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::gaussint::{divisors, factor_bound, gauss_factor_with_bound, GaussInt};
use super::GaussScalar;
use crate::error::{Error, Result};

/// Univariate polynomial over Q(i), coefficients lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<GaussScalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussScalar>) -> Self {
        while coeffs.last().is_some_and(GaussScalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: GaussScalar) -> Self {
        Poly::new(vec![c])
    }

    /// `x - root`.
    pub fn linear(root: &GaussScalar) -> Self {
        Poly::new(vec![-root.clone(), GaussScalar::one()])
    }

    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a GaussScalar>) -> Self {
        roots
            .into_iter()
            .fold(Poly::constant(GaussScalar::one()), |acc, r| {
                acc.mul(&Poly::linear(r))
            })
    }

    pub fn coeffs(&self) -> &[GaussScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussScalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &GaussScalar) -> GaussScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussScalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = GaussScalar::zero();
        Poly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + o.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn scale(&self, c: &GaussScalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&GaussScalar::from_int(-1)))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussScalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = d.leading().expect("division by the zero polynomial");
        let dl_inv = dl.inv().expect("nonzero leading coefficient");
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![GaussScalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &dl_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussScalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / (x - root)` if `root` is a root.
    fn deflate(&self, root: &GaussScalar) -> Option<Poly> {
        let (q, r) = self.div_rem(&Poly::linear(root));
        r.is_zero().then_some(q)
    }

    /// Scales by the lcm of all coefficient denominators, giving Z[i]
    /// coefficients.
    fn integral_coeffs(&self) -> Vec<GaussInt> {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, &c.denom_lcm())
        });
        let lr = BigRational::from_integer(l);
        self.coeffs
            .iter()
            .map(|c| {
                let re = c.re() * &lr;
                let im = c.im() * &lr;
                GaussInt::new(re.to_integer(), im.to_integer())
            })
            .collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All roots of `p` in Q(i) with multiplicity, sorted, using the
/// process-wide factorization bound.
pub fn poly_roots_gaussian(p: &Poly) -> Result<Vec<GaussScalar>> {
    poly_roots_gaussian_with_bound(p, factor_bound())
}

/// Rational-root search over Z[i]: every root `a/b` of a polynomial with
/// Z[i] coefficients has `a | c₀` and `b | c_lead`. Candidates are drawn
/// from the square-free part to keep the constants small; each confirmed
/// root is then deflated from the original polynomial as often as it
/// divides. Fails with [`Error::SplitFailure`] if any nonlinear factor
/// remains.
pub fn poly_roots_gaussian_with_bound(p: &Poly, bound: u64) -> Result<Vec<GaussScalar>> {
    if p.is_zero() {
        return Err(Error::domain("the zero polynomial has no finite root set"));
    }
    let mut rest = p.monic();
    let mut roots = Vec::new();

    let zero = GaussScalar::zero();
    while rest.coeffs.first().is_some_and(GaussScalar::is_zero) {
        rest = Poly::new(rest.coeffs[1..].to_vec());
        roots.push(zero.clone());
    }
    if rest.degree() == Some(0) {
        return Ok(roots);
    }

    let squarefree = rest.div_rem(&rest.gcd(&rest.derivative())).0.monic();
    let ints = squarefree.integral_coeffs();
    let c0 = &ints[0];
    let cn = ints.last().expect("nonzero polynomial");
    let num_divs = divisors(&gauss_factor_with_bound(c0, bound)?);
    let den_divs = divisors(&gauss_factor_with_bound(cn, bound)?);

    let mut candidates = BTreeSet::new();
    for b in &den_divs {
        let b = GaussScalar::new(
            BigRational::from_integer(b.re.clone()),
            BigRational::from_integer(b.im.clone()),
        );
        for a in &num_divs {
            for u in 0..4 {
                let a = a.times_unit(u);
                let a = GaussScalar::new(
                    BigRational::from_integer(a.re),
                    BigRational::from_integer(a.im),
                );
                candidates.insert(&a / &b);
            }
        }
    }

    let mut sf = squarefree;
    for c in candidates {
        if sf.degree() == Some(0) {
            break;
        }
        if let Some(q) = sf.deflate(&c) {
            sf = q;
            while let Some(q) = rest.deflate(&c) {
                rest = q;
                roots.push(c.clone());
            }
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::SplitFailure {
            residual: rest.monic().to_string(),
        });
    }
    roots.sort();
    Ok(roots)
}
