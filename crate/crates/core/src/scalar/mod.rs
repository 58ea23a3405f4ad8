//! Exact arithmetic over the Gaussian rationals Q(i).
//!
//! [`GaussScalar`] is the only scalar type in the crate. [`GaussInt`] and
//! [`Poly`] exist to support exact eigenvalue extraction: characteristic
//! polynomials are split over Q(i) by a rational-root search in Z[i].

mod gaussint;
mod parse;
mod poly;

pub use gaussint::{factor_bound, gauss_factor, gauss_factor_with_bound, GaussInt};
pub use poly::{poly_roots_gaussian, poly_roots_gaussian_with_bound, Poly};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `re + im·i` of Q(i).
///
/// Both parts are arbitrary-precision rationals kept in lowest terms, so
/// derived equality is exact equality. The total order compares `re`
/// first and `im` second; it carries no algebraic meaning and is used only
/// to make every output deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussScalar {
    re: BigRational,
    im: BigRational,
}

impl GaussScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussScalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussScalar::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `num / den` as a real scalar. Panics on a zero denominator.
    pub fn from_frac(num: i64, den: i64) -> Self {
        GaussScalar::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussScalar::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn from_gauss_int(z: &GaussInt) -> Self {
        GaussScalar::new(
            BigRational::from_integer(z.re.clone()),
            BigRational::from_integer(z.im.clone()),
        )
    }

    /// `(re + im·i) / den` in lowest terms. Panics on a zero denominator.
    pub fn from_ratio(re: BigInt, im: BigInt, den: &BigInt) -> Self {
        GaussScalar::new(
            BigRational::new(re, den.clone()),
            BigRational::new(im, den.clone()),
        )
    }

    pub fn zero() -> Self {
        GaussScalar::default()
    }

    pub fn one() -> Self {
        GaussScalar::from_int(1)
    }

    pub fn i() -> Self {
        GaussScalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussScalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussScalar::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.re.denom(), self.im.denom())
    }

    /// Exact square root in Q(i), if one exists. The returned root is the
    /// smaller of the two in the crate's (re, im) order.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussScalar::zero());
        }
        // t² - self over Q(i); split or not.
        let p = Poly::new(vec![-self.clone(), GaussScalar::zero(), GaussScalar::one()]);
        match poly_roots_gaussian(&p) {
            Ok(roots) => roots.into_iter().min(),
            Err(_) => None,
        }
    }
}

/// A vector over Q(i) written as Gaussian integers over one common
/// denominator, so sums of products need a single reduction at the end.
pub(crate) struct ScaledInts {
    pub ints: Vec<GaussInt>,
    pub den: BigInt,
}

impl ScaledInts {
    pub fn new(v: &[GaussScalar]) -> Self {
        let den = v
            .iter()
            .filter(|x| !x.is_zero())
            .fold(BigInt::one(), |acc, x| {
                num_integer::Integer::lcm(&acc, &x.denom_lcm())
            });
        let part = |q: &BigRational| {
            if q.is_zero() {
                BigInt::zero()
            } else {
                q.numer() * (&den / q.denom())
            }
        };
        let ints = v
            .iter()
            .map(|x| GaussInt::new(part(&x.re), part(&x.im)))
            .collect();
        ScaledInts { ints, den }
    }

    pub fn dot(&self, o: &ScaledInts) -> GaussScalar {
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (a, b) in self.ints.iter().zip(&o.ints) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            if a.im.is_zero() && b.im.is_zero() {
                re += &a.re * &b.re;
                continue;
            }
            re += &a.re * &b.re - &a.im * &b.im;
            im += &a.re * &b.im + &a.im * &b.re;
        }
        GaussScalar::from_ratio(re, im, &(&self.den * &o.den))
    }
}

impl Ord for GaussScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Prints the canonical wire form. Output always reparses to an equal
/// value and stays inside the scalar grammar: a nonzero real part is
/// followed by an explicit imaginary coefficient (`1+1i`), while a purely
/// imaginary unit prints as `i` / `-i`.
impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write_rat(f, &self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    write_rat(f, &self.im)?;
                    write!(f, "i")
                }
            }
            (false, false) => {
                write_rat(f, &self.re)?;
                if self.im.is_negative() {
                    write!(f, "-")?;
                } else {
                    write!(f, "+")?;
                }
                write_rat(f, &self.im.abs())?;
                write!(f, "i")
            }
        }
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        gauss_parse(s)
    }
}

/// Parses the scalar wire grammar, e.g. `3/2-1/4i`, `-i`, `7`.
pub fn gauss_parse(text: &str) -> Result<GaussScalar> {
    parse::parse(text)
}

/// Canonical text form; inverse of [`gauss_parse`].
pub fn gauss_print(z: &GaussScalar) -> String {
    z.to_string()
}

impl serde::Serialize for GaussScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        gauss_parse(&s).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for GaussScalar {
    fn from(n: i64) -> Self {
        GaussScalar::from_int(n)
    }
}

impl From<BigRational> for GaussScalar {
    fn from(r: BigRational) -> Self {
        GaussScalar::new(r, BigRational::zero())
    }
}

impl<'a> Add<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn add(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn sub(self, o: &GaussScalar) -> GaussScalar {
        GaussScalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    fn mul(self, o: &GaussScalar) -> GaussScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussScalar::new(&self.re * &o.re, BigRational::zero());
        }
        GaussScalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a GaussScalar> for &'a GaussScalar {
    type Output = GaussScalar;
    /// Panics on division by zero, like the integer types.
    fn div(self, o: &GaussScalar) -> GaussScalar {
        let inv = o.inv().expect("division by zero in Q(i)");
        self * &inv
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: GaussScalar) -> GaussScalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: &GaussScalar) -> GaussScalar { (&self).$m(o) }
        }
        impl<'a> $tr<GaussScalar> for &'a GaussScalar {
            type Output = GaussScalar;
            fn $m(self, o: GaussScalar) -> GaussScalar { self.$m(&o) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, o: &GaussScalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, o: &GaussScalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussScalar> for GaussScalar {
    fn mul_assign(&mut self, o: &GaussScalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for GaussScalar {
    fn sum<I: Iterator<Item = GaussScalar>>(iter: I) -> Self {
        iter.fold(GaussScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> GaussScalar {
        t.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let z = s("3/2-1/4i");
        assert_eq!(z, GaussScalar::from_parts((3, 2), (-1, 4)));
        assert!(s("0").is_zero());
        assert_eq!(s("i"), GaussScalar::i());
        assert_eq!(s("-i"), -GaussScalar::i());
        assert_eq!(s("+i"), GaussScalar::i());
        assert_eq!(s("-2/6"), GaussScalar::from_frac(-1, 3));
        assert_eq!(s("5i"), GaussScalar::from_parts((0, 1), (5, 1)));
    }

    #[test]
    fn print_is_canonical() {
        assert_eq!(s("3/2-1/4i").to_string(), "3/2-1/4i");
        assert_eq!(s("1+1i").to_string(), "1+1i");
        assert_eq!(s("1+i").to_string(), "1+1i");
        assert_eq!(s("-i").to_string(), "-i");
        assert_eq!(s("4/2").to_string(), "2");
        assert_eq!(s("-0").to_string(), "0");
        assert_eq!(s("0-2i").to_string(), "-2i");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match gauss_parse("1/0") {
            Err(Error::Parse { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match gauss_parse("3/2x") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(gauss_parse("").is_err());
        assert!(gauss_parse("1+").is_err());
        assert!(gauss_parse("1 + 2i").is_err());
        assert!(gauss_parse("ii").is_err());
    }

    #[test]
    fn field_ops() {
        let a = s("1+2i");
        let b = s("3-1/2i");
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(a.inv().unwrap() * &a, GaussScalar::one());
        assert_eq!(s("i").pow(2), GaussScalar::from_int(-1));
        assert!(GaussScalar::zero().inv().is_none());
    }

    #[test]
    fn sqrt_in_gaussian_rationals() {
        assert_eq!(s("-1").sqrt().map(|r| r.pow(2)), Some(s("-1")));
        assert_eq!(s("2i").sqrt().map(|r| r.pow(2)), Some(s("2i")));
        assert_eq!(s("9/4").sqrt(), Some(s("-3/2")));
        assert!(s("2").sqrt().is_none());
    }
}
