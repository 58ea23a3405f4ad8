use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default bound on the norm of a Gaussian integer handed to
/// [`gauss_factor`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000_000_000;

/// Process-wide factorization bound: `QUADLIE_FACTOR_BOUND` if set to a
/// positive integer, otherwise [`DEFAULT_FACTOR_BOUND`].
pub fn factor_bound() -> u64 {
    static BOUND: OnceLock<u64> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var("QUADLIE_FACTOR_BOUND")
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&b| b > 0)
            .unwrap_or(DEFAULT_FACTOR_BOUND)
    })
}

/// A Gaussian integer `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussInt::new(self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    /// `self / d` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let p = self.mul(&d.conj());
        let (qr, rr) = p.re.div_rem(&n);
        let (qi, ri) = p.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then(|| GaussInt::new(qr, qi))
    }

    /// Multiplication by `i^k`.
    pub fn times_unit(&self, k: u8) -> GaussInt {
        let mut z = self.clone();
        for _ in 0..(k % 4) {
            z = GaussInt::new(-z.im, z.re);
        }
        z
    }

    /// The associate lying in the first quadrant (`re > 0, im ≥ 0`).
    pub fn normalized(&self) -> GaussInt {
        if self.is_zero() {
            return self.clone();
        }
        (0..4)
            .map(|k| self.times_unit(k))
            .find(|z| z.re.is_positive() && !z.im.is_negative())
            .expect("one associate lies in the first quadrant")
    }

    /// Greatest common divisor by the Euclidean algorithm, normalized.
    pub fn gcd(&self, o: &GaussInt) -> GaussInt {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem_nearest(&b);
            a = b;
            b = r;
        }
        a.normalized()
    }

    fn rem_nearest(&self, d: &GaussInt) -> GaussInt {
        let n = d.norm();
        let p = self.mul(&d.conj());
        let round = |x: &BigInt| -> BigInt {
            // nearest integer to x / n
            let two = BigInt::from(2);
            (x * &two + &n).div_floor(&(&n * &two))
        };
        let q = GaussInt::new(round(&p.re), round(&p.im));
        let qd = q.mul(d);
        GaussInt::new(&self.re - &qd.re, &self.im - &qd.im)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn mod_pow(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// The first-quadrant Gaussian prime above a rational prime `p ≡ 1 (mod 4)`.
fn split_prime(p: u64) -> GaussInt {
    let pm = p as u128;
    let t = (2..pm)
        .map(|c| mod_pow(c, (pm - 1) / 4, pm))
        .find(|t| t * t % pm == pm - 1)
        .expect("p ≡ 1 mod 4 has a square root of -1");
    GaussInt::new(p, 0).gcd(&GaussInt::new(t as u64, 1))
}

/// Factors `z` into first-quadrant Gaussian primes with multiplicities,
/// using the process-wide [`factor_bound`].
pub fn gauss_factor(z: &GaussInt) -> Result<Vec<(GaussInt, u32)>> {
    gauss_factor_with_bound(z, factor_bound())
}

/// Trial division over rational primes dividing the norm. Primes are
/// returned sorted by (norm, re, im); the product of the factors equals `z`
/// up to a unit.
pub fn gauss_factor_with_bound(z: &GaussInt, bound: u64) -> Result<Vec<(GaussInt, u32)>> {
    if z.is_zero() {
        return Err(Error::domain("cannot factor zero"));
    }
    let norm = z.norm();
    let n = match norm.to_u64() {
        Some(n) if n <= bound => n,
        _ => {
            return Err(Error::FactorBoundExceeded {
                norm: norm.to_string(),
                bound,
            })
        }
    };
    let mut rest = z.clone();
    let mut remaining = n;
    let mut out: Vec<(GaussInt, u32)> = Vec::new();

    let mut take = |rest: &mut GaussInt, remaining: &mut u64, pi: GaussInt| {
        let pn = pi.norm().to_u64().expect("small prime");
        let mut k = 0;
        while let Some(q) = rest.div_exact(&pi) {
            *rest = q;
            *remaining /= pn;
            k += 1;
        }
        if k > 0 {
            out.push((pi, k));
        }
    };

    let mut p = 2u64;
    while remaining > 1 {
        if p.saturating_mul(p) > remaining {
            // `remaining` is now a rational prime (norm of a prime).
            p = remaining;
        }
        if remaining % p == 0 {
            if p == 2 {
                take(&mut rest, &mut remaining, GaussInt::new(1, 1));
            } else if p % 4 == 3 {
                take(&mut rest, &mut remaining, GaussInt::new(p, 0));
            } else {
                let pi = split_prime(p);
                let pi_bar = pi.conj().normalized();
                take(&mut rest, &mut remaining, pi);
                take(&mut rest, &mut remaining, pi_bar);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    debug_assert!(rest.norm().is_one());
    out.sort_by(|(a, _), (b, _)| {
        a.norm()
            .cmp(&b.norm())
            .then_with(|| a.re.cmp(&b.re))
            .then_with(|| a.im.cmp(&b.im))
    });
    Ok(out)
}

/// All divisors of `z` up to units, from its factorization.
pub(crate) fn divisors(factors: &[(GaussInt, u32)]) -> Vec<GaussInt> {
    let mut divs = vec![GaussInt::one()];
    for (pi, k) in factors {
        let mut next = Vec::with_capacity(divs.len() * (*k as usize + 1));
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*k {
                cur = cur.mul(pi);
                next.push(cur.clone());
            }
        }
        divs = next;
    }
    divs
}
