// Recursive-descent reader for the scalar grammar:
//
//   RAT   := "-"? digits ("/" digits)?
//   GAUSS := RAT | RAT ("+"|"-") RAT "i" | "-"? RAT "i" | ("+"|"-")? "i"
//
// `RAT ("+"|"-") "i"` (e.g. `1+i`) is accepted as well; the printer never
// emits it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::GaussScalar;
use crate::error::{Error, Result};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(self.pos, "expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses"))
    }

    /// Unsigned rational `digits ("/" digits)?`.
    fn unsigned_rat(&mut self) -> Result<BigRational> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(Error::parse(at, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.bytes.len()
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(Error::parse(self.pos, "unexpected trailing input"))
        }
    }
}

pub(super) fn parse(text: &str) -> Result<GaussScalar> {
    let mut c = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    if c.at_end() {
        return Err(Error::parse(0, "empty scalar"));
    }
    let zero = BigRational::zero;
    let one = || BigRational::from_integer(1.into());

    // ("+"|"-")? "i"
    let leading_plus = c.eat(b'+');
    let negative = !leading_plus && c.eat(b'-');
    if c.eat(b'i') {
        c.expect_end()?;
        let im = if negative { -one() } else { one() };
        return Ok(GaussScalar::new(zero(), im));
    }
    if leading_plus {
        return Err(Error::parse(1, "expected 'i' after leading '+'"));
    }

    let mut first = c.unsigned_rat()?;
    if negative {
        first = -first;
    }
    if c.at_end() {
        return Ok(GaussScalar::new(first, zero()));
    }
    if c.eat(b'i') {
        c.expect_end()?;
        return Ok(GaussScalar::new(zero(), first));
    }
    let minus = match c.peek() {
        Some(b'+') => false,
        Some(b'-') => true,
        _ => return Err(Error::parse(c.pos, "expected '+', '-', 'i' or end")),
    };
    c.pos += 1;
    let mut im = if c.peek() == Some(b'i') {
        one()
    } else {
        c.unsigned_rat()?
    };
    if !c.eat(b'i') {
        return Err(Error::parse(c.pos, "expected 'i'"));
    }
    c.expect_end()?;
    if minus {
        im = -im;
    }
    Ok(GaussScalar::new(first, im))
}
