//! Text grammar for univariate polynomials.
//!
//! ```text
//! expr   := ['-'|'+'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer | 'x' | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies, so `2x(x+1)^2` is accepted. A bare list such as
//! `0,3,7` (optionally bracketed) is read as a support set instead.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::DensePoly;
use crate::error::{Error, Result};

/// Returns `Some` when `s` looks like an exponent list rather than a polynomial.
pub(crate) fn parse_support_list(s: &str) -> Option<Result<Vec<u64>>> {
    let t = s.trim();
    let bracketed = (t.starts_with('[') && t.ends_with(']')) || (t.starts_with('{') && t.ends_with('}'));
    let inner = if bracketed { &t[1..t.len() - 1] } else { t };
    let listy = inner
        .chars()
        .all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace());
    if !listy || !(bracketed || inner.contains(',')) {
        return None;
    }
    Some(
        inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad exponent {p:?}: {e}")))
            })
            .collect(),
    )
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn expr(&mut self) -> Result<DensePoly> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate = true;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DensePoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(c) if c.is_ascii_digit() || c == b'x' || c == b'(' => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<DensePoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DensePoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(DensePoly::monomial(BigInt::one(), 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(DensePoly::constant(self.integer()?)),
            _ => Err(self.err("expected integer, 'x' or '('")),
        }
    }
}

impl FromStr for DensePoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(list) = parse_support_list(s) {
            let exps = list?;
            let max = exps.iter().copied().max().unwrap_or(0) as usize;
            let mut coeffs = vec![BigInt::default(); max + 1];
            for e in exps {
                coeffs[e as usize] = BigInt::one();
            }
            return Ok(DensePoly::from_coeffs(coeffs));
        }
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> DensePoly {
        DensePoly::from_i64(c)
    }

    #[test]
    fn sums_and_powers() {
        assert_eq!("1 + x^3 + x^7".parse::<DensePoly>().unwrap(), p(&[1, 0, 0, 1, 0, 0, 0, 1]));
        assert_eq!("2x^3 + 3x - 1".parse::<DensePoly>().unwrap(), p(&[-1, 3, 0, 2]));
        assert_eq!("-x".parse::<DensePoly>().unwrap(), p(&[0, -1]));
        assert_eq!("3*x^2".parse::<DensePoly>().unwrap(), p(&[0, 0, 3]));
    }

    #[test]
    fn products_and_parentheses() {
        let f: DensePoly = "2x(x+1)^2(3x^2-3x-1)(-2x^2+3x-2)".parse().unwrap();
        let expect = p(&[0, 2])
            * p(&[1, 2, 1])
            * p(&[-1, -3, 3])
            * p(&[-2, 3, -2]);
        assert_eq!(f, expect);
    }

    #[test]
    fn support_list_is_a_01_polynomial() {
        assert_eq!("0,3,7".parse::<DensePoly>().unwrap(), "1 + x^3 + x^7".parse().unwrap());
        assert_eq!("[0]".parse::<DensePoly>().unwrap(), DensePoly::one());
        assert_eq!("7".parse::<DensePoly>().unwrap(), p(&[7]));
    }

    #[test]
    fn errors() {
        assert!("1 +".parse::<DensePoly>().is_err());
        assert!("x^".parse::<DensePoly>().is_err());
        assert!("(x+1".parse::<DensePoly>().is_err());
        assert!("y".parse::<DensePoly>().is_err());
    }
}
