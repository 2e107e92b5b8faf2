use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are never stored,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: BigInt, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += BigInt::one();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Largest `v` with `x^v | self`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> DensePoly {
        if self.is_zero() {
            return DensePoly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn scale(&self, c: &BigInt) -> DensePoly {
        if c.is_zero() {
            return DensePoly::zero();
        }
        DensePoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `c`; the caller guarantees exactness.
    pub fn div_scalar(&self, c: &BigInt) -> DensePoly {
        DensePoly {
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> DensePoly {
        if self.is_zero() {
            return DensePoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        DensePoly { coeffs }
    }

    pub fn derivative(&self) -> DensePoly {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> DensePoly {
        let mut result = DensePoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `x^deg f * f(1/x)`.
    pub fn reciprocal(&self) -> Result<DensePoly> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of the zero polynomial".into()));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Self::from_coeffs(coeffs))
    }

    /// True iff `f = ±f̃`.
    pub fn is_reciprocal(&self) -> Result<bool> {
        let r = self.reciprocal()?;
        Ok(r == *self || r == -self)
    }

    /// Pseudo-remainder: `lc(g)^(deg f - deg g + 1) f mod g`.
    pub fn pseudo_rem(&self, g: &DensePoly) -> Result<DensePoly> {
        let dg = g
            .degree()
            .ok_or_else(|| Error::Domain("pseudo-division by zero".into()))?;
        let lc = g.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut steps = match self.degree() {
            Some(df) if df >= dg => df - dg + 1,
            _ => return Ok(self.clone()),
        };
        while r.len() > dg && !r.is_empty() {
            let lead = r.last().unwrap().clone();
            let shift = r.len() - 1 - dg;
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, gc) in g.coeffs.iter().enumerate() {
                r[shift + i] -= &lead * gc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            steps -= 1;
        }
        if steps > 0 {
            let f = num_traits::pow(lc, steps);
            for c in r.iter_mut() {
                *c *= &f;
            }
        }
        Ok(Self::from_coeffs(r))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, g: &DensePoly) -> (DensePoly, DensePoly) {
        assert!(g.is_monic(), "div_rem_monic needs a monic divisor");
        let dg = g.deg();
        if self.degree().is_none_or(|d| d < dg) {
            return (DensePoly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dg];
        for shift in (0..q.len()).rev() {
            let lead = std::mem::take(&mut r[shift + dg]);
            if lead.is_zero() {
                continue;
            }
            for (i, gc) in g.coeffs[..dg].iter().enumerate() {
                r[shift + i] -= &lead * gc;
            }
            q[shift] = lead;
        }
        r.truncate(dg);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Exact quotient `self / g` in `Z[x]`.
    ///
    /// Fails with [`Error::NotDivisible`] unless `g` divides `self` with an
    /// integer quotient.
    pub fn exact_div(&self, g: &DensePoly) -> Result<DensePoly> {
        let dg = g
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        if self.is_zero() {
            return Ok(DensePoly::zero());
        }
        let df = self.deg();
        if df < dg {
            return Err(Error::NotDivisible(format!("{self} by {g}")));
        }
        let lc = g.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); df - dg + 1];
        for shift in (0..q.len()).rev() {
            let lead = std::mem::take(&mut r[shift + dg]);
            if lead.is_zero() {
                continue;
            }
            let (quo, rem) = lead.div_rem(lc);
            if !rem.is_zero() {
                return Err(Error::NotDivisible(format!("{self} by {g}")));
            }
            for (i, gc) in g.coeffs[..dg].iter().enumerate() {
                r[shift + i] -= &quo * gc;
            }
            q[shift] = quo;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible(format!("{self} by {g}")));
        }
        Ok(Self::from_coeffs(q))
    }

    /// True iff `g` divides `self` in `Z[x]`.
    pub fn divisible_by(&self, g: &DensePoly) -> bool {
        self.exact_div(g).is_ok()
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    ///
    /// `gcd(0, 0) = 0`; otherwise the result is primitive, so the integer
    /// content of the inputs is ignored.
    pub fn gcd(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.deg() >= other.deg() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        loop {
            let r = a.pseudo_rem(&b).expect("b is non-zero");
            if r.is_zero() {
                return b;
            }
            if r.deg() == 0 {
                return DensePoly::one();
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// Coefficients as `i64` when they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// Sum of squared coefficients.
    pub fn norm2_squared(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// `x -> -x`.
    pub fn negate_variable(&self) -> DensePoly {
        DensePoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Comma-separated coefficients in ascending exponent order.
    pub fn coeff_list(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], negate_b: bool) -> DensePoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(if negate_b { x - y } else { x + y });
    }
    DensePoly::from_coeffs(out)
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        DensePoly::from_coeffs(out)
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DensePoly {
            type Output = DensePoly;
            fn $m(self, rhs: DensePoly) -> DensePoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&DensePoly> for DensePoly {
            type Output = DensePoly;
            fn $m(self, rhs: &DensePoly) -> DensePoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        -&self
    }
}

impl fmt::Display for DensePoly {
    /// Ascending order, e.g. `1 - 3x + x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly({self})")
    }
}

/// JSON form of one integer: a number when it fits `i64`, a decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

fn json_int(c: &BigInt) -> JsonInt {
    match c.to_i64() {
        Some(v) => JsonInt::Small(v),
        None => JsonInt::Big(c.to_string()),
    }
}

/// `serialize_with` helper: the same integer encoding as polynomial coefficients.
pub fn serialize_bigint<S: Serializer>(c: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    json_int(c).serialize(s)
}

impl Serialize for DensePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let items: Vec<JsonInt> = self.coeffs.iter().map(json_int).collect();
        items.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<JsonInt>::deserialize(d)?;
        let coeffs = items
            .into_iter()
            .map(|it| match it {
                JsonInt::Small(v) => Ok(BigInt::from(v)),
                JsonInt::Big(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(DensePoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> DensePoly {
        DensePoly::from_i64(c)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
    }

    #[test]
    fn gcd_common_root_one() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 0, 0, 1])), p(&[-1, 1]));
    }

    #[test]
    fn gcd_ignores_content_and_sign() {
        let g = p(&[-6, 0, 6]).gcd(&p(&[4, -4]));
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(DensePoly::zero().gcd(&p(&[-2, -4])), p(&[1, 2]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[-1, 0, 0, 0, 1]).exact_div(&p(&[1, 0, 1])).unwrap(), p(&[-1, 0, 1]));
        assert!(matches!(
            p(&[1, 0, 1]).exact_div(&p(&[1, 1])),
            Err(Error::NotDivisible(_))
        ));
        // divisible over Q but the quotient is not integral
        assert!(p(&[1, 1]).exact_div(&p(&[2, 2])).is_err());
        assert!(matches!(p(&[1]).exact_div(&DensePoly::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p(&[1, 1, 0, 1]).reciprocal().unwrap(), p(&[1, 0, 1, 1]));
        assert_eq!(p(&[1, 0, 1]).reciprocal().unwrap(), p(&[1, 0, 1]));
        assert_eq!(p(&[-1, 3, 0, 2]).reciprocal().unwrap(), p(&[2, 0, 3, -1]));
        assert!(DensePoly::zero().reciprocal().is_err());
    }

    #[test]
    fn reciprocal_drops_degree_when_divisible_by_x() {
        let f = p(&[0, 1, 2]);
        assert_eq!(f.reciprocal().unwrap(), p(&[2, 1]));
    }

    #[test]
    fn is_reciprocal_examples() {
        assert!(p(&[1, 3, 1]).is_reciprocal().unwrap());
        assert!(!p(&[1, 1, 0, 1]).is_reciprocal().unwrap());
        assert!(p(&[-1, 1]).is_reciprocal().unwrap());
        assert!(DensePoly::zero().is_reciprocal().is_err());
    }

    #[test]
    fn content_and_primitive_part() {
        let f = p(&[-4, 6, -2]);
        assert_eq!(f.content(), BigInt::from(2));
        assert_eq!(f.primitive_part(), p(&[2, -3, 1]));
        assert_eq!(&f.primitive_part().scale(&BigInt::from(-2)), &f);
    }

    #[test]
    fn display_is_ascending() {
        assert_eq!(p(&[2, 3, 0, -1]).to_string(), "2 + 3x - x^3");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(DensePoly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip_with_big_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let f = DensePoly::from_coeffs(vec![BigInt::from(1), big]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, "[1,\"123456789012345678901234567890\"]");
        let back: DensePoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
