use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::DensePoly;
use crate::error::{Error, Result};

/// Exponent set of a 0,1-polynomial `1 + x^{n_1} + ... + x^{n_k}`.
///
/// Strictly increasing, always starts at 0. `k` is `len() - 1` and the
/// largest exponent is the degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct SupportSet(Vec<u64>);

impl SupportSet {
    pub fn new(exponents: Vec<u64>) -> Result<Self> {
        if exponents.first() != Some(&0) {
            return Err(Error::Domain("support set must start with 0".into()));
        }
        if exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "support set must be strictly increasing".into(),
            ));
        }
        Ok(SupportSet(exponents))
    }

    /// Sorts, dedups and adds the constant term.
    pub fn from_exponents<I: IntoIterator<Item = u64>>(it: I) -> Self {
        let mut v: Vec<u64> = it.into_iter().collect();
        v.push(0);
        v.sort_unstable();
        v.dedup();
        SupportSet(v)
    }

    /// `{0} ∪ {n_1 < ... < n_k}`.
    pub fn from_nonzero(rest: &[u64]) -> Result<Self> {
        let mut v = Vec::with_capacity(rest.len() + 1);
        v.push(0);
        v.extend_from_slice(rest);
        Self::new(v)
    }

    /// Support of a 0,1-polynomial with constant term 1.
    pub fn from_poly(f: &DensePoly) -> Result<Self> {
        if f.coeff(0) != BigInt::one() {
            return Err(Error::Domain("constant term must be 1".into()));
        }
        let mut v = Vec::new();
        for (i, c) in f.coeffs().iter().enumerate() {
            if c.is_one() {
                v.push(i as u64);
            } else if !c.is_zero() {
                return Err(Error::Domain(format!("{f} is not a 0,1-polynomial")));
            }
        }
        Ok(SupportSet(v))
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of non-constant terms.
    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn degree(&self) -> u64 {
        *self.0.last().unwrap()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn to_poly(&self) -> DensePoly {
        let mut coeffs = vec![BigInt::zero(); self.degree() as usize + 1];
        for &e in &self.0 {
            coeffs[e as usize] = BigInt::one();
        }
        DensePoly::from_coeffs(coeffs)
    }

    /// `{max - a : a ∈ A}`, the support of the reciprocal polynomial.
    pub fn mirror(&self) -> SupportSet {
        let d = self.degree();
        SupportSet(self.0.iter().rev().map(|&a| d - a).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.mirror()
    }
}

/// The 0,1-polynomial with exactly the exponents of `s`.
pub fn from_support(s: &SupportSet) -> DensePoly {
    s.to_poly()
}

impl TryFrom<Vec<u64>> for SupportSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        SupportSet::new(v)
    }
}

impl From<SupportSet> for Vec<u64> {
    fn from(s: SupportSet) -> Vec<u64> {
        s.0
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for SupportSet {
    type Err = Error;

    /// Accepts `0,3,7`, `[0,3,7]`, `{0,3,7}` or a 0,1-polynomial such as `1 + x^3 + x^7`.
    fn from_str(s: &str) -> Result<Self> {
        match super::parse::parse_support_list(s) {
            Some(v) => SupportSet::new(v?),
            None => SupportSet::from_poly(&s.parse::<DensePoly>()?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_support_examples() {
        let s = |v: &[u64]| SupportSet::new(v.to_vec()).unwrap();
        assert_eq!(from_support(&s(&[0])), DensePoly::one());
        assert_eq!(from_support(&s(&[0, 1, 3])), DensePoly::from_i64(&[1, 1, 0, 1]));
        assert_eq!(from_support(&s(&[0, 2, 4])), DensePoly::from_i64(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn rejects_invalid_sets() {
        assert!(SupportSet::new(vec![]).is_err());
        assert!(SupportSet::new(vec![1, 2]).is_err());
        assert!(SupportSet::new(vec![0, 2, 2]).is_err());
        assert!(SupportSet::new(vec![0, 3, 1]).is_err());
        assert!(serde_json::from_str::<SupportSet>("[0,5,3]").is_err());
    }

    #[test]
    fn text_forms_are_interchangeable() {
        let a: SupportSet = "0,3,7".parse().unwrap();
        let b: SupportSet = "1 + x^3 + x^7".parse().unwrap();
        let c: SupportSet = "[0, 3, 7]".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!("1 + 2x".parse::<SupportSet>().is_err());
        assert_eq!(serde_json::to_string(&a).unwrap(), "[0,3,7]");
    }

    #[test]
    fn mirror_reflects() {
        let a: SupportSet = "0,1,4".parse().unwrap();
        assert_eq!(a.mirror().exponents(), &[0, 3, 4]);
        assert!("0,2,4".parse::<SupportSet>().unwrap().is_symmetric());
    }
}
