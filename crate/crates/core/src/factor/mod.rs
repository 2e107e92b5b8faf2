//! Factorization over `Z`, irreducibility, the non-reciprocal part, the
//! conjugate product construction and house bounds.

mod conjugate;
mod house;
mod modp;
mod zassenhaus;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::cyclotomic::is_cyclotomic_irreducible;
use crate::error::{Error, Result};
use crate::poly::DensePoly;

pub use conjugate::construct_conjugate_product;
pub use house::{dimitrov_check, house, DEFAULT_TOL};
pub use modp::{factor_mod_p, PolyModP};

/// Reciprocity class of an irreducible factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorClass {
    NonReciprocal,
    ReciprocalCyclotomic(u64),
    ReciprocalNonCyclotomic,
}

impl FactorClass {
    pub fn is_reciprocal(&self) -> bool {
        !matches!(self, FactorClass::NonReciprocal)
    }

    pub fn of(w: &DensePoly) -> Result<FactorClass> {
        if !w.is_reciprocal()? {
            return Ok(FactorClass::NonReciprocal);
        }
        if w.is_monic() {
            if let Some(m) = is_cyclotomic_irreducible(w)? {
                return Ok(FactorClass::ReciprocalCyclotomic(m));
            }
        }
        Ok(FactorClass::ReciprocalNonCyclotomic)
    }
}

/// One irreducible factor with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub poly: DensePoly,
    pub multiplicity: u32,
    pub class: FactorClass,
}

/// `input = unit · content · ∏ poly^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub unit: i8,
    #[serde(serialize_with = "crate::poly::serialize_bigint")]
    pub content: BigInt,
    pub factors: Vec<Factor>,
}

impl FactorizationReport {
    pub fn expand(&self) -> DensePoly {
        let mut acc = DensePoly::constant(&self.content * BigInt::from(self.unit));
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        acc
    }

    /// Irreducible factors counted with multiplicity.
    pub fn total_factors(&self) -> usize {
        self.factors.iter().map(|f| f.multiplicity as usize).sum()
    }

    /// Non-reciprocal irreducible factors counted with multiplicity.
    pub fn nonreciprocal_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| !f.class.is_reciprocal())
            .map(|f| f.multiplicity as usize)
            .sum()
    }

    pub fn reciprocal_count(&self) -> usize {
        self.total_factors() - self.nonreciprocal_count()
    }
}

fn canonical_order(a: &DensePoly, b: &DensePoly) -> std::cmp::Ordering {
    (a.deg(), a.coeffs()).cmp(&(b.deg(), b.coeffs()))
}

/// Complete factorization of a non-zero `f` over the integers.
pub fn factor_over_integers(f: &DensePoly) -> Result<FactorizationReport> {
    let lc = f
        .leading()
        .ok_or_else(|| Error::Domain("cannot factor the zero polynomial".into()))?;
    let unit: i8 = if lc.is_negative() { -1 } else { 1 };
    let content = f.content();
    let mut g = f.primitive_part();
    let mut raw: Vec<(DensePoly, u32)> = Vec::new();
    let v = f.valuation().unwrap_or(0);
    if v > 0 {
        raw.push((DensePoly::x(), v as u32));
        g = g.exact_div(&DensePoly::monomial(BigInt::one(), v))?;
    }
    for (part, mult) in zassenhaus::squarefree_decomposition(&g) {
        for w in zassenhaus::factor_squarefree(&part) {
            raw.push((w, mult));
        }
    }
    raw.sort_by(|a, b| canonical_order(&a.0, &b.0));
    let factors = raw
        .into_iter()
        .map(|(poly, multiplicity)| {
            Ok(Factor {
                class: FactorClass::of(&poly)?,
                poly,
                multiplicity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactorizationReport {
        unit,
        content,
        factors,
    })
}

/// Irreducibility over `Q` of a non-constant polynomial.
///
/// A degree-set sieve over several primes settles most inputs; the rest go
/// through the full factorization.
pub fn is_irreducible(f: &DensePoly) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::Domain("constant polynomial".into()));
    }
    let g = f.primitive_part();
    if g.deg() == 1 {
        return Ok(true);
    }
    if g.coeff(0) == BigInt::default() {
        return Ok(false);
    }
    let sq = zassenhaus::squarefree_decomposition(&g);
    if sq.len() != 1 || sq[0].1 != 1 {
        return Ok(false);
    }
    if zassenhaus::degree_sieve(&g).proves_irreducible() {
        return Ok(true);
    }
    Ok(zassenhaus::factor_squarefree(&g).len() == 1)
}

/// `f` with its content magnitude and all irreducible reciprocal factors
/// (positive leading coefficient, full multiplicity) removed. The sign is kept.
pub fn nonreciprocal_part(f: &DensePoly) -> Result<DensePoly> {
    let report = factor_over_integers(f)?;
    Ok(nonreciprocal_part_of(&report))
}

/// Same as [`nonreciprocal_part`] from an existing factorization.
pub fn nonreciprocal_part_of(report: &FactorizationReport) -> DensePoly {
    let mut acc = DensePoly::constant(BigInt::from(report.unit));
    for f in report.factors.iter().filter(|f| !f.class.is_reciprocal()) {
        acc = &acc * &f.poly.pow(f.multiplicity);
    }
    acc
}
