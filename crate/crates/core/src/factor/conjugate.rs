use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{factor_over_integers, FactorClass};
use crate::error::{Error, Result};
use crate::poly::DensePoly;

fn is_01(f: &DensePoly) -> bool {
    f.coeffs().iter().all(|c| c.is_zero() || c.is_one())
}

/// `g = w₁·w̃₂` for a 0,1-polynomial `f = w₁w₂` with at least two
/// non-reciprocal irreducible factors (counted with multiplicity).
///
/// `w₁` is the product of `p^λ` over the non-reciprocal factors `p` whose
/// reciprocal `p̃` also divides `f` (one representative per pair), or a single
/// lone non-reciprocal factor when there are no such pairs. The result is a
/// 0,1-polynomial with as many terms as `f`, distinct from `f` and `f̃`, with
/// `g·g̃ = f·f̃`; all four properties are checked before returning.
pub fn construct_conjugate_product(f: &DensePoly) -> Result<DensePoly> {
    if f.coeff(0) != BigInt::one() || !is_01(f) {
        return Err(Error::Domain(format!(
            "{f} is not a 0,1-polynomial with constant term 1"
        )));
    }
    let report = factor_over_integers(f)?;
    let nonrec = report.nonreciprocal_count();
    if nonrec < 2 {
        return Err(Error::NotTwoNonReciprocal {
            nonreciprocal: nonrec,
            reciprocal: report.reciprocal_count(),
        });
    }
    let nr: Vec<_> = report
        .factors
        .iter()
        .filter(|w| w.class == FactorClass::NonReciprocal)
        .collect();
    let mut w1 = DensePoly::one();
    let mut paired = false;
    for w in &nr {
        let r = w.poly.reciprocal()?.primitive_part();
        // factors are sorted canonically, so the earlier member of a pair represents it
        let is_first = (w.poly.deg(), w.poly.coeffs()) < (r.deg(), r.coeffs());
        if is_first && nr.iter().any(|o| o.poly == r) {
            w1 = &w1 * &w.poly.pow(w.multiplicity);
            paired = true;
        }
    }
    if !paired {
        w1 = nr[0].poly.clone();
    }
    let w2 = f.exact_div(&w1)?;
    let g = &w1 * &w2.reciprocal()?;

    let ft = f.reciprocal()?;
    let checks = [
        (is_01(&g), "g is a 0,1-polynomial"),
        (g.term_count() == f.term_count(), "term count preserved"),
        (g != *f && g != ft, "g differs from f and its reciprocal"),
        (&g * &g.reciprocal()? == f * &ft, "g·g̃ = f·f̃"),
    ];
    for (ok, what) in checks {
        if !ok {
            return Err(Error::Internal(format!("conjugate product for {f}: {what} fails")));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::SupportSet;

    #[test]
    fn rejects_too_few_nonreciprocal_factors() {
        let e = construct_conjugate_product(&DensePoly::from_i64(&[1, 0, 0, 0, 1, 1])).unwrap_err();
        assert_eq!(e, Error::NotTwoNonReciprocal { nonreciprocal: 1, reciprocal: 1 });
        let e = construct_conjugate_product(&DensePoly::from_i64(&[1, 1, 1])).unwrap_err();
        assert_eq!(e, Error::NotTwoNonReciprocal { nonreciprocal: 0, reciprocal: 1 });
    }

    #[test]
    fn first_qualifying_polynomial_up_to_degree_12() {
        let mut found = None;
        'outer: for n in 1..=12u64 {
            for mask in 0u64..(1 << (n - 1)) {
                let mut e: Vec<u64> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                e.push(n);
                let f = SupportSet::from_nonzero(&e).unwrap().to_poly();
                let r = factor_over_integers(&f).unwrap();
                if r.nonreciprocal_count() >= 2 {
                    found = Some(f);
                    break 'outer;
                }
            }
        }
        let f = found.expect("some 0,1-polynomial of degree ≤ 12 qualifies");
        let g = construct_conjugate_product(&f).unwrap();
        assert!(is_01(&g));
        assert_eq!(g.term_count(), f.term_count());
        assert!(g != f && g != f.reciprocal().unwrap());
        assert_eq!(&g * &g.reciprocal().unwrap(), &f * &f.reciprocal().unwrap());
    }
}
