use crate::cyclotomic::is_cyclotomic_irreducible;
use crate::error::{Error, Result};
use crate::poly::DensePoly;
use crate::roots::{house_bounds, root_disks, squarefree_part};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest modulus among the complex roots of `f`, to within `tol`.
pub fn house(f: &DensePoly, tol: f64) -> Result<f64> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::Domain("house needs degree ≥ 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let g = squarefree_part(f);
    let (lo, hi) = house_bounds(&root_disks(&g)?);
    if hi - lo > tol {
        return Err(Error::Numeric(format!(
            "house enclosure [{lo}, {hi}] wider than {tol}"
        )));
    }
    Ok((lo + hi) / 2.0)
}

/// `house(w) ≥ 2^{1/(4 deg w)} - tol` for a monic irreducible non-cyclotomic `w`.
pub fn dimitrov_check(w: &DensePoly, tol: f64) -> Result<bool> {
    let n = w.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::Domain("dimitrov check needs degree ≥ 1".into()));
    }
    if !w.is_monic() {
        return Err(Error::Domain(format!("{w} is not monic")));
    }
    if *w == DensePoly::x() {
        return Err(Error::Domain("x has house 0".into()));
    }
    if let Some(m) = is_cyclotomic_irreducible(w)? {
        return Err(Error::Domain(format!("{w} is the cyclotomic polynomial Φ_{m}")));
    }
    let bound = 2f64.powf(1.0 / (4.0 * n as f64));
    Ok(house(w, tol)? >= bound - tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lehmer() -> DensePoly {
        DensePoly::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn house_examples() {
        let t = DEFAULT_TOL;
        assert!((house(&DensePoly::from_i64(&[-2, 1]), t).unwrap() - 2.0).abs() <= t);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((house(&DensePoly::from_i64(&[-1, -1, 1]), t).unwrap() - golden).abs() <= t);
        assert!((house(&lehmer(), t).unwrap() - 1.176_280_818_3).abs() <= 1e-9);
    }

    #[test]
    fn house_of_repeated_roots() {
        let f = DensePoly::from_i64(&[-1, -1, 1]).pow(3);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((house(&f, DEFAULT_TOL).unwrap() - golden).abs() <= DEFAULT_TOL);
    }

    #[test]
    fn dimitrov_examples() {
        let t = DEFAULT_TOL;
        assert!(dimitrov_check(&DensePoly::from_i64(&[-2, 1]), t).unwrap());
        assert!(dimitrov_check(&DensePoly::from_i64(&[-1, -1, 1]), t).unwrap());
        assert!(dimitrov_check(&lehmer(), t).unwrap());
        assert!(dimitrov_check(&DensePoly::from_i64(&[1, 1, 1]), t).is_err());
        assert!(dimitrov_check(&DensePoly::x(), t).is_err());
    }
}
