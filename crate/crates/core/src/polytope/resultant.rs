use num_bigint::BigInt;

use super::BivariateSupport;
use crate::error::{Error, Result};
use crate::poly::DensePoly;

/// Largest Sylvester matrix dimension accepted by default.
pub const DEFAULT_RESULTANT_CAP: usize = 64;

/// Coefficients in `z`, each a polynomial in `y`, lowest first.
fn in_z(p: &BivariateSupport) -> Vec<DensePoly> {
    let mut out = vec![DensePoly::zero(); p.deg_z() as usize + 1];
    for (c, (y, z)) in p.terms() {
        let z = *z as usize;
        out[z] = &out[z] + &DensePoly::monomial(c.clone(), *y as usize);
    }
    out
}

/// `Res_z(G, H) ∈ Z[y]` as the determinant of the Sylvester matrix, by
/// fraction-free Bareiss elimination over `Z[y]`.
pub fn sylvester_resultant_z(
    g: &BivariateSupport,
    h: &BivariateSupport,
    cap: usize,
) -> Result<DensePoly> {
    let (p, q) = (g.deg_z() as usize, h.deg_z() as usize);
    if g.is_zero() || h.is_zero() || p == 0 || q == 0 {
        return Err(Error::Domain("both polynomials need positive degree in z".into()));
    }
    let dim = p + q;
    if dim > cap {
        return Err(Error::Resource {
            message: format!("Sylvester matrix of size {dim} exceeds the cap {cap}"),
            checkpoint: None,
        });
    }
    let (gc, hc) = (in_z(g), in_z(h));
    let mut m = vec![vec![DensePoly::zero(); dim]; dim];
    for r in 0..q {
        for (i, c) in gc.iter().rev().enumerate() {
            m[r][r + i] = c.clone();
        }
    }
    for r in 0..p {
        for (i, c) in hc.iter().rev().enumerate() {
            m[q + r][r + i] = c.clone();
        }
    }
    let mut negate = false;
    let mut prev = DensePoly::one();
    for k in 0..dim - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..dim).find(|&r| !m[r][k].is_zero()) else {
                return Ok(DensePoly::zero());
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).map_err(|_| {
                    Error::Internal("Bareiss step left a remainder".into())
                })?;
            }
            m[i][k] = DensePoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[dim - 1][dim - 1].clone();
    Ok(if negate { det.scale(&BigInt::from(-1)) } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(t: &[(i64, (u64, u64))]) -> BivariateSupport {
        BivariateSupport::from_i64(t)
    }

    #[test]
    fn small_resultants() {
        let r = sylvester_resultant_z(&b(&[(1, (0, 1)), (-1, (1, 0))]), &b(&[(1, (0, 1)), (1, (1, 0))]), 64)
            .unwrap();
        assert_eq!(r, DensePoly::from_i64(&[0, 2]));
        let r = sylvester_resultant_z(&b(&[(1, (0, 1)), (-1, (2, 0))]), &b(&[(1, (0, 1)), (-1, (0, 0))]), 64)
            .unwrap();
        assert!(r == DensePoly::from_i64(&[1, 0, -1]) || r == DensePoly::from_i64(&[-1, 0, 1]));
        assert!(matches!(
            sylvester_resultant_z(&b(&[(1, (1, 0))]), &b(&[(1, (0, 1))]), 64),
            Err(Error::Domain(_))
        ));
        let big = b(&[(1, (0, 40)), (1, (0, 0))]);
        assert!(matches!(sylvester_resultant_z(&big, &big, 64), Err(Error::Resource { .. })));
    }

    #[test]
    fn common_root_in_z_gives_zero() {
        // (z − y)(z + 1) and (z − y)(z + 2)
        let f = b(&[(1, (0, 2)), (1, (0, 1)), (-1, (1, 1)), (-1, (1, 0))]);
        let g = b(&[(1, (0, 2)), (2, (0, 1)), (-1, (1, 1)), (-2, (1, 0))]);
        assert!(sylvester_resultant_z(&f, &g, 64).unwrap().is_zero());
    }
}
