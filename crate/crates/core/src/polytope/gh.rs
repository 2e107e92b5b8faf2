use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::{newton_polytope, BivariateSupport, Point};
use crate::diophant::{decompose, BoxCertificate};
use crate::error::{Error, Result};
use crate::poly::SupportSet;

/// `G`, `H` with `G(x, x^d) = x^{t″} F(x)` and `H(x, x^d) = x^a F̃(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhPair {
    pub g: BivariateSupport,
    pub h: BivariateSupport,
    pub a: u64,
    pub d: u64,
    pub tdoubleprime: u64,
    /// `N(G) = −N(H) + offset`.
    pub offset: Point,
}

fn sparse(exps: impl IntoIterator<Item = u64>) -> BTreeMap<u64, BigInt> {
    exps.into_iter().map(|e| (e, BigInt::from(1))).collect()
}

/// Builds `G = y^{t″} + Σ y^{t_j+t″} z^{m_j}` and
/// `H = y^{t′} z^{m′} + Σ y^{t′−t_j} z^{m′−m_j}` from a certificate for `n`
/// and checks both substitution identities and the reflection of Newton polygons.
pub fn build_gh(n: &SupportSet, cert: &BoxCertificate) -> Result<GhPair> {
    let fail = |what: &str| Err(Error::Consistency(format!("{n:?}: {what}")));
    if cert.entries.len() != n.k() || cert.nk != n.degree() {
        return fail("certificate does not match the exponent set");
    }
    for (e, &a) in cert.entries.iter().zip(&n.exponents()[1..]) {
        if e.m as i128 * cert.d as i128 + e.t as i128 != a as i128 {
            return fail("n_j ≠ m_j d + t_j");
        }
    }
    let dec = decompose(n, cert.d)?;
    if (dec.mprime, dec.tprime, dec.tdoubleprime) != (cert.mprime, cert.tprime, cert.tdoubleprime) {
        return fail("m′, t′, t″ disagree with the entries");
    }
    let (mp, tp, tpp) = (cert.mprime, cert.tprime, cert.tdoubleprime);
    let one = || BigInt::from(1);
    let g = BivariateSupport::new(
        std::iter::once((one(), (tpp as u64, 0))).chain(
            cert.entries
                .iter()
                .map(|e| (one(), ((e.t + tpp) as u64, e.m as u64))),
        ),
    );
    let h = BivariateSupport::new(
        std::iter::once((one(), (tp as u64, mp as u64))).chain(
            cert.entries
                .iter()
                .map(|e| (one(), ((tp - e.t) as u64, (mp - e.m) as u64))),
        ),
    );
    let nk = n.degree();
    let a = (tp - cert.entries.last().map_or(0, |e| e.t)) as u64;
    let e = n.exponents();
    if g.substitute(cert.d) != sparse(e.iter().map(|&x| x + tpp as u64)) {
        return fail("G(x, x^d) ≠ x^{t″} F");
    }
    if h.substitute(cert.d) != sparse(e.iter().map(|&x| nk - x + a)) {
        return fail("H(x, x^d) ≠ x^a F̃");
    }
    let ng = newton_polytope(&g)?;
    let nh = newton_polytope(&h)?;
    let Some(offset) = ng.translation_to(&nh.reflect()) else {
        return fail("N(G) is not a translate of −N(H)");
    };
    Ok(GhPair {
        g,
        h,
        a,
        d: cert.d,
        tdoubleprime: tpp as u64,
        offset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diophant::{find_modulus_unchecked, BoxParameters};
    use num_rational::BigRational;

    #[test]
    fn example_pair() {
        let n = SupportSet::new(vec![0, 10, 19, 31]).unwrap();
        let params = BoxParameters::new(3, BigRational::new(1.into(), 2.into())).unwrap();
        let cert = find_modulus_unchecked(&n, &params).unwrap();
        assert_eq!(cert.d, 10);
        let p = build_gh(&n, &cert).unwrap();
        assert_eq!(
            p.g,
            BivariateSupport::from_i64(&[(1, (1, 0)), (1, (1, 1)), (1, (0, 2)), (1, (2, 3))])
        );
        assert_eq!(p.tdoubleprime, 1);
        let mut bad = cert.clone();
        bad.entries[0].t += 1;
        assert!(matches!(build_gh(&n, &bad), Err(Error::Consistency(_))));
    }
}
