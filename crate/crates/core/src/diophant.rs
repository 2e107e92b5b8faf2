//! Dirichlet-box moduli: a common `d` such that every exponent is close to a
//! multiple of `d`, the parameter schedule `ε = 1/(⌊N^{1/(2k+1)}⌋ − 1)`, the
//! decomposition `n_j = m_j d + t_j` and the gap bounds built on it.
//!
//! All decisions are made in exact integer or rational arithmetic.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::SupportSet;
use crate::roots::{root_disks, squarefree_part};

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `n/d` in lowest terms; panics on `d = 0`.
pub fn rational(n: i64, d: i64) -> BigRational {
    rat(n, d)
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `⌊n^{1/e}⌋`.
pub fn iroot(n: u64, e: u32) -> u64 {
    BigUint::from(n).nth_root(e).to_u64().unwrap()
}

/// `ε`, `κ = ⌊1/ε⌋ + 1` and `V(k)` for a fixed number `k` of non-constant terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxParameters {
    pub k: usize,
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: BigRational,
    pub kappa: u64,
    #[serde(serialize_with = "ser_rational")]
    pub v: BigRational,
}

impl BoxParameters {
    pub fn new(k: usize, epsilon: BigRational) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("need k ≥ 1".into()));
        }
        if !epsilon.is_positive() || epsilon > rat(1, 2) {
            return Err(Error::Domain(format!("ε = {epsilon} is outside (0, 1/2]")));
        }
        let kappa_big: BigInt = epsilon.recip().floor().to_integer() + 1;
        let kappa = kappa_big
            .to_u64()
            .ok_or_else(|| Error::Domain("κ does not fit in 64 bits".into()))?;
        let kq = int(kappa_big);
        let first = kq.pow(2 * k as i32 - 2) / int(2) / (&epsilon - kq.recip());
        let second = kq.pow(k as i32 - 1) + &epsilon;
        let v = first.max(second);
        Ok(BoxParameters {
            k,
            epsilon,
            kappa,
            v,
        })
    }

    /// `V^{2k+1} < N^{2k}`, i.e. `V < N^{2k/(2k+1)}`.
    pub fn v_below_power(&self, n: u64) -> bool {
        let e = 2 * self.k as u32;
        let lhs = self.v.numer().pow(e + 1);
        let rhs = BigInt::from(n).pow(e) * self.v.denom().pow(e + 1);
        lhs < rhs
    }
}

/// The schedule `ε = 1/(⌊N^{1/(2k+1)}⌋ − 1)` for `k ≥ 2`; fails unless
/// `⌊N^{1/(2k+1)}⌋ ≥ 4` and `V < N^{2k/(2k+1)}`.
pub fn parameter_schedule(k: usize, n: u64) -> Result<BoxParameters> {
    if k < 2 {
        return Err(Error::Domain(format!("schedule needs k ≥ 2, got {k}")));
    }
    let r = iroot(n, 2 * k as u32 + 1);
    if r < 4 {
        return Err(Error::Schedule(format!(
            "⌊N^(1/{})⌋ = {r} < 4 for N = {n}",
            2 * k + 1
        )));
    }
    let p = BoxParameters::new(k, int(1) / int(r - 1))?;
    if p.kappa != r {
        return Err(Error::Internal(format!("κ = {} but ⌊N^(1/(2k+1))⌋ = {r}", p.kappa)));
    }
    if !p.v_below_power(n) {
        return Err(Error::Schedule(format!(
            "V = {} is not below N^(2k/(2k+1)) for k = {k}, N = {n}",
            p.v
        )));
    }
    Ok(p)
}

/// `κ · ‖t·a/b‖ < 1` in integers.
fn close_to_integer(t: u128, a: u64, b: u64, kappa: u64) -> bool {
    let r = (t * a as u128) % b as u128;
    let dist = r.min(b as u128 - r);
    kappa as u128 * dist < b as u128
}

/// Smallest `t ≥ 1` with `‖t·n_j/n_k‖ < 1/κ` for `1 ≤ j ≤ k−1`.
pub fn pigeonhole_t(n: &SupportSet, kappa: u64) -> u64 {
    let e = n.exponents();
    let nk = n.degree();
    if e.len() <= 2 {
        return 1;
    }
    let inner = &e[1..e.len() - 1];
    (1u64..)
        .find(|&t| inner.iter().all(|&a| close_to_integer(t as u128, a, nk, kappa)))
        .unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoxEntry {
    pub m: i64,
    pub t: i64,
    pub w: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub m: Vec<i64>,
    pub t: Vec<i64>,
    pub mprime: i64,
    pub tprime: i64,
    pub tdoubleprime: i64,
}

/// `n_j = m_j d + t_j` with `m_j` the nearest integer to `n_j/d` (halves round up).
pub fn decompose(n: &SupportSet, d: u64) -> Result<Decomposition> {
    if d == 0 {
        return Err(Error::Domain("d must be positive".into()));
    }
    let (mut m, mut t) = (Vec::new(), Vec::new());
    for &a in &n.exponents()[1..] {
        let q = Integer::div_floor(&(2 * a as i128 + d as i128), &(2 * d as i128)) as i64;
        m.push(q);
        t.push(a as i64 - q * d as i64);
    }
    Ok(Decomposition {
        mprime: m.iter().copied().max().unwrap_or(0),
        tprime: t.iter().copied().max().unwrap_or(0).max(0),
        tdoubleprime: -t.iter().copied().min().unwrap_or(0).min(0),
        m,
        t,
    })
}

/// Data witnessing that all exponents are within `εd` of multiples of `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxCertificate {
    pub nk: u64,
    pub d: u64,
    /// One entry per non-zero exponent `n_1, ..., n_k`.
    pub entries: Vec<BoxEntry>,
    pub t: u64,
    pub mprime: i64,
    pub tprime: i64,
    pub tdoubleprime: i64,
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: BigRational,
    pub kappa: u64,
}

impl BoxCertificate {
    /// Re-checks every invariant in exact arithmetic.
    pub fn validate(&self, n: &SupportSet) -> Result<()> {
        let fail = |what: &str| Err(Error::Consistency(format!("{n:?}: {what}")));
        let k = n.k();
        let eps = &self.epsilon;
        let kq = int(self.kappa);
        let nk = int(n.degree());
        let d = int(self.d);
        if self.entries.len() != k || self.nk != n.degree() {
            return fail("entry count");
        }
        for (e, &a) in self.entries.iter().zip(&n.exponents()[1..]) {
            if e.m as i128 * self.d as i128 + e.t as i128 != a as i128 {
                return fail("n_j ≠ m_j d + t_j");
            }
            if int(e.t.unsigned_abs()) >= eps * &d {
                return fail("|t_j| ≥ εd");
            }
            let r = int(a % self.d);
            if !(r < eps * &d || r > (int(1) - eps) * &d) {
                return fail("residue outside [0, εd) ∪ ((1−ε)d, d)");
            }
        }
        if k > 1 {
            let lo = &nk / (kq.pow(k as i32 - 1) + eps);
            let hi = &nk / (int(1) - eps);
            if !(d > lo && d < hi) {
                return fail("d outside the Dirichlet interval");
            }
            let bound = BigUint::from(self.kappa).pow(k as u32 - 1);
            if BigUint::from(self.t) > bound {
                return fail("t > κ^(k−1)");
            }
            if int(self.t).pow(2) > int(2) * &nk * (eps - kq.recip()) {
                return fail("t > √(2 n_k (ε − 1/κ))");
            }
        }
        let dec = decompose(n, self.d)?;
        if dec.mprime != self.mprime
            || dec.tprime != self.tprime
            || dec.tdoubleprime != self.tdoubleprime
            || dec.mprime != self.entries.last().map_or(0, |e| e.m)
        {
            return fail("aggregates");
        }
        Ok(())
    }
}

/// Box certificate for `n` under `params`; requires `n_k ≥ V`.
pub fn find_modulus(n: &SupportSet, params: &BoxParameters) -> Result<BoxCertificate> {
    if int(n.degree()) < params.v {
        return Err(Error::Hypothesis {
            nk: n.degree(),
            v: params.v.to_string(),
        });
    }
    find_modulus_unchecked(n, params)
}

/// The same construction without the `n_k ≥ V` gate. The result is still
/// validated, so inputs where the construction breaks down give a
/// consistency error instead of a bad certificate.
pub fn find_modulus_unchecked(n: &SupportSet, params: &BoxParameters) -> Result<BoxCertificate> {
    let k = n.k();
    if k == 0 {
        return Err(Error::Domain("need at least one non-zero exponent".into()));
    }
    if k != params.k {
        return Err(Error::Domain(format!("parameters are for k = {}, set has k = {k}", params.k)));
    }
    let nk = n.degree();
    let eps = &params.epsilon;
    let kinv = int(params.kappa).recip();
    let (t, d) = if k == 1 {
        (1, nk)
    } else {
        let t = pigeonhole_t(n, params.kappa);
        let tq = int(t);
        let lo = int(nk) * (&tq + &kinv) / (&tq * (&tq + eps));
        let hi = int(nk) * (&tq - &kinv) / (&tq * (&tq - eps));
        let d: BigInt = lo.floor().to_integer() + 1;
        if int(d.clone()) >= hi {
            return Err(Error::Consistency(format!(
                "{n:?}: no integer in ({lo}, {hi}) for t = {t}"
            )));
        }
        (t, d.to_u64().expect("d below n_k"))
    };
    let dec = decompose(n, d)?;
    let entries = n.exponents()[1..]
        .iter()
        .zip(dec.m.iter().zip(&dec.t))
        .map(|(&a, (&m, &tj))| {
            // w_j: nearest integer to t·n_j/n_k
            let w = ((2 * t as u128 * a as u128 + nk as u128) / (2 * nk as u128)) as i64;
            BoxEntry { m, t: tj, w }
        })
        .collect();
    let cert = BoxCertificate {
        nk,
        d,
        entries,
        t,
        mprime: dec.mprime,
        tprime: dec.tprime,
        tdoubleprime: dec.tdoubleprime,
        epsilon: eps.clone(),
        kappa: params.kappa,
    };
    cert.validate(n)?;
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`; positive when the check passes.
    pub slack: f64,
    pub passed: bool,
    /// True for inequalities that hold only once `N` is large.
    pub asymptotic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Every check that is not flagged asymptotic passed.
    pub fn exact_passed(&self) -> bool {
        self.checks.iter().filter(|c| !c.asymptotic).all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Checks the size bounds on `d`, `m'`, `t'`, `t''` against `N`.
///
/// Comparisons against powers `N^{a/(2k+1)}` are decided exactly by raising
/// both sides to the power `2k+1`; the reported sides and slack are floats.
pub fn verify_bounds(cert: &BoxCertificate, k: usize, n: u64) -> BoundsReport {
    let e = 2 * k as u32 + 1;
    let nf = n as f64;
    let root = nf.powf(1.0 / e as f64);
    let nk = int(cert.nk);
    let d = int(cert.d);
    let kq = int(cert.kappa);
    let tmax = cert.tprime.max(cert.tdoubleprime);
    let mut checks = Vec::new();

    let lo = &nk / (kq.pow(k as i32 - 1) + &cert.epsilon);
    checks.push(BoundCheck {
        name: "d_lower",
        lhs: f(&lo),
        rhs: cert.d as f64,
        slack: f(&(&d - &lo)),
        passed: d > lo,
        asymptotic: false,
    });
    let hi = &nk * rat(101, 100);
    checks.push(BoundCheck {
        name: "d_upper",
        lhs: cert.d as f64,
        rhs: f(&hi),
        slack: f(&(&hi - &d)),
        passed: d < hi,
        asymptotic: false,
    });
    let mb = &nk / &d + int(1);
    checks.push(BoundCheck {
        name: "m_prime",
        lhs: cert.mprime as f64,
        rhs: f(&mb),
        slack: f(&(&mb - int(cert.mprime))),
        passed: int(cert.mprime) < mb,
        asymptotic: false,
    });
    // max{t', t''} < 1.01 d / N^{1/(2k+1)}
    let passed = (BigInt::from(100 * tmax)).pow(e) * BigInt::from(n)
        < (BigInt::from(101) * BigInt::from(cert.d)).pow(e);
    let rhs = 1.01 * cert.d as f64 / root;
    checks.push(BoundCheck {
        name: "t_max",
        lhs: tmax as f64,
        rhs,
        slack: rhs - tmax as f64,
        passed,
        asymptotic: true,
    });
    // m' · max{t', t''} < 2.04 N^{2k/(2k+1)}
    let prod = BigInt::from(cert.mprime) * BigInt::from(tmax);
    let passed = (&prod * BigInt::from(100)).pow(e) < BigInt::from(204).pow(e) * BigInt::from(n).pow(e - 1);
    let rhs = 2.04 * nf.powf((e - 1) as f64 / e as f64);
    checks.push(BoundCheck {
        name: "m_t_product",
        lhs: prod.to_f64().unwrap(),
        rhs,
        slack: rhs - prod.to_f64().unwrap(),
        passed,
        asymptotic: true,
    });
    // 2 (t' + t'') m' < 9 N^{2k/(2k+1)}
    let lhs = BigInt::from(2 * (cert.tprime + cert.tdoubleprime)) * BigInt::from(cert.mprime);
    let passed = lhs.pow(e) < BigInt::from(9).pow(e) * BigInt::from(n).pow(e - 1);
    let rhs = 9.0 * nf.powf((e - 1) as f64 / e as f64);
    checks.push(BoundCheck {
        name: "resultant_degree",
        lhs: lhs.to_f64().unwrap(),
        rhs,
        slack: rhs - lhs.to_f64().unwrap(),
        passed,
        asymptotic: false,
    });
    BoundsReport { checks }
}

/// `(36 log k / log 2) · N^{2k/(2k+1)}`, defined for `k ≥ 3`.
pub fn gap_bound(k: usize, n: u64) -> Result<f64> {
    if k < 3 {
        return Err(Error::Domain(format!("gap bound needs k ≥ 3, got {k}")));
    }
    let kf = k as f64;
    let e = (2 * k) as f64 / (2 * k + 1) as f64;
    Ok(36.0 * kf.ln() / 2f64.ln() * (n as f64).powf(e))
}

/// `(n_k − n_{k−1}) log|ξ| ≤ log k` for each root `ξ` outside the unit circle,
/// using `|ξ| − tol` as the modulus.
pub fn root_gap_check(n: &SupportSet, roots: &[Complex64], tol: f64) -> bool {
    let e = n.exponents();
    if e.len() < 2 {
        return true;
    }
    let k = (e.len() - 1) as f64;
    let gap = (e[e.len() - 1] - e[e.len() - 2]) as f64;
    roots.iter().all(|z| {
        let m = z.norm() - tol;
        m <= 1.0 || gap * m.ln() <= k.ln()
    })
}

/// [`root_gap_check`] on certified root disks of the 0,1-polynomial of `n`.
pub fn root_gap_check_poly(n: &SupportSet) -> Result<bool> {
    if n.k() == 0 {
        return Ok(true);
    }
    let disks = root_disks(&squarefree_part(&n.to_poly()))?;
    let tol = disks.iter().map(|d| d.radius).fold(0.0, f64::max);
    let centers: Vec<Complex64> = disks.iter().map(|d| d.center).collect();
    Ok(root_gap_check(n, &centers, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u64]) -> SupportSet {
        SupportSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn schedule_examples() {
        let p = parameter_schedule(2, 1024).unwrap();
        assert_eq!(p.epsilon, rat(1, 3));
        assert_eq!(p.kappa, 4);
        assert_eq!(p.v, int(96));
        assert!(p.v_below_power(1024));
        assert!(!p.v_below_power(200));
        assert!(matches!(parameter_schedule(2, 100), Err(Error::Schedule(_))));
        assert!(matches!(parameter_schedule(1, 1 << 40), Err(Error::Domain(_))));
    }

    #[test]
    fn iroot_is_exact_floor() {
        assert_eq!(iroot(1024, 5), 4);
        assert_eq!(iroot(1023, 5), 3);
        assert_eq!(iroot(u64::MAX, 2), 4294967295);
    }

    #[test]
    fn pigeonhole_examples() {
        // x_j ∈ {1/3, 2/3}: t = 1, 2 sit exactly 1/3 from an integer
        assert_eq!(pigeonhole_t(&s(&[0, 10, 20, 30]), 3), 3);
        assert_eq!(pigeonhole_t(&s(&[0, 1, 2, 3]), 4), 3);
        assert_eq!(pigeonhole_t(&s(&[0, 2, 4, 6, 8]), 5), 4);
        assert_eq!(pigeonhole_t(&s(&[0, 5]), 3), 1);
        assert_eq!(pigeonhole_t(&s(&[0, 5]), 100), 1);
    }

    #[test]
    fn find_modulus_examples() {
        let n = s(&[0, 10, 20, 30]);
        let p = BoxParameters::new(3, rat(1, 2)).unwrap();
        assert!(matches!(find_modulus(&n, &p), Err(Error::Hypothesis { .. })));
        let c = find_modulus_unchecked(&n, &p).unwrap();
        assert_eq!(c.d, 10);
        assert!(c.entries.iter().all(|e| e.t == 0));
        assert_eq!((c.tprime, c.tdoubleprime), (0, 0));

        let small = s(&[0, 1, 2]);
        let p = BoxParameters::new(2, rat(1, 10)).unwrap();
        assert!(matches!(find_modulus(&small, &p), Err(Error::Hypothesis { .. })));
    }

    #[test]
    fn single_term_uses_nk() {
        let p = BoxParameters::new(1, rat(1, 2)).unwrap();
        let c = find_modulus(&s(&[0, 17]), &p).unwrap();
        assert_eq!((c.d, c.t), (17, 1));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&s(&[0, 10, 19, 31]), 10).unwrap();
        assert_eq!((d.m, d.t), (vec![1, 2, 3], vec![0, -1, 1]));
        assert_eq!((d.mprime, d.tprime, d.tdoubleprime), (3, 1, 1));
        let d = decompose(&s(&[0, 10, 20, 30]), 10).unwrap();
        assert_eq!((d.t, d.tprime, d.tdoubleprime), (vec![0, 0, 0], 0, 0));
        let d = decompose(&s(&[0, 7]), 10).unwrap();
        assert_eq!((d.m, d.t), (vec![1], vec![-3]));
        let d = decompose(&s(&[0, 5]), 10).unwrap();
        assert_eq!((d.m, d.t), (vec![1], vec![-5]));
    }

    #[test]
    fn bounds_pass_for_large_n_and_fail_when_inflated() {
        // r = ⌊N^{1/5}⌋ = 250 is large enough for the asymptotic checks
        let n_big: u64 = 250u64.pow(5);
        let p = parameter_schedule(2, n_big).unwrap();
        let set = s(&[0, 312_345_678_901, 912_345_678_901]);
        let c = find_modulus(&set, &p).unwrap();
        let rep = verify_bounds(&c, 2, n_big);
        assert!(rep.all_passed(), "{rep:?}");

        let mut bad = c.clone();
        bad.tprime = (bad.d as i64) * 2;
        let rep = verify_bounds(&bad, 2, n_big);
        assert!(!rep.get("t_max").unwrap().passed);

        let n3: u64 = 100_000_000_000_000;
        let p3 = parameter_schedule(3, n3).unwrap();
        let exact = s(&[0, 20_000_000_000_000, 40_000_000_000_000, 60_000_000_000_000]);
        let c = find_modulus(&exact, &p3).unwrap();
        // the smallest admissible d sits just below n_k/3, so t' > 0 here
        assert_eq!(c.t, 3);
        assert!(verify_bounds(&c, 3, n3).all_passed());
    }

    #[test]
    fn gap_bound_examples() {
        let g = gap_bound(3, 1).unwrap();
        assert!((g - 36.0 * 3f64.log2()).abs() < 1e-9);
        let g = gap_bound(3, 1000).unwrap();
        assert!((g / 1000f64.powf(6.0 / 7.0) - 57.058).abs() < 1e-2);
        assert!(gap_bound(2, 10).is_err());
    }

    #[test]
    fn root_gap_examples() {
        assert!(root_gap_check_poly(&s(&[0, 1, 2])).unwrap());
        assert!(root_gap_check_poly(&s(&[0, 1, 3])).unwrap());
        // a root of modulus 2 with gap 5 and k = 2 violates the inequality
        assert!(!root_gap_check(&s(&[0, 1, 6]), &[Complex64::new(2.0, 0.0)], 1e-9));
    }
}
