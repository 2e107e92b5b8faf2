//! Polynomials over the prime field `F_p` (`p < 2^31`) and their factorization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::DensePoly;

/// Polynomial over `F_p`; `c[i]` is the coefficient of `x^i`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PolyModP {
    p: u64,
    c: Vec<u64>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_u64(a, p - 2, p)
}

impl PolyModP {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyModP { p, c }
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn from_dense(f: &DensePoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|a| a.mod_floor(&pb).to_u64().unwrap())
            .collect();
        Self::new(p, c)
    }

    /// Lift to `Z[x]` with coefficients in `[0, p)`.
    pub fn to_dense(&self) -> DensePoly {
        DensePoly::from_coeffs(self.c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, s: u64) -> Self {
        let p = self.p;
        Self::new(p, self.c.iter().map(|&v| v * s % p).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % p)
            .collect();
        Self::new(p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + p - o.c.get(i).unwrap_or(&0)) % p)
            .collect();
        Self::new(p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::new(p, c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        let p = self.p;
        if self.c.len() < d.c.len() {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let dd = d.deg();
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for shift in (0..q.len()).rev() {
            let lead = r[shift + dd] * inv % p;
            if lead == 0 {
                continue;
            }
            q[shift] = lead;
            for (i, &dc) in d.c.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * dc % p) % p;
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut r = Self::one(self.p).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_mod(&b, m);
            }
        }
        r
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &v)| (i as u64 % p) * v % p)
                .collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// Inverse of Frobenius for a polynomial in `x^p`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.c.iter().step_by(p).copied().collect())
    }
}

impl fmt::Debug for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_dense(), self.p)
    }
}

/// Squarefree factorization of a monic polynomial over `F_p`.
fn squarefree_mod_p(f: &PolyModP) -> Vec<(PolyModP, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        for (g, e) in squarefree_mod_p(&f.pth_root()) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.deg() > 0 {
        for (g, e) in squarefree_mod_p(&c.pth_root()) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(g_d, d)` where `g_d` is the product of all irreducible factors of degree `d`.
pub(crate) fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = PolyModP::x(p);
    let mut h = x.rem(&rest);
    let mut d = 1;
    while 2 * d <= rest.deg() {
        h = h.pow_mod(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dr = rest.deg();
        out.push((rest, dr));
    }
    out
}

/// Splits a product of distinct irreducibles of common degree `d` (Cantor–Zassenhaus).
fn equal_degree(f: &PolyModP, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyModP> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let p = f.p;
    loop {
        let a = PolyModP::new(p, (0..n).map(|_| rng.random_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^{2^{d-1}}
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..d {
                s = s.mul_mod(&s, f);
                t = t.add(&s);
            }
            t
        } else {
            // a^{(p^d - 1)/2} = (a^{1 + p + ... + p^{d-1}})^{(p-1)/2}
            let mut s = a.rem(f);
            let mut norm = s.clone();
            for _ in 1..d {
                s = s.pow_mod(p, f);
                norm = norm.mul_mod(&s, f);
            }
            norm.pow_mod((p - 1) / 2, f).sub(&PolyModP::one(p))
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Irreducible factors of a monic squarefree polynomial, sorted.
pub(crate) fn factor_squarefree_mod_p(f: &PolyModP) -> Vec<PolyModP> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        out.extend(equal_degree(&g, d, &mut rng));
    }
    out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
    out
}

/// Factorization of `f` over `F_p` into monic irreducibles with multiplicity.
///
/// `f ≡ lc(f) · ∏ g^e (mod p)`. Fails with [`Error::BadPrime`] when `p` divides
/// the leading coefficient and with a domain error when `p` is not a prime
/// below `2^31`.
pub fn factor_mod_p(f: &DensePoly, p: u64) -> Result<Vec<(PolyModP, u32)>> {
    if !is_prime(p) || p >= 1 << 31 {
        return Err(Error::Domain(format!("{p} is not a prime below 2^31")));
    }
    let lc = f
        .leading()
        .ok_or_else(|| Error::Domain("zero polynomial".into()))?;
    if (lc % BigInt::from(p)).abs().to_u64() == Some(0) {
        return Err(Error::BadPrime(p));
    }
    let fp = PolyModP::from_dense(f, p).monic();
    let mut out = Vec::new();
    for (g, e) in squarefree_mod_p(&fp) {
        for h in factor_squarefree_mod_p(&g) {
            out.push((h, e));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0.c, a.1).cmp(&(b.0.deg(), &b.0.c, b.1)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(c: &[i64]) -> DensePoly {
        DensePoly::from_i64(c)
    }

    fn mp(p: u64, c: &[u64]) -> PolyModP {
        PolyModP::new(p, c.to_vec())
    }

    #[test]
    fn x2_plus_1_mod_2_is_a_square() {
        let f = factor_mod_p(&d(&[1, 0, 1]), 2).unwrap();
        assert_eq!(f, vec![(mp(2, &[1, 1]), 2)]);
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        let f = factor_mod_p(&d(&[1, 0, 1]), 5).unwrap();
        assert_eq!(f, vec![(mp(5, &[2, 1]), 1), (mp(5, &[3, 1]), 1)]);
    }

    #[test]
    fn x2_plus_1_mod_3_is_irreducible() {
        let f = factor_mod_p(&d(&[1, 0, 1]), 3).unwrap();
        assert_eq!(f, vec![(mp(3, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn bad_prime_and_non_prime() {
        assert_eq!(factor_mod_p(&d(&[1, 0, 3]), 3), Err(Error::BadPrime(3)));
        assert!(matches!(factor_mod_p(&d(&[1, 1]), 4), Err(Error::Domain(_))));
    }

    #[test]
    fn pth_power_inputs() {
        // (x^3 + x + 1)^6 mod 3 needs the p-th root branch
        let base = d(&[1, 1, 0, 1]);
        let f = base.pow(6);
        let got = factor_mod_p(&f, 3).unwrap();
        let expect_factors = factor_mod_p(&base, 3).unwrap();
        let expect: Vec<_> = expect_factors.into_iter().map(|(g, e)| (g, e * 6)).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn products_reconstruct_and_factors_are_irreducible() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &p in &[2u64, 3, 5, 7, 13, 101] {
            for _ in 0..30 {
                let n = rng.random_range(1..12usize);
                let mut c: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
                c.push(1);
                let f = d(&c);
                let fac = factor_mod_p(&f, p).unwrap();
                let mut prod = PolyModP::one(p);
                for (g, e) in &fac {
                    assert!(g.lc() == 1);
                    for _ in 0..*e {
                        prod = prod.mul(g);
                    }
                    // irreducible: no root-free factor of smaller degree via x^{p^i} - x
                    let dd = distinct_degree(g);
                    assert_eq!(dd.len(), 1);
                    assert_eq!(dd[0].1, g.deg());
                }
                assert_eq!(prod, PolyModP::from_dense(&f, p).monic());
            }
        }
    }
}
