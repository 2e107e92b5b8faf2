//! Factorization of squarefree primitive polynomials over `Z`: degree-set
//! sieve, multifactor Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{distinct_degree, factor_squarefree_mod_p, PolyModP};
use crate::poly::DensePoly;

const SIEVE_PRIMES: usize = 5;

/// Yun's squarefree decomposition of a primitive polynomial with positive
/// leading coefficient: pairs `(a_i, i)` with `f = ∏ a_i^i`, each `a_i`
/// squarefree, primitive, non-constant.
pub(crate) fn squarefree_decomposition(f: &DensePoly) -> Vec<(DensePoly, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.exact_div(&a0).expect("gcd divides f").primitive_part();
    let mut c = fp.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        let a = if a.is_zero() { b.clone() } else { a };
        b = b.exact_div(&a).expect("gcd divides b").primitive_part();
        if a.deg() > 0 {
            out.push((a.primitive_part(), i));
        }
        if b.deg() == 0 {
            break;
        }
        c = d.exact_div(&a).expect("a divides d");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Bitset of the factor degrees that are achievable modulo one prime.
fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Outcome of sieving a squarefree primitive `f` over several primes.
pub(crate) struct Sieve {
    /// `allowed[d]` is false when no factor of degree `d` can exist over `Z`.
    pub allowed: Vec<bool>,
    /// Prime with the fewest modular factors, with its monic factor count.
    pub best: Option<(u64, usize)>,
}

impl Sieve {
    /// True when the only possible factor degrees are `0` and `deg f`.
    pub fn proves_irreducible(&self) -> bool {
        let n = self.allowed.len() - 1;
        (1..n).all(|d| !self.allowed[d])
    }
}

fn primes() -> impl Iterator<Item = u64> {
    (3..1u64 << 31).filter(|&n| super::modp::is_prime(n))
}

pub(crate) fn degree_sieve(f: &DensePoly) -> Sieve {
    let n = f.deg();
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(u64, usize)> = None;
    let lc = f.leading().expect("non-zero").clone();
    let mut used = 0;
    for p in primes() {
        if used == SIEVE_PRIMES {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = PolyModP::from_dense(f, p).monic();
        if !fp.is_squarefree() {
            continue;
        }
        used += 1;
        let mut degrees = Vec::new();
        for (g, d) in distinct_degree(&fp) {
            degrees.extend(std::iter::repeat_n(d, g.deg() / d));
        }
        let reach = subset_sums(&degrees, n);
        for (a, r) in allowed.iter_mut().zip(&reach) {
            *a &= *r;
        }
        if best.is_none_or(|(_, c)| degrees.len() < c) {
            best = Some((p, degrees.len()));
        }
        if degrees.len() == 1 {
            break;
        }
    }
    Sieve { allowed, best }
}

fn sym_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn reduce(f: &DensePoly, m: &BigInt) -> DensePoly {
    DensePoly::from_coeffs(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn reduce_sym(f: &DensePoly, m: &BigInt) -> DensePoly {
    DensePoly::from_coeffs(f.coeffs().iter().map(|c| sym_mod(c, m)).collect())
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `f ≡ lc(f)·g·h (mod p)` with `g` monic and `gcd(g, h) = 1` to
/// `f ≡ G·H (mod m)`, where `m = p^a`, `G` monic and `lc(H) ≡ lc(f)`.
fn lift_two(f: &DensePoly, g: &PolyModP, h: &PolyModP, p: u64, m: &BigInt) -> (DensePoly, DensePoly) {
    let pb = BigInt::from(p);
    let lc = f.leading().unwrap().mod_floor(&pb).to_u64().unwrap();
    let h = h.monic().scale(lc);
    let (one, s, t) = g.ext_gcd(&h);
    debug_assert!(one.is_one());
    let mut gg = g.to_dense();
    let mut hh = h.to_dense();
    let mut q = pb.clone();
    while &q < m {
        let e = (f - &(&gg * &hh)).div_scalar(&q);
        let ep = PolyModP::from_dense(&e, p);
        // solve σ·g + τ·h ≡ e with deg τ < deg g
        let tau0 = t.mul(&ep);
        let (quo, tau) = tau0.div_rem(g);
        let sigma = s.mul(&ep).add(&quo.mul(&h));
        let nq = &q * &pb;
        gg = reduce(&(&gg + &tau.to_dense().scale(&q)), &nq);
        hh = reduce(&(&hh + &sigma.to_dense().scale(&q)), &nq);
        q = nq;
    }
    (gg, hh)
}

/// Monic lifts `u_i` with `f ≡ lc(f)·∏ u_i (mod m)`.
fn hensel_lift(f: &DensePoly, factors: &[PolyModP], p: u64, m: &BigInt) -> Vec<DensePoly> {
    if factors.len() == 1 {
        let inv = inv_mod_big(f.leading().unwrap(), m);
        return vec![reduce(&f.scale(&inv), m)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[PolyModP]| {
        fs.iter()
            .fold(PolyModP::one(p), |acc, g| acc.mul(g))
    };
    let g = prod(&factors[..mid]);
    let h = prod(&factors[mid..]);
    let (gg, hh) = lift_two(f, &g, &h, p, m);
    let mut out = hensel_lift(&gg, &factors[..mid], p, m);
    out.extend(hensel_lift(&hh, &factors[mid..], p, m));
    out
}

/// Mignotte-style bound `|lc|·2^n·‖f‖₂` on coefficients of any factor.
fn coefficient_bound(f: &DensePoly) -> BigInt {
    let norm = f.norm2_squared().sqrt() + BigInt::one();
    f.leading().unwrap().abs() * (BigInt::one() << f.deg()) * norm
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducible factors of a squarefree primitive `f` with positive leading
/// coefficient and `f(0) ≠ 0`, each primitive with positive leading coefficient.
pub(crate) fn factor_squarefree(f: &DensePoly) -> Vec<DensePoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let sieve = degree_sieve(f);
    if sieve.proves_irreducible() {
        return vec![f.clone()];
    }
    let (p, _) = sieve.best.expect("some prime is usable for a squarefree input");
    let modular = factor_squarefree_mod_p(&PolyModP::from_dense(f, p).monic());
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    let bound = coefficient_bound(f) * 2u32;
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
    }
    let mut lifted: Vec<(DensePoly, usize)> = hensel_lift(f, &modular, p, &m)
        .into_iter()
        .map(|u| {
            let d = u.deg();
            (u, d)
        })
        .collect();

    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        let mut hit = false;
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].1).sum();
            if sieve.allowed.get(deg).copied().unwrap_or(false) {
                if let Some(g) = try_subset(&rest, &lifted, &idx, &m) {
                    rest = rest.exact_div(&g).expect("checked");
                    found.push(g);
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    hit = true;
                    break;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        if !hit {
            s += 1;
        }
    }
    if rest.deg() > 0 {
        found.push(rest.primitive_part());
    }
    found
}

fn try_subset(
    rest: &DensePoly,
    lifted: &[(DensePoly, usize)],
    idx: &[usize],
    m: &BigInt,
) -> Option<DensePoly> {
    let lc = rest.leading().unwrap().clone();
    // constant-term test before any polynomial product
    let c0 = idx
        .iter()
        .fold(lc.clone(), |acc, &i| (acc * lifted[i].0.coeff(0)).mod_floor(m));
    let c0 = sym_mod(&c0, m);
    if c0.is_zero() || !(&lc * rest.coeff(0)).is_multiple_of(&c0) {
        return None;
    }
    let mut prod = DensePoly::constant(lc);
    for &i in idx {
        prod = reduce(&(&prod * &lifted[i].0), m);
    }
    let g = reduce_sym(&prod, m).primitive_part();
    if rest.divisible_by(&g) {
        Some(g)
    } else {
        None
    }
}
