//! Cyclotomic polynomials, sparse divisibility and cyclotomic-part removal.
//!
//! Divisibility by `Φ_m` is decided without dense arithmetic in the degree of
//! the input: with `Ψ_m = (x^m - 1) / Φ_m`, the polynomial `f` is divisible by
//! `Φ_m` iff `f · Ψ_m ≡ 0 (mod x^m - 1)`, and reduction mod `x^m - 1` only
//! folds exponents mod `m`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{DensePoly, SupportSet};

/// Euler's totient.
pub fn totient(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn moebius(mut m: u64) -> i8 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

struct CycloEntry {
    phi: Arc<DensePoly>,
    /// `(x^m - 1) / Φ_m`
    cofactor: Arc<DensePoly>,
    cofactor_small: Option<Arc<Vec<i64>>>,
}

type Memo<K, V> = OnceLock<RwLock<HashMap<K, V>>>;

static CYCLO_MEMO: Memo<u64, Arc<CycloEntry>> = OnceLock::new();
static CANDIDATE_MEMO: Memo<usize, Arc<Vec<u64>>> = OnceLock::new();

fn memo_get<K: std::hash::Hash + Eq + Copy, V: Clone>(
    memo: &'static Memo<K, V>,
    key: K,
    build: impl FnOnce() -> V,
) -> V {
    let table = memo.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = table.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = build();
    table.write().unwrap().entry(key).or_insert(v).clone()
}

fn cyclo_entry(m: u64) -> Arc<CycloEntry> {
    memo_get(&CYCLO_MEMO, m, || {
        // Φ_m = ∏_{d | m} (x^d - 1)^{μ(m/d)}
        let mut num = DensePoly::one();
        let mut den = DensePoly::one();
        for d in divisors(m) {
            match moebius(m / d) {
                1 => num = &num * &DensePoly::x_pow_minus_one(d as usize),
                -1 => den = &den * &DensePoly::x_pow_minus_one(d as usize),
                _ => {}
            }
        }
        let phi = num.exact_div(&den).expect("Möbius product is exact");
        let cofactor = DensePoly::x_pow_minus_one(m as usize)
            .exact_div(&phi)
            .expect("Φ_m divides x^m - 1");
        let cofactor_small = cofactor.to_i64_vec().map(Arc::new);
        Arc::new(CycloEntry {
            phi: Arc::new(phi),
            cofactor: Arc::new(cofactor),
            cofactor_small,
        })
    })
}

/// The `m`-th cyclotomic polynomial (memoized, safe to call from many threads).
pub fn cyclotomic_poly(m: u64) -> Result<Arc<DensePoly>> {
    if m == 0 {
        return Err(Error::Domain("Φ_0 is undefined".into()));
    }
    Ok(cyclo_entry(m).phi.clone())
}

/// All `m` with `φ(m) ≤ degree`, ascending. Uses `φ(m) ≥ √(m/2)`, so `m ≤ 2·degree²`.
pub fn candidate_moduli(degree: usize) -> Arc<Vec<u64>> {
    memo_get(&CANDIDATE_MEMO, degree, || {
        if degree == 0 {
            return Arc::new(Vec::new());
        }
        let cap = 2 * (degree as u64) * (degree as u64);
        let mut phi: Vec<u64> = (0..=cap).collect();
        for i in 2..=cap as usize {
            if phi[i] == i as u64 {
                for j in (i..=cap as usize).step_by(i) {
                    phi[j] -= phi[j] / i as u64;
                }
            }
        }
        Arc::new(
            (1..=cap)
                .filter(|&m| phi[m as usize] <= degree as u64)
                .collect(),
        )
    })
}

/// True iff `Σ c_e x^e · Ψ_m ≡ 0 (mod x^m - 1)`, i.e. `Φ_m` divides the sparse polynomial.
fn sparse_vanishes<'a, I>(terms: I, m: u64) -> bool
where
    I: IntoIterator<Item = (u64, &'a BigInt)> + Clone,
{
    let entry = cyclo_entry(m);
    let m_us = m as usize;

    // Fold exponents mod m first.
    let mut folded: HashMap<usize, BigInt> = HashMap::new();
    for (e, c) in terms {
        *folded.entry((e % m) as usize).or_default() += c;
    }
    folded.retain(|_, c| !c.is_zero());
    if folded.is_empty() {
        return true;
    }

    if let Some(psi) = entry.cofactor_small.as_ref() {
        let small: Option<Vec<(usize, i128)>> = folded
            .iter()
            .map(|(&r, c)| c.to_i128().map(|v| (r, v)))
            .collect();
        if let Some(small) = small {
            let mut acc = vec![0i128; m_us];
            let mut overflow = false;
            'outer: for &(r, c) in &small {
                for (j, &p) in psi.iter().enumerate() {
                    if p == 0 {
                        continue;
                    }
                    let slot = &mut acc[(r + j) % m_us];
                    match c.checked_mul(p as i128).and_then(|v| slot.checked_add(v)) {
                        Some(v) => *slot = v,
                        None => {
                            overflow = true;
                            break 'outer;
                        }
                    }
                }
            }
            if !overflow {
                return acc.iter().all(|&v| v == 0);
            }
        }
    }

    let psi = entry.cofactor.coeffs();
    let mut acc = vec![BigInt::zero(); m_us];
    for (&r, c) in &folded {
        for (j, p) in psi.iter().enumerate() {
            if !p.is_zero() {
                acc[(r + j) % m_us] += c * p;
            }
        }
    }
    acc.iter().all(|v| v.is_zero())
}

/// True iff `Φ_m` divides the 0,1-polynomial with support `s`.
///
/// Exponents are reduced mod `m` before any arithmetic, so the cost depends
/// on `m` and the number of terms, not on the degree. Returns `false` for
/// `m = 0`.
pub fn divides_cyclotomic(s: &SupportSet, m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let one = BigInt::from(1);
    sparse_vanishes(s.exponents().iter().map(|&e| (e, &one)), m)
}

fn dense_terms(f: &DensePoly) -> impl Iterator<Item = (u64, &BigInt)> + Clone {
    f.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u64, c))
}

/// True iff `Φ_m | f`.
pub fn divides_cyclotomic_dense(f: &DensePoly, m: u64) -> bool {
    m != 0 && sparse_vanishes(dense_terms(f), m)
}

/// `f = ∏ Φ_m^{mult} · noncyclotomic_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub factors: Vec<(u64, u32)>,
    pub noncyclotomic_part: DensePoly,
}

impl CyclotomicFactorization {
    /// Re-multiplies the factorization.
    pub fn expand(&self) -> DensePoly {
        let mut acc = self.noncyclotomic_part.clone();
        for &(m, e) in &self.factors {
            acc = &acc * &cyclotomic_poly(m).unwrap().pow(e);
        }
        acc
    }
}

impl Serialize for CyclotomicFactorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CyclotomicFactorization", 2)?;
        st.serialize_field("factors", &self.factors)?;
        st.serialize_field("part", &self.noncyclotomic_part.coeff_list())?;
        st.end()
    }
}

/// Divides out every cyclotomic factor of `f` at its full multiplicity.
pub fn remove_cyclotomic_part(f: &DensePoly) -> Result<CyclotomicFactorization> {
    if f.is_zero() {
        return Err(Error::Domain("zero polynomial".into()));
    }
    // Cyclotomic factors of f and of f / x^v coincide.
    let v = f.valuation().unwrap();
    let deg = f.deg() - v;
    let dividing: Vec<u64> = candidate_moduli(deg)
        .iter()
        .copied()
        .filter(|&m| sparse_vanishes(dense_terms(f), m))
        .collect();

    let mut part = f.clone();
    let mut factors = Vec::with_capacity(dividing.len());
    for m in dividing {
        let phi = cyclotomic_poly(m)?;
        let mut mult = 0;
        loop {
            let (q, r) = part.div_rem_monic(&phi);
            if !r.is_zero() {
                break;
            }
            part = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        factors.push((m, mult));
    }
    Ok(CyclotomicFactorization {
        factors,
        noncyclotomic_part: part,
    })
}

/// Cyclotomic-part removal for a 0,1-polynomial given by its support.
pub fn remove_cyclotomic_part_sparse(s: &SupportSet) -> CyclotomicFactorization {
    remove_cyclotomic_part(&s.to_poly()).expect("0,1-polynomials are non-zero")
}

/// For monic irreducible `w`, the `m` with `w = Φ_m`, if any.
pub fn is_cyclotomic_irreducible(w: &DensePoly) -> Result<Option<u64>> {
    if !w.is_monic() {
        return Err(Error::Domain(format!("{w} is not monic")));
    }
    let n = w.deg();
    if n == 0 {
        return Ok(None);
    }
    let c0 = w.coeff(0);
    if c0 != BigInt::from(1) && c0 != BigInt::from(-1) {
        return Ok(None);
    }
    for &m in candidate_moduli(n).iter() {
        if totient(m) == n as u64 && *cyclotomic_poly(m)? == *w {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
