use lacunary::factor::{
    construct_conjugate_product, factor_over_integers, house, is_irreducible, nonreciprocal_part,
    nonreciprocal_part_of, FactorClass, DEFAULT_TOL,
};
use lacunary::{DensePoly, SupportSet};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eisenstein at `p`: p ∤ a_n, p | a_i for i < n, p² ∤ a_0.
fn eisenstein(c: &[i64], p: i64) -> bool {
    let n = c.len() - 1;
    c[n] % p != 0 && c[..n].iter().all(|a| a % p == 0) && c[0] % (p * p) != 0
}

fn shift(c: &[i64], s: i64) -> Vec<i64> {
    // coefficients of f(x + s) by repeated synthetic expansion
    let mut out = vec![0i64; c.len()];
    for &a in c.iter().rev() {
        for i in (1..out.len()).rev() {
            out[i] = out[i] * s + out[i - 1];
        }
        out[0] = out[0] * s + a;
    }
    out
}

/// Irreducibility certified by Eisenstein on f(x), f(x+1) or f(x-1).
fn certified_irreducible(c: &[i64]) -> bool {
    let g = c.iter().fold(0i64, |g, &a| num_integer::gcd(g, a));
    if g != 1 {
        return false;
    }
    if c.len() == 2 {
        return true;
    }
    [0, 1, -1].iter().any(|&s| {
        let sh = if s == 0 { c.to_vec() } else { shift(c, s) };
        [2, 3, 5, 7].iter().any(|&p| eisenstein(&sh, p))
    })
}

fn random_certified(rng: &mut ChaCha8Rng) -> DensePoly {
    loop {
        let deg = rng.random_range(1..=6);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.random_range(-9..=9)).collect();
        if c[deg] <= 0 {
            continue;
        }
        if c[0] == 0 {
            c[0] = 1;
        }
        if certified_irreducible(&c) {
            return DensePoly::from_i64(&c);
        }
    }
}

#[test]
fn recovers_products_of_certified_irreducibles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let k = rng.random_range(1..=4);
        let mut gens: Vec<DensePoly> = (0..k).map(|_| random_certified(&mut rng)).collect();
        let scale = rng.random_range(1..=3) * if rng.random_bool(0.5) { -1 } else { 1 };
        let f = gens
            .iter()
            .fold(DensePoly::constant(BigInt::from(scale)), |a, g| &a * g);
        let r = factor_over_integers(&f).unwrap();
        assert_eq!(r.expand(), f);
        let mut got: Vec<DensePoly> = r
            .factors
            .iter()
            .flat_map(|x| std::iter::repeat_n(x.poly.clone(), x.multiplicity as usize))
            .collect();
        let key = |p: &DensePoly| (p.deg(), p.coeffs().to_vec());
        got.sort_by_key(key);
        gens.sort_by_key(key);
        assert_eq!(got, gens, "factoring {f}");
    }
}

#[test]
fn factors_refactor_to_themselves() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.random_range(2..=14);
        let c: Vec<i64> = (0..=n).map(|_| rng.random_range(-3..=3)).collect();
        let f = DensePoly::from_i64(&c);
        if f.is_zero() {
            continue;
        }
        let r = factor_over_integers(&f).unwrap();
        assert_eq!(r.expand(), f);
        for w in &r.factors {
            let again = factor_over_integers(&w.poly).unwrap();
            assert_eq!(again.factors.len(), 1);
            assert_eq!(again.factors[0].poly, w.poly);
            assert_eq!(again.factors[0].multiplicity, 1);
            assert!(is_irreducible(&w.poly).unwrap());
        }
    }
}

#[test]
fn nonreciprocal_part_times_removed_factors_is_the_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let n = rng.random_range(1..=12);
        let c: Vec<i64> = (0..=n).map(|_| rng.random_range(-4..=4)).collect();
        let f = DensePoly::from_i64(&c);
        if f.is_zero() {
            continue;
        }
        let r = factor_over_integers(&f).unwrap();
        let part = nonreciprocal_part_of(&r);
        assert_eq!(part, nonreciprocal_part(&f).unwrap());
        let removed = r
            .factors
            .iter()
            .filter(|w| w.class.is_reciprocal())
            .fold(DensePoly::constant(r.content.clone()), |a, w| &a * &w.poly.pow(w.multiplicity));
        assert_eq!(&part * &removed, f);
    }
}

#[test]
fn conjugate_product_for_every_qualifying_polynomial_up_to_degree_12() {
    let mut seen = 0;
    for n in 1..=12u64 {
        for mask in 0u64..(1 << (n - 1)) {
            let mut e: Vec<u64> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            e.push(n);
            let f = SupportSet::from_nonzero(&e).unwrap().to_poly();
            let r = factor_over_integers(&f).unwrap();
            if r.nonreciprocal_count() < 2 {
                assert!(construct_conjugate_product(&f).is_err());
                continue;
            }
            seen += 1;
            let g = construct_conjugate_product(&f).unwrap();
            let ft = f.reciprocal().unwrap();
            assert!(g.coeffs().iter().all(|c| *c == 0.into() || *c == 1.into()));
            assert_eq!(g.term_count(), f.term_count());
            assert!(g != f && g != ft);
            assert_eq!(&g * &g.reciprocal().unwrap(), &f * &ft);
        }
    }
    assert!(seen > 0);
}

#[test]
fn census_factors_pass_dimitrov() {
    // every irreducible non-cyclotomic factor of 0,1-polynomials with few terms
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..150 {
        let n = rng.random_range(3..=50u64);
        let k = rng.random_range(1..=4usize).min(n as usize - 1);
        let mut rest: Vec<u64> = Vec::new();
        while rest.len() < k - 1 {
            let v = rng.random_range(1..n);
            if !rest.contains(&v) {
                rest.push(v);
            }
        }
        rest.push(n);
        let f = SupportSet::from_exponents(rest).to_poly();
        for w in factor_over_integers(&f).unwrap().factors {
            if matches!(w.class, FactorClass::ReciprocalCyclotomic(_)) {
                continue;
            }
            assert!(lacunary::factor::dimitrov_check(&w.poly, DEFAULT_TOL).unwrap(), "{}", w.poly);
        }
    }
}

#[test]
fn house_is_at_least_one_for_integer_monic_noncyclotomic() {
    let f = DensePoly::from_i64(&[1, 1, 0, 1]);
    assert!(house(&f, DEFAULT_TOL).unwrap() > 1.0);
}
