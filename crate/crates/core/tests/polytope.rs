use lacunary::diophant::{find_modulus, find_modulus_unchecked, parameter_schedule, rational, BoxParameters};
use lacunary::polytope::{
    build_gh, minkowski_sum, minkowski_sum_bruteforce, newton_polytope, parallel_pair_scan,
    sylvester_resultant_z, verify_ostrowski, BivariateSupport, EdgeClass, Point, Polytope2,
};
use lacunary::{DensePoly, Error, SupportSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_bivariate(rng: &mut ChaCha8Rng, terms: usize, deg: u64) -> BivariateSupport {
    loop {
        let p = BivariateSupport::new((0..terms).map(|_| {
            let c = rng.random_range(-3i64..=3);
            (BigInt::from(c), (rng.random_range(0..=deg), rng.random_range(0..=deg)))
        }));
        if !p.is_zero() {
            return p;
        }
    }
}

/// `A(1 + m)` and `B(1 − m + m²)` for a monomial `m`: the product `AB(1 + m³)`
/// loses the middle terms of the two cofactors.
fn cancelling_pair(rng: &mut ChaCha8Rng) -> (BivariateSupport, BivariateSupport) {
    let m = (rng.random_range(0..3u64), rng.random_range(0..3u64));
    let m = if m == (0, 0) { (1, 0) } else { m };
    let two = (2 * m.0, 2 * m.1);
    let a = random_bivariate(rng, 3, 3);
    let b = random_bivariate(rng, 3, 3);
    let f1 = BivariateSupport::from_i64(&[(1, (0, 0)), (1, m)]);
    let f2 = BivariateSupport::from_i64(&[(1, (0, 0)), (-1, m), (1, two)]);
    (a.mul(&f1), b.mul(&f2))
}

#[test]
fn figure_pair() {
    let p = BivariateSupport::from_i64(&[(1, (1, 2)), (1, (5, 2)), (1, (3, 5))]);
    let q = BivariateSupport::from_i64(&[(1, (6, 3)), (1, (7, 4)), (1, (6, 5))]);
    assert!(verify_ostrowski(&p, &q).unwrap());
    let sum = minkowski_sum(&newton_polytope(&p).unwrap(), &newton_polytope(&q).unwrap());
    assert_eq!(sum.vertices(), &[(7, 5), (11, 5), (12, 6), (10, 9), (9, 10), (7, 7)]);
}

#[test]
fn ostrowski_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut cancelled = 0;
    for i in 0..1000 {
        let (p, q) = if i % 2 == 0 {
            (random_bivariate(&mut rng, 5, 6), random_bivariate(&mut rng, 5, 6))
        } else {
            cancelling_pair(&mut rng)
        };
        let prod = p.mul(&q);
        if prod.terms().len() < p.terms().len() * q.terms().len() {
            cancelled += 1;
        }
        assert!(verify_ostrowski(&p, &q).unwrap(), "{p} · {q}");
    }
    assert!(cancelled > 300);
}

fn points() -> impl Strategy<Value = Vec<Point>> {
    proptest::collection::vec((-20i64..20, -20i64..20), 1..12)
}

proptest! {
    #[test]
    fn edge_merge_matches_pairwise_hull(a in points(), b in points()) {
        let p = Polytope2::hull(&a).unwrap();
        let q = Polytope2::hull(&b).unwrap();
        prop_assert_eq!(minkowski_sum(&p, &q), minkowski_sum_bruteforce(&p, &q));
    }

    #[test]
    fn hull_vertices_are_strictly_convex(a in points()) {
        let p = Polytope2::hull(&a).unwrap();
        let v = p.vertices();
        prop_assert_eq!(v[0], *v.iter().min().unwrap());
        if v.len() >= 3 {
            for i in 0..v.len() {
                let (o, x, y) = (v[i], v[(i + 1) % v.len()], v[(i + 2) % v.len()]);
                let cross = (x.0 - o.0) * (y.1 - o.1) - (x.1 - o.1) * (y.0 - o.0);
                prop_assert!(cross > 0);
            }
        }
        let sum: Point = p.edges().iter().fold((0, 0), |s, e| (s.0 + e.vector.0, s.1 + e.vector.1));
        prop_assert_eq!(sum, (0, 0));
        for e in p.edges() {
            let expected = if e.vector.0 > 0 {
                EdgeClass::Lower
            } else if e.vector.0 < 0 {
                EdgeClass::Upper
            } else if e.vector.1 < 0 {
                EdgeClass::LeftVertical
            } else {
                EdgeClass::RightVertical
            };
            prop_assert_eq!(e.class, expected);
        }
    }
}

/// Resultant of univariate polynomials over `Q` by Euclidean remainders.
fn euclid_resultant(f: &[BigRational], g: &[BigRational]) -> BigRational {
    fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        v
    }
    fn rem(f: &[BigRational], g: &[BigRational]) -> Vec<BigRational> {
        let mut r = f.to_vec();
        let dg = g.len() - 1;
        while r.len() > dg && !(r.len() == 1 && r[0].is_zero()) {
            let c = r.last().unwrap() / g.last().unwrap();
            let shift = r.len() - 1 - dg;
            for (i, gi) in g.iter().enumerate() {
                r[shift + i] -= &c * gi;
            }
            r.pop();
            if r.is_empty() {
                r.push(BigRational::zero());
            }
            r = trim(r);
            if r.len() - 1 < dg {
                break;
            }
        }
        trim(r)
    }
    let (f, g) = (trim(f.to_vec()), trim(g.to_vec()));
    let (m, n) = (f.len() - 1, g.len() - 1);
    if n == 0 {
        return if g[0].is_zero() { BigRational::zero() } else { g[0].pow(m as i32) };
    }
    if m == 0 {
        return if f[0].is_zero() { BigRational::zero() } else { f[0].pow(n as i32) };
    }
    let r = rem(&f, &g);
    if r.len() == 1 && r[0].is_zero() {
        return BigRational::zero();
    }
    let k = r.len() - 1;
    let sign = if m * n % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    sign * g.last().unwrap().pow((m - k) as i32) * euclid_resultant(&g, &r)
}

/// `P(y0, z)` as coefficients in `z`.
fn specialize(p: &BivariateSupport, y0: i64) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); p.deg_z() as usize + 1];
    for (c, (y, z)) in p.terms() {
        out[*z as usize] += BigRational::from_integer(c * BigInt::from(y0).pow(*y as u32));
    }
    out
}

fn eval(r: &DensePoly, y0: i64) -> BigRational {
    BigRational::from_integer(r.eval(&BigInt::from(y0)))
}

#[test]
fn resultant_matches_specialized_euclid() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    while checked < 150 {
        let g = random_bivariate(&mut rng, 4, 4);
        let h = random_bivariate(&mut rng, 4, 4);
        let Ok(r) = sylvester_resultant_z(&g, &h, 64) else { continue };
        for y0 in -2..=3 {
            let (gs, hs) = (specialize(&g, y0), specialize(&h, y0));
            // Res commutes with specialization when the leading z-coefficients survive
            if gs.last().unwrap().is_zero() || hs.last().unwrap().is_zero() {
                continue;
            }
            assert_eq!(eval(&r, y0), euclid_resultant(&gs, &hs), "{g} | {h} at y = {y0}");
        }
        let bound = g.deg_y() * h.deg_z() + g.deg_z() * h.deg_y();
        assert!(r.degree().unwrap_or(0) as u64 <= bound);
        checked += 1;
    }
}

fn random_certified(rng: &mut ChaCha8Rng) -> (SupportSet, lacunary::diophant::BoxCertificate) {
    loop {
        let k = rng.random_range(2..=3usize);
        let big_n = rng.random_range(4u64.pow(2 * k as u32 + 1)..=60_000);
        let Ok(p) = parameter_schedule(k, big_n) else { continue };
        let v = p.v.ceil().to_integer().to_u64().unwrap();
        let nk = rng.random_range(v..=big_n);
        let mut rest: Vec<u64> = Vec::new();
        while rest.len() < k - 1 {
            let x = rng.random_range(1..nk);
            if !rest.contains(&x) {
                rest.push(x);
            }
        }
        rest.sort_unstable();
        rest.push(nk);
        let n = SupportSet::from_nonzero(&rest).unwrap();
        let cert = find_modulus(&n, &p).unwrap();
        return (n, cert);
    }
}

#[test]
fn gh_identities_dense() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let (n, cert) = random_certified(&mut rng);
        let pair = build_gh(&n, &cert).unwrap();
        // dense re-check of both substitutions
        let f = n.to_poly();
        let sub = |p: &BivariateSupport| {
            let mut acc = DensePoly::zero();
            for (c, (y, z)) in p.terms() {
                acc = &acc + &DensePoly::monomial(c.clone(), (y + cert.d * z) as usize);
            }
            acc
        };
        assert_eq!(sub(&pair.g), f.shift(pair.tdoubleprime as usize));
        assert_eq!(sub(&pair.h), f.reciprocal().unwrap().shift(pair.a as usize));
        let ng = newton_polytope(&pair.g).unwrap();
        let nh = newton_polytope(&pair.h).unwrap();
        assert_eq!(nh.reflect().translate(pair.offset), ng);
    }
}

#[test]
fn gh_rejects_mismatched_certificate() {
    let n = SupportSet::new(vec![0, 10, 19, 31]).unwrap();
    let p = BoxParameters::new(3, rational(1, 2)).unwrap();
    let cert = find_modulus_unchecked(&n, &p).unwrap();
    let other = SupportSet::new(vec![0, 10, 19, 32]).unwrap();
    assert!(matches!(build_gh(&other, &cert), Err(Error::Consistency(_))));
    let mut bad = cert.clone();
    bad.tdoubleprime += 1;
    assert!(matches!(build_gh(&n, &bad), Err(Error::Consistency(_))));
}

#[test]
fn small_resultant_within_eq_bound() {
    let n = SupportSet::new(vec![0, 10, 19, 31]).unwrap();
    let p = BoxParameters::new(3, rational(1, 2)).unwrap();
    let cert = find_modulus_unchecked(&n, &p).unwrap();
    let pair = build_gh(&n, &cert).unwrap();
    let r = sylvester_resultant_z(&pair.g, &pair.h, 64).unwrap();
    let bound = 2 * (cert.tprime + cert.tdoubleprime) * cert.mprime;
    assert!(r.deg() as i64 <= bound);
    assert!(!r.is_zero());
}

#[test]
fn parallel_pairs_when_m_is_proportional() {
    let n = SupportSet::new(vec![0, 3, 7, 12, 20]).unwrap();
    let m: Vec<i64> = n.exponents().iter().map(|&x| 2 * x as i64).collect();
    let quads = parallel_pair_scan(&n, &m).unwrap();
    // all pairs of disjoint index pairs: C(5,2)·C(3,2)/2
    assert_eq!(quads.len(), 15);
    assert!(quads.iter().all(|&(i, j, u, v)| i < j && u < v && (i, j) < (u, v)));
}
