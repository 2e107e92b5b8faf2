//! Exact integer polynomials, support sets and the reciprocal operator.

mod dense;
mod parse;
mod support;

pub use dense::DensePoly;
pub use dense::serialize_bigint;
pub use support::{from_support, SupportSet};

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = DensePoly> {
        prop::collection::vec(-20i64..=20, 0..8).prop_map(|c| DensePoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn reciprocal_is_an_involution(mut c in prop::collection::vec(-20i64..=20, 1..10)) {
            if c[0] == 0 { c[0] = 1; }
            if *c.last().unwrap() == 0 { c.push(3); }
            let f = DensePoly::from_i64(&c);
            prop_assert_eq!(f.reciprocal().unwrap().reciprocal().unwrap(), f);
        }

        #[test]
        fn mirror_matches_reciprocal(rest in prop::collection::btree_set(1u64..40, 0..6)) {
            let s = SupportSet::from_exponents(rest);
            prop_assert_eq!(s.to_poly().reciprocal().unwrap(), s.mirror().to_poly());
        }

        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!((&a * &b).deg(), a.deg() + b.deg());
            }
        }

        #[test]
        fn content_times_primitive(a in small_poly()) {
            prop_assume!(!a.is_zero());
            let sign = if a.leading().unwrap() < &0.into() { -1 } else { 1 };
            let c = a.content() * sign;
            prop_assert_eq!(a.primitive_part().scale(&c), a);
        }

        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), m in small_poly()) {
            let (a, b) = (&a * &m, &b * &m);
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(a.exact_div(&g).is_ok());
            prop_assert!(b.exact_div(&g).is_ok());
            prop_assert!(g.deg() >= m.deg());
        }
    }
}
