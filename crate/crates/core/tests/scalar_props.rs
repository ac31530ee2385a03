//! Field axioms, canonical forms and text round trips for `Q(q, rho)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qonsager::{parse_scalar, MultiPoly, ScalarFraction};

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-4i64..=4, 0usize..4, 0usize..3), 0..5).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(), |acc, (c, eq, er)| acc.add(&MultiPoly::monomial(BigInt::from(c), eq, er)))
    })
}

fn frac_strategy() -> impl Strategy<Value = ScalarFraction> {
    (poly_strategy(), poly_strategy()).prop_filter_map("nonzero denominator", |(n, d)| ScalarFraction::new(n, d).ok())
}

fn nonzero_frac() -> impl Strategy<Value = ScalarFraction> {
    frac_strategy().prop_filter("nonzero", |f| !f.is_zero())
}

fn same_form(a: &ScalarFraction, b: &ScalarFraction) -> bool {
    a.numer() == b.numer() && a.denom() == b.denom()
}

/// Independent check: evaluate both sides at a few rational points.
fn agree_numerically(a: &ScalarFraction, b: &ScalarFraction) -> bool {
    let pts = [(7, 3, 5, 2), (-11, 4, 13, 7), (19, 5, -3, 8)];
    pts.iter().all(|&(qn, qd, rn, rd)| {
        let q = BigRational::new(qn.into(), qd.into());
        let r = BigRational::new(rn.into(), rd.into());
        match (a.eval(&q, &r), b.eval(&q, &r)) {
            (Ok(x), Ok(y)) => x == y,
            _ => true,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in frac_strategy(), b in frac_strategy(), c in frac_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!(agree_numerically(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
    }

    #[test]
    fn canonical_form_is_unique(a in frac_strategy(), b in frac_strategy()) {
        let back = &(&a + &b) - &b;
        prop_assert!(same_form(&back, &a), "{} vs {}", back, a);
    }

    #[test]
    fn inverses(a in nonzero_frac()) {
        prop_assert!((&a * &a.recip().unwrap()).is_one());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn text_round_trip(a in frac_strategy()) {
        let text = a.to_string();
        let back = parse_scalar(&text).unwrap();
        prop_assert!(same_form(&back, &a));
        let unspaced: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert!(same_form(&parse_scalar(&unspaced).unwrap(), &a));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in frac_strategy(), b in frac_strategy()) {
        let q = BigRational::new(5.into(), 3.into());
        let r = BigRational::new((-2).into(), 7.into());
        if let (Ok(x), Ok(y), Ok(s), Ok(p)) = (a.eval(&q, &r), b.eval(&q, &r), (&a + &b).eval(&q, &r), (&a * &b).eval(&q, &r)) {
            prop_assert_eq!(s, &x + &y);
            prop_assert_eq!(p, x * y);
        }
    }
}
