use ellreg::qseries::{identity_equal, FormalSeries};
use proptest::prelude::*;

const ORDER: i64 = 24 * 12;

fn series(min_exp: i64) -> impl Strategy<Value = FormalSeries> {
    prop::collection::vec((min_exp..ORDER, -9i64..10), 0..12)
        .prop_map(|t| FormalSeries::from_int_terms(ORDER, t))
}

fn unit() -> impl Strategy<Value = FormalSeries> {
    (prop::sample::select(vec![-3i64, -1, 1, 2, 5]), series(1))
        .prop_map(|(c, s)| &FormalSeries::from_int_terms(ORDER, [(0, c)]) + &s)
}

proptest! {
    #[test]
    fn multiplication_is_commutative_and_associative(a in series(0), b in series(0), c in series(0)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in series(0), b in series(0), c in series(0)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn reciprocal_inverts(u in unit()) {
        let r = u.reciprocal().unwrap();
        prop_assert_eq!(&u * &r, FormalSeries::one(ORDER));
    }

    #[test]
    fn powers_add_exponents(u in unit(), m in -3i64..4, n in -3i64..4) {
        prop_assert_eq!(u.pow(m + n).unwrap(), &u.pow(m).unwrap() * &u.pow(n).unwrap());
    }

    #[test]
    fn identity_check_finds_first_difference(a in series(0), e in 0i64..ORDER, bump in 1i64..5) {
        let b = &a + &FormalSeries::from_int_terms(ORDER, [(e, bump)]);
        prop_assert_eq!(identity_equal(&a, &a, ORDER).unwrap().first_mismatch, None);
        prop_assert_eq!(identity_equal(&a, &b, ORDER).unwrap().first_mismatch, Some(e));
    }
}
