mod common;

use common::{generator, nonzero_scalar, poly, word_poly};
use jordan_core::freealg::{normalize, normalize_with, Rules};
use jordan_core::NCPoly;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normalization_is_idempotent(p in poly()) {
        for rules in [Rules::NONE, Rules::ALL, Rules { two_sided_t0: true, central_d: false }] {
            let once = normalize_with(&p, rules).unwrap();
            prop_assert_eq!(normalize_with(&once, rules).unwrap(), once);
        }
    }

    #[test]
    fn normalization_is_linear(p in poly(), q in poly(), c in nonzero_scalar()) {
        let lhs = normalize(&(&p + &q.scale(&c))).unwrap();
        let rhs = &normalize(&p).unwrap() + &normalize(&q).unwrap().scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_additive(p in poly(), q in poly(), g in generator(), r in word_poly()) {
        let lhs = (&p + &q).substitute(g, &r).unwrap();
        let rhs = &p.substitute(g, &r).unwrap() + &q.substitute(g, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_multiplicative(p in poly(), q in poly(), g in generator(), r in word_poly()) {
        let lhs = (&p * &q).substitute(g, &r).unwrap();
        let rhs = &p.substitute(g, &r).unwrap() * &q.substitute(g, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_divide_round_trips(p in poly(), c in nonzero_scalar()) {
        prop_assert_eq!(p.scale(&c).exact_divide(&c).unwrap(), p);
    }

    #[test]
    fn exact_divide_rejects_non_multiples(p in poly(), k in 2i64..7) {
        let c = jordan_core::ScalarPoly::constant(k);
        let bumped = &p.scale(&c) + &NCPoly::x();
        prop_assert!(bumped.exact_divide(&c).is_err());
    }

    #[test]
    fn polarization_matches_parity_oracle(p in poly(), g in generator()) {
        // p(g) + p(−g) = 2·even part
        let flipped = p.substitute(g, &-NCPoly::gen(g)).unwrap();
        let even = p.polarize_even(g);
        prop_assert_eq!(&p + &flipped, even.scale(&2.into()));
        prop_assert_eq!(even.polarize_even(g), even.clone());
        prop_assert!(even.terms().all(|(m, _)| m.degree_in(g) % 2 == 0));
    }
}
