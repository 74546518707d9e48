mod common;

use common::gen;
use halfbranch::exactnum::{int, ExtValue, Sign};
use halfbranch::polyring::{parse_polynomial, substitute, Poly2, RatFunc2};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(seed: u64) -> Poly2 {
    gen::poly(&mut ChaCha8Rng::seed_from_u64(seed), 4, 5, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let f = poly(seed);
        prop_assert_eq!(parse_polynomial(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn order_is_multiplicative(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (poly(a), poly(b));
        let sum = f.order_at_origin().zip(g.order_at_origin()).map(|(p, q)| p + q);
        prop_assert_eq!((&f * &g).order_at_origin(), sum);
    }

    #[test]
    fn substitution_is_a_ring_map(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), d in any::<u64>()) {
        let (f, g) = (poly(a), poly(b));
        let px = RatFunc2::from(poly(c));
        let py = RatFunc2::from(poly(d));
        prop_assert_eq!(substitute(&(&f * &g), &px, &py), &substitute(&f, &px, &py) * &substitute(&g, &px, &py));
        prop_assert_eq!(substitute(&(&f + &g), &px, &py), &substitute(&f, &px, &py) + &substitute(&g, &px, &py));
    }

    #[test]
    fn compose_agrees_with_eval(a in any::<u64>(), c in any::<u64>(), d in any::<u64>(), x in -5i64..5, y in -5i64..5) {
        let (f, px, py) = (poly(a), poly(c), poly(d));
        let (x, y) = (int(x), int(y));
        prop_assert_eq!(f.compose(&px, &py).eval(&x, &y), f.eval(&px.eval(&x, &y), &py.eval(&x, &y)));
    }

    #[test]
    fn valuation_axioms(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let alpha = gen::branch(&mut ChaCha8Rng::seed_from_u64(seed));
        let (f, g) = (poly(a), poly(b));
        let (vf, vg) = (alpha.value(&f), alpha.value(&g));
        prop_assert_eq!(alpha.value(&(&f * &g)), vf.clone() + vg.clone());
        let vs = alpha.value(&(&f + &g));
        prop_assert!(vs >= vf.clone().min(vg.clone()));
        if vf != vg {
            prop_assert_eq!(vs, vf.min(vg));
        }
    }

    #[test]
    fn sign_is_multiplicative(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let alpha = gen::branch(&mut ChaCha8Rng::seed_from_u64(seed));
        let (f, g) = (poly(a), poly(b));
        let sf = alpha.sign(&f).as_i8();
        let sg = alpha.sign(&g).as_i8();
        prop_assert_eq!(alpha.sign(&(&f * &g)), Sign::from_i8(sf * sg));
    }

    #[test]
    fn units_have_value_zero(seed in any::<u64>(), a in any::<u64>(), c in 1i64..9) {
        let alpha = gen::branch(&mut ChaCha8Rng::seed_from_u64(seed));
        let f = poly(a);
        let unit = &(&f * &Poly2::x()) + &Poly2::constant(int(c));
        prop_assert_eq!(alpha.value(&unit), ExtValue::zero());
    }
}
