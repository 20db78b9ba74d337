//! Field axioms of `Q(q)` and evaluation at rational points.

use proptest::prelude::*;
use qcalc_core::qscalar::parse_rational;
use qcalc_core::ScalarQ;

fn scalar() -> impl Strategy<Value = ScalarQ> {
    (-4i64..=4, -4i64..=4, -3i32..=3, 1i64..=3, 0i32..=2).prop_map(|(a, b, e, c, f)| {
        let src = format!("({a} + {b}*q^{e})/({c} + q^{})", f + 1);
        src.parse().unwrap()
    })
}

proptest! {
    #[test]
    fn ring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(x in scalar(), y in scalar()) {
        prop_assume!(!y.is_zero());
        prop_assert_eq!(&x.try_div(&y).unwrap() * &y, x);
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in scalar(), y in scalar()) {
        let t = parse_rational("1/3").unwrap();
        let ev = |s: &ScalarQ| s.evaluate_at(&t).unwrap();
        prop_assert_eq!(ev(&(&x * &y)), ev(&x) * ev(&y));
        prop_assert_eq!(ev(&(&x + &y)), ev(&x) + ev(&y));
    }

    #[test]
    fn display_round_trips(x in scalar()) {
        let back: ScalarQ = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn lambda_identities() {
    let lam = ScalarQ::lambda();
    let q = ScalarQ::q();
    let expect: ScalarQ = "q - q^-1".parse().unwrap();
    assert_eq!(lam, expect);
    assert_eq!(&(&lam * &q) + &ScalarQ::one(), "q^2".parse().unwrap());
}
