//! Hopf *-algebra axioms on all PBW monomials up to degree 3.

use std::collections::BTreeMap;

use qcalc_core::suq2::{antipode, antipode_any, coproduct, counit, star};
use qcalc_core::{AlgebraElement, Monomial, ScalarQ};

type Triple = BTreeMap<(Monomial, Monomial, Monomial), ScalarQ>;

fn insert(t: &mut Triple, k: (Monomial, Monomial, Monomial), c: ScalarQ) {
    let e = t.entry(k).or_insert_with(ScalarQ::zero);
    *e = &*e + &c;
    if e.is_zero() {
        t.remove(&k);
    }
}

fn samples() -> Vec<AlgebraElement> {
    Monomial::up_to_degree(3).into_iter().map(AlgebraElement::monomial).collect()
}

#[test]
fn coassociativity() {
    for x in samples() {
        let (mut left, mut right) = (Triple::new(), Triple::new());
        for ((l, r), c) in coproduct(&x).unwrap().terms() {
            for ((l1, l2), c1) in coproduct(&AlgebraElement::monomial(*l)).unwrap().terms() {
                insert(&mut left, (*l1, *l2, *r), c * c1);
            }
            for ((r1, r2), c2) in coproduct(&AlgebraElement::monomial(*r)).unwrap().terms() {
                insert(&mut right, (*l, *r1, *r2), c * c2);
            }
        }
        assert_eq!(left, right, "x = {x}");
    }
}

#[test]
fn counit_laws() {
    for x in samples() {
        let (mut left, mut right) = (AlgebraElement::zero(), AlgebraElement::zero());
        for ((l, r), c) in coproduct(&x).unwrap().terms() {
            let el = counit(&AlgebraElement::monomial(*l)).unwrap();
            let er = counit(&AlgebraElement::monomial(*r)).unwrap();
            left = &left + &AlgebraElement::monomial(*r).scale(&(c * &el));
            right = &right + &AlgebraElement::monomial(*l).scale(&(c * &er));
        }
        assert_eq!(left, x);
        assert_eq!(right, x);
    }
}

#[test]
fn antipode_laws_on_both_sides() {
    for x in samples() {
        let eps = AlgebraElement::one().scale(&counit(&x).unwrap());
        let t = coproduct(&x).unwrap();
        assert_eq!(t.map_legs(antipode_any, |y| y.clone()).multiply(), eps, "x = {x}");
        assert_eq!(t.map_legs(|y| y.clone(), antipode_any).multiply(), eps, "x = {x}");
    }
}

#[test]
fn coproduct_and_antipode_respect_products() {
    let xs = samples();
    for x in xs.iter().take(15) {
        for y in xs.iter().take(15) {
            let xy = x * y;
            assert_eq!(coproduct(&xy).unwrap(), coproduct(x).unwrap().mul(&coproduct(y).unwrap()));
            assert_eq!(antipode(&xy).unwrap(), &antipode(y).unwrap() * &antipode(x).unwrap());
        }
    }
}

#[test]
fn antipode_star_squares_to_identity() {
    for x in samples() {
        let once = star(&antipode(&star(&antipode(&x).unwrap())).unwrap());
        assert_eq!(once, x, "x = {x}");
        assert_eq!(star(&star(&x)), x);
    }
}

#[test]
fn counit_is_a_character() {
    let xs = samples();
    for x in xs.iter().take(20) {
        for y in xs.iter().take(20) {
            let lhs = counit(&(x * y)).unwrap();
            let rhs = &counit(x).unwrap() * &counit(y).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
    assert_eq!(counit(&"b".parse().unwrap()).unwrap(), ScalarQ::zero());
}
