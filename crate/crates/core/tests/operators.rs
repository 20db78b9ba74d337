//! Lattice representations: masking, *-property, covariance and refusals.

use qcalc_core::oprep::{
    bimodule_check, build_f, build_rep, f_symmetry, growth_probe, interior_mask, regular_rep,
    star_rep_check, verify_omega_vanishing, FSpec, LatticeWindow, OpSum, Representation, VSector,
    WChoice,
};
use qcalc_core::qscalar::parse_rational;
use qcalc_core::suq2::star;
use qcalc_core::{make_calculus, AlgebraElement, CalculusId, Error, Monomial};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn window() -> LatticeWindow {
    LatticeWindow::new(12, -14, 14, parse_rational("1/2").unwrap()).unwrap()
}

fn rep(w: WChoice, v: Option<VSector>) -> Representation {
    build_rep(&window(), w, v).unwrap()
}

#[test]
fn interior_mask_bounds() {
    let m = interior_mask(&window(), [6, 6]).unwrap();
    let r = rep(WChoice::BilateralShift, None);
    assert!(!m.indices(&r.layout).is_empty());
    let err = interior_mask(&window(), [0, 15]).unwrap_err();
    assert!(matches!(err, Error::Window(_)));
}

#[test]
fn star_representation_on_random_monomials() {
    let r = rep(WChoice::BilateralShift, None);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let monos = Monomial::up_to_degree(4);
    for m in monos.choose_multiple(&mut rng, 100) {
        let x = AlgebraElement::monomial(*m);
        let mut s = OpSum::single(r.represent(&star(&x)).unwrap());
        s.push_re(-1.0, r.monomial(m).unwrap().adjoint());
        let mask = interior_mask(r.window(), s.reach()).unwrap();
        assert!(s.residual(&mask).scaled < 1e-10, "x = {x}");
    }
    assert!(star_rep_check(&r, 2, 1e-10).unwrap().pass);
}

#[test]
fn standard_example_with_convolution_is_symmetric_and_covariant() {
    let r = rep(WChoice::BilateralShift, None);
    let f = build_f(&r, &FSpec::standard(r.q, &[(-2, 0.1), (-1, 0.3), (1, 0.3), (2, 0.1)])).unwrap();
    assert!(f_symmetry(&r, &f, 1e-12).unwrap().pass);
    let calc = make_calculus(CalculusId::ThreeD);
    assert!(verify_omega_vanishing(&r, &f, &calc, "standard", 1e-10).unwrap().all_pass());
    assert!(bimodule_check(&r, &f, &calc, 1e-10).unwrap().all_pass());
}

#[test]
fn phased_shift_keeps_the_standard_example() {
    let r = rep(WChoice::PhasedShift { theta: 0.7 }, None);
    let f = build_f(&r, &FSpec::standard(r.q, &[])).unwrap();
    let calc = make_calculus(CalculusId::ThreeD);
    assert!(verify_omega_vanishing(&r, &f, &calc, "phased", 1e-10).unwrap().all_pass());
}

#[test]
fn v_sector_block_is_checked() {
    let v = VSector {
        phases: vec![0.3, 1.1, -2.0],
        q_diag: vec![1.0, -0.5, 2.0],
    };
    let r = rep(WChoice::BilateralShift, Some(v));
    let f = build_f(&r, &FSpec::standard(r.q, &[])).unwrap();
    let calc = make_calculus(CalculusId::ThreeD);
    let out = verify_omega_vanishing(&r, &f, &calc, "v-sector", 1e-10).unwrap();
    assert_eq!(out.len(), 6);
    assert!(out.all_pass());
    let b_inv: AlgebraElement = "b^-1".parse().unwrap();
    assert!(matches!(r.represent(&b_inv), Err(Error::LocalizationMode(_))));
}

#[test]
fn identity_w_is_refused_by_name() {
    let r = rep(WChoice::Identity, None);
    let err = build_f(&r, &FSpec::standard(r.q, &[])).unwrap_err();
    match err {
        Error::SpecViolation { condition, .. } => assert_eq!(condition, "w T w* = q T"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn gram_scales_quadratically() {
    let q = parse_rational("1/2").unwrap();
    let base = regular_rep(&q, 20, -6, 6, 1.0, 1.0).unwrap().gram().unwrap();
    let scaled = regular_rep(&q, 20, -6, 6, 3.0, 0.5).unwrap().gram().unwrap();
    let e = |g: &qcalc_core::oprep::GramReport, i: usize| g.entries[i][i][0];
    assert!((e(&scaled, 0) / e(&base, 0) - 9.0).abs() < 1e-12);
    assert!((e(&scaled, 1) / e(&base, 1) - 0.25).abs() < 1e-12);
    assert!((e(&scaled, 2) / e(&base, 2) - 9.0).abs() < 1e-12);
}

#[test]
fn empty_growth_sequence() {
    let g = growth_probe(&parse_rational("1/2").unwrap(), 8, 8, &[], false).unwrap();
    assert!(g.omega_b_sup.is_empty() && g.omega_b_ratios.is_empty());
}
