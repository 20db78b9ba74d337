use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qcalc_core::fodc::verify_calculus;
use qcalc_core::oprep::{build_f, build_rep, faithfulness_rank, omega, FSpec, LatticeWindow, WChoice};
use qcalc_core::qscalar::parse_rational;
use qcalc_core::{make_calculus, AlgebraElement, CalculusId};

fn normal_form(c: &mut Criterion) {
    let x: AlgebraElement = "a^2*d*b + c*d^2*a - q*b*c".parse().unwrap();
    let y: AlgebraElement = "d^3*a^2 + b*c".parse().unwrap();
    c.bench_function("normal_form/product", |b| b.iter(|| black_box(&x) * black_box(&x)));
    c.bench_function("normal_form/power", |b| b.iter(|| black_box(&y).pow(3)));
}

fn symbolic(c: &mut Criterion) {
    let three = make_calculus(CalculusId::ThreeD);
    let four = make_calculus(CalculusId::FourDPlus);
    let g: AlgebraElement = "(q^2*a+d-q^2-1)*b".parse().unwrap();
    c.bench_function("omega_gamma/4D+", |b| b.iter(|| four.omega_gamma(black_box(&g)).unwrap()));
    c.bench_function("verify_calculus/3D", |b| b.iter(|| verify_calculus(black_box(&three))));
}

fn operators(c: &mut Criterion) {
    let w = LatticeWindow::new(12, -14, 14, parse_rational("1/2").unwrap()).unwrap();
    let rep = build_rep(&w, WChoice::BilateralShift, None).unwrap();
    let f = build_f(&rep, &FSpec::standard(rep.q, &[])).unwrap();
    let x: AlgebraElement = "q*b*c".parse().unwrap();
    let calc = make_calculus(CalculusId::ThreeD);
    c.bench_function("build_rep/n12_k29", |b| {
        b.iter(|| build_rep(black_box(&w), WChoice::BilateralShift, None).unwrap())
    });
    c.bench_function("omega/qbc", |b| b.iter(|| omega(&rep, &f, black_box(&x)).unwrap()));
    let mut g = c.benchmark_group("faithfulness");
    g.sample_size(10);
    g.bench_function("rank_deg2", |b| b.iter(|| faithfulness_rank(&rep, &f, &calc, 2).unwrap()));
    g.finish();
}

criterion_group!(benches, normal_form, symbolic, operators);
criterion_main!(benches);
