use anyhow::Result;
use qcalc_core::fodc::{quotient_consistency, verify_calculus, verify_omega_words};
use qcalc_core::oprep::{
    bimodule_check, build_f, build_rep, decompose_r, disk_rep, f_symmetry, faithfulness_rank, growth_probe,
    invariant_forms_check, materialize, reconstruct_t_check, regular_rep, spec_conditions, sphere_commutator_check,
    star_rep_check, verify_omega_vanishing, FSpec, IdentityResidual, LatticeWindow, RSpec, Representation, TSpec,
    WChoice,
};
use qcalc_core::qscalar::parse_rational;
use qcalc_core::sphere::{
    solve_dependency, sphere_basis, verify_gamma2_relations, verify_sphere_algebra, verify_sphere_structure,
    Dependency, SphereGenerators,
};
use qcalc_core::{make_calculus, AlgebraElement, CalculusId, CheckRecord, Report, ScalarQ};

use crate::config::Settings;

/// Precision of the Haar and Gram checks.
const GRAM_TOL: f64 = 1e-12;
/// Relative band around the expected growth ratio.
const GROWTH_BAND: f64 = 0.05;
const OPERATOR_LEVELS: usize = 12;
const REGULAR_LEVELS: usize = 40;
const GROWTH_K_MINS: [i64; 9] = [-6, -7, -8, -9, -10, -11, -12, -13, -14];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Symbolic,
    Operator,
    Probe,
    Gram,
    Sphere,
    Disk,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Symbolic,
        Suite::Operator,
        Suite::Probe,
        Suite::Gram,
        Suite::Sphere,
        Suite::Disk,
    ];

    pub fn run(self, s: &Settings) -> Result<Report> {
        match self {
            Suite::Symbolic => symbolic(s),
            Suite::Operator => operator(s),
            Suite::Probe => probe(s),
            Suite::Gram => gram(s),
            Suite::Sphere => sphere(s),
            Suite::Disk => disk(s),
        }
    }
}

fn window(s: &Settings, default_levels: usize) -> Result<LatticeWindow> {
    let q = parse_rational(&s.q)?;
    Ok(LatticeWindow::new(s.n_max.unwrap_or(default_levels), s.k_min, s.k_max, q)?)
}

fn standard(s: &Settings) -> Result<Representation> {
    Ok(build_rep(&window(s, OPERATOR_LEVELS)?, WChoice::BilateralShift, None)?)
}

fn condition_record(rep: &Representation, c: &qcalc_core::oprep::ConditionCheck, variant: &str) -> CheckRecord {
    IdentityResidual {
        residual: c.residual,
        mask_radius: c.mask_radius,
    }
    .record(c.condition.clone(), rep, qcalc_core::oprep::CONDITION_TOL)
    .variant(variant)
}

pub fn symbolic(s: &Settings) -> Result<Report> {
    let ids: Vec<CalculusId> = match s.calculus {
        Some(id) => vec![id],
        None => CalculusId::ALL.to_vec(),
    };
    let mut out = Report::new();
    for id in ids {
        let calc = make_calculus(id);
        out.extend(verify_calculus(&calc));
        if let Some(p) = id.parent() {
            let check = format!("{} equals {} with w4 deleted, degree <= 3", id.name(), p.name());
            let rec = match quotient_consistency(&calc, &make_calculus(p), 3)? {
                None => CheckRecord::new("fodc", check, true),
                Some(w) => CheckRecord::new("fodc", check, false).witness(w),
            };
            out.push(rec.calculus(id.name()));
        }
        if id == CalculusId::ThreeD {
            out.extend(verify_omega_words());
        }
    }
    Ok(out)
}

pub fn operator(s: &Settings) -> Result<Report> {
    let rep = standard(s)?;
    let tol = s.tol;
    let calc = make_calculus(CalculusId::ThreeD);
    let spec = FSpec::standard(rep.q, &s.alpha_r);
    let variant = spec.variant.name();
    let m = materialize(&rep, &spec);
    let mut out = Report::new();
    for c in spec_conditions(&rep, &spec, &m)? {
        out.push(condition_record(&rep, &c, &variant));
    }
    let f = build_f(&rep, &spec)?;
    out.push(f_symmetry(&rep, &f, tol)?.variant(variant.clone()));
    out.extend(verify_omega_vanishing(&rep, &f, &calc, &variant, tol)?);
    out.extend(invariant_forms_check(&rep, &f, &m, tol)?);
    out.extend(bimodule_check(&rep, &f, &calc, tol)?);
    out.push(star_rep_check(&rep, 3, tol)?);
    for c in decompose_r(&rep, &m.r())?.checks {
        out.push(condition_record(&rep, &c, "decompose R"));
    }

    let full = faithfulness_rank(&rep, &f, &calc, 2)?;
    out.push(
        CheckRecord::new("oprep", "rank of pi(m) Omega_j, deg m <= 2", full.full)
            .calculus("3D")
            .detail(format!("rank {} of {} columns ({} monomials)", full.rank, full.columns, full.monomials)),
    );
    let no_r = FSpec {
        r_prime: RSpec::Zero,
        ..spec.clone()
    };
    let f0 = build_f(&rep, &no_r)?;
    let dropped = faithfulness_rank(&rep, &f0, &calc, 2)?;
    out.push(
        CheckRecord::new(
            "oprep",
            "rank drop with R' = 0 equals one form block",
            full.rank - dropped.rank == dropped.monomials,
        )
        .calculus("3D")
        .detail(format!("rank {} with R', {} without", full.rank, dropped.rank)),
    );

    let eps: Vec<i32> = match s.epsilon {
        Some(e) => vec![e],
        None => vec![1, -1],
    };
    for e in eps {
        let spec = FSpec::signed(rep.q, e);
        let f = build_f(&rep, &spec)?;
        let id = if e > 0 { CalculusId::Q3Plus } else { CalculusId::Q3Minus };
        out.extend(verify_omega_vanishing(&rep, &f, &make_calculus(id), &spec.variant.name(), tol)?);
    }
    Ok(out)
}

pub fn probe(s: &Settings) -> Result<Report> {
    let q = parse_rational(&s.q)?;
    let n_max = s.n_max.unwrap_or(OPERATOR_LEVELS);
    let qf = qcalc_core::qscalar::rational_to_f64(&q);
    let mut out = Report::new();
    for (control, target) in [(false, 1.0 / qf), (true, 1.0)] {
        let g = growth_probe(&q, n_max, s.k_max, &GROWTH_K_MINS, control)?;
        let worst = g
            .omega_b_ratios
            .iter()
            .map(|r| (r / target - 1.0).abs())
            .fold(0.0f64, f64::max);
        let name = if control {
            "bounded control: Omega(b) sup ratio = 1"
        } else {
            "Omega(b) sup ratio = q^-1"
        };
        let ratios: Vec<String> = g.omega_b_ratios.iter().map(|r| format!("{r:.4}")).collect();
        let d_ratios: Vec<String> = g.d_b_ratios.iter().map(|r| format!("{r:.4}")).collect();
        out.push(
            CheckRecord::new("oprep", name, worst < GROWTH_BAND)
                .variant(if control { "control" } else { "standard" })
                .residual(worst, GROWTH_BAND)
                .detail(format!(
                    "k_min {:?}; ratios [{}]; d(b) ratios [{}]",
                    g.k_min,
                    ratios.join(", "),
                    d_ratios.join(", ")
                )),
        );
    }
    Ok(out)
}

pub fn gram(s: &Settings) -> Result<Report> {
    let q = parse_rational(&s.q)?;
    let n_max = s.n_max.unwrap_or(REGULAR_LEVELS);
    let reg = regular_rep(&q, n_max, s.k_min, s.k_max, s.alpha, s.beta)?;
    let qf = reg.rep.q;
    let lam = qf - 1.0 / qf;
    let rec = |name: &str, err: f64| {
        CheckRecord::new("oprep", name, err < GRAM_TOL)
            .calculus("3D")
            .residual(err, GRAM_TOL)
            .window(reg.rep.window().describe())
    };
    let mut out = Report::new();
    out.push(rec("||phi_h|| = 1", (reg.norm() - 1.0).abs()).detail(format!(
        "{} levels kept; printed prefactor gives norm {:.6}",
        reg.haar_levels, reg.printed_norm
    )));
    for x in ["a", "b", "c"] {
        let v = reg.h(&x.parse::<AlgebraElement>()?)?;
        out.push(rec(&format!("h({x}) = 0"), v.norm()));
    }
    let g = reg.gram()?;
    out.push(rec("Gram off-diagonal = 0", g.max_off_diagonal));
    out.push(rec("Gram diagonal is real", g.max_imag_diagonal));
    let d = g.diagonal_constants;
    out.push(rec("<w0,w0> = <w2,w2>", (d[0] - d[2]).abs()));

    let scaled = |alpha: f64, beta: f64| -> Result<[f64; 3]> {
        Ok(regular_rep(&q, n_max, s.k_min, s.k_max, alpha, beta)?.gram()?.diagonal_constants)
    };
    let a2 = scaled(2.0 * s.alpha, s.beta)?;
    let b2 = scaled(s.alpha, 2.0 * s.beta)?;
    // Constants are normalized by α², β², so quadratic scaling leaves them fixed.
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(f64::MIN_POSITIVE);
    out.push(rec("<w0,w0> quadratic in alpha", rel(a2[0], d[0]).max(rel(a2[2], d[2]))));
    out.push(rec("<w1,w1> quadratic in beta", rel(b2[1], d[1])));
    let lq = lam * lam * qf * qf;
    out.push(
        rec(
            "Gram diagonal = lambda^2 q^2 (alpha^2, beta^2, alpha^2)",
            d.iter().map(|c| rel(*c, lq)).fold(0.0, f64::max),
        )
        .detail(format!(
            "constants [{:.12}, {:.12}, {:.12}]; printed claim alpha^2, beta^2 differs by the factor lambda^2 q^2 = {lq:.12}",
            d[0], d[1], d[2]
        )),
    );
    Ok(out)
}

/// `(z₊, z₋, z₀) = (q² z x₋, z x₊, -q z x₀)` for a few fixed `z`.
fn dependent_triples() -> Vec<(String, AlgebraElement)> {
    let mut zs: Vec<(String, AlgebraElement)> = sphere_basis(1)
        .into_iter()
        .map(|(n, z)| (if n.is_empty() { "1".to_string() } else { n }, z))
        .collect();
    let g = SphereGenerators::new();
    zs.push(("xp + 2*y0 - 1".into(), &(&g.x_plus + &g.y0.scale(&ScalarQ::from_int(2))) - &AlgebraElement::one()));
    zs
}

pub fn sphere(s: &Settings) -> Result<Report> {
    let mut out = Report::new();
    out.extend(verify_sphere_structure());
    out.extend(verify_sphere_algebra());
    out.extend(verify_gamma2_relations());

    let g = SphereGenerators::new();
    let q2 = ScalarQ::q_pow(2);
    for (name, z) in dependent_triples() {
        let zp = (&z * &g.x_minus).scale(&q2);
        let zm = &z * &g.x_plus;
        let z0 = (&z * &g.x0).scale(&-ScalarQ::q());
        let check = format!("dependent triple from z = {name} recovers z");
        let rec = match solve_dependency(&zp, &zm, &z0, s.degree)? {
            Dependency::Dependent { z: found, .. } => CheckRecord::new("sphere", check, found == z),
            Dependency::Independent { .. } => CheckRecord::new("sphere", check, false).detail("reported independent"),
        };
        out.push(rec);
    }
    let one = AlgebraElement::one();
    let zero = AlgebraElement::zero();
    let rejected = matches!(
        solve_dependency(&one, &zero, &zero, s.degree)?,
        Dependency::Independent { .. }
    );
    out.push(CheckRecord::new("sphere", "triple (1, 0, 0) is independent", rejected));

    let rep = standard(s)?;
    let spec = FSpec::standard(rep.q, &s.alpha_r);
    let f = build_f(&rep, &spec)?;
    let m = materialize(&rep, &spec);
    out.extend(sphere_commutator_check(&rep, &f, &m, s.tol)?);
    out.extend(reconstruct_t_check(&rep, &f, &m, s.tol)?);
    Ok(out)
}

pub fn disk(s: &Settings) -> Result<Report> {
    let w = window(s, OPERATOR_LEVELS)?;
    let d = disk_rep(
        &w,
        TSpec::ShiftQk {
            scale: 1.0,
            copy_shift: false,
        },
    )?;
    Ok(d.verify(s.tol)?)
}
