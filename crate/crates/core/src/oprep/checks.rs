use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fodc::{CalculusDescriptor, OneForm};
use crate::report::{CheckRecord, Report};
use crate::suq2::{antipode, coproduct, counit, star, AlgebraElement, Gen, Monomial};

use super::fspec::{assemble_f, build_f, materialize, FSpec, Materialized, RSpec, TSpec, Variant};
use super::lattice::{interior_mask, LatticeWindow};
use super::operator::{LatticeOperator, OpSum, Residual};
use super::rep::{build_rep, Representation, WChoice};

const SUITE: &str = "oprep";

/// Default tolerance of operator identities.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative singular-value threshold of the numeric rank.
pub const RANK_THRESHOLD: f64 = 1e-8;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// An operator identity `Σ = 0` measured on its interior mask.
#[derive(Clone, Copy, Debug)]
pub struct IdentityResidual {
    pub residual: Residual,
    pub mask_radius: [usize; 2],
}

impl IdentityResidual {
    /// Pass criterion: the cancellation is exact up to relative round-off.
    pub fn passes(&self, tol: f64) -> bool {
        self.residual.scaled < tol
    }

    pub fn record(&self, check: impl Into<String>, rep: &Representation, tol: f64) -> CheckRecord {
        CheckRecord::new(SUITE, check, self.passes(tol))
            .residual(self.residual.scaled, tol)
            .mask(self.mask_radius)
            .window(rep.window().describe())
            .detail(format!("absolute {:.3e}", self.residual.absolute))
    }
}

/// Interior residual of `Σ = 0` with the mask sized from the sum's reach.
pub fn identity_residual(rep: &Representation, sum: &OpSum) -> Result<IdentityResidual> {
    let radius = sum.reach();
    let mask = interior_mask(rep.window(), radius)?;
    Ok(IdentityResidual {
        residual: sum.residual(&mask),
        mask_radius: radius,
    })
}

/// `Σ π(S(x_(1))) F π(x_(2)) - ε(x)F`, kept term by term.
pub fn omega_sum(rep: &Representation, f: &LatticeOperator, x: &AlgebraElement) -> Result<OpSum> {
    let qv = &rep.window().q_value;
    let mut out = OpSum::new();
    for ((l, r), c) in coproduct(x)?.terms() {
        let c = c.evaluate_f64(qv)?;
        let s = antipode(&AlgebraElement::monomial(*l))?;
        let left = rep.represent(&s)?;
        out.push_re(c, &(&left * f) * &rep.monomial(r)?);
    }
    let e = counit(x)?.evaluate_f64(qv)?;
    if e != 0.0 {
        out.push_re(-e, f.clone());
    }
    Ok(out)
}

/// `Ω_{π,F}(x)`.
pub fn omega(rep: &Representation, f: &LatticeOperator, x: &AlgebraElement) -> Result<LatticeOperator> {
    Ok(omega_sum(rep, f, x)?
        .total()
        .unwrap_or_else(|| LatticeOperator::zero(&rep.layout)))
}

/// `i(Fπ(x) - π(x)F)` as a two-term sum.
pub fn commutator_d_sum(rep: &Representation, f: &LatticeOperator, x: &AlgebraElement) -> Result<OpSum> {
    let px = rep.represent(x)?;
    let mut s = OpSum::new();
    s.push(I, f * &px);
    s.push(-I, &px * f);
    Ok(s)
}

/// `d_{π,F}(x) = [iF, π(x)]`.
pub fn commutator_d(rep: &Representation, f: &LatticeOperator, x: &AlgebraElement) -> Result<LatticeOperator> {
    Ok(commutator_d_sum(rep, f, x)?.total().expect("two terms"))
}

/// `Ω(x) = 0` for every generator of the right ideal.
pub fn verify_omega_vanishing(
    rep: &Representation,
    f: &LatticeOperator,
    calc: &CalculusDescriptor,
    variant: &str,
    tol: f64,
) -> Result<Report> {
    let mut rep_out = Report::new();
    for (name, g) in &calc.right_ideal {
        let r = identity_residual(rep, &omega_sum(rep, f, g)?)?;
        rep_out.push(
            r.record(format!("omega({name}) = 0"), rep, tol)
                .calculus(calc.id.name())
                .variant(variant),
        );
    }
    Ok(rep_out)
}

/// `ρ(ω_i) = iΩ(g)/s` for every basis form, as sums.
pub fn form_images(
    rep: &Representation,
    f: &LatticeOperator,
    calc: &CalculusDescriptor,
) -> Result<Vec<OpSum>> {
    let qv = &rep.window().q_value;
    let mut out = Vec::new();
    for i in 0..calc.dim() {
        let mut found = None;
        for g in Gen::ALL {
            if let Some(coeffs) = calc.omega_gen[g.index()].invariant_coeffs() {
                if coeffs.len() == 1 {
                    if let Some(s) = coeffs.get(&i) {
                        found = Some((g, s.evaluate_f64(qv)?));
                        break;
                    }
                }
            }
        }
        let (g, s) = found.ok_or_else(|| {
            Error::Unsupported(format!("no generator maps to a multiple of {} in {}", calc.form_names()[i], calc.id))
        })?;
        out.push(omega_sum(rep, f, &AlgebraElement::gen(g))?.scale(I / s));
    }
    Ok(out)
}

/// Operator image `Σ π(x_i) ρ(ω_i)` of a one-form.
pub fn form_image(rep: &Representation, images: &[OpSum], form: &OneForm) -> Result<OpSum> {
    let mut out = OpSum::new();
    for (i, x) in form.components() {
        let px = rep.represent(x)?;
        out.extend_scaled(re(1.0), &images[i].left_mul_op(&px));
    }
    Ok(out)
}

/// Compares `Ω(b)`, `Ω(c)`, `Ω(a)` with `λπ(b)T`, `-λπ(c)T^*`,
/// `q^{-2}λπ(bc)R′`, and checks `Ω(a) = -q^{-2}Ω(d)`.
pub fn invariant_forms_check(
    rep: &Representation,
    f: &LatticeOperator,
    m: &Materialized,
    tol: f64,
) -> Result<Report> {
    let q = rep.q;
    let lam = q - 1.0 / q;
    let pb = rep.gen(Gen::B);
    let pc = rep.gen(Gen::C);
    let mut out = Report::new();
    let gen = AlgebraElement::gen;
    let cases: [(&str, Gen, f64, LatticeOperator); 3] = [
        ("Omega(b) = lambda pi(b) T", Gen::B, lam, pb * &m.t),
        ("Omega(c) = -lambda pi(c) T*", Gen::C, -lam, pc * &m.t.adjoint()),
        (
            "Omega(a) = q^-2 lambda pi(bc) R'",
            Gen::A,
            lam / (q * q),
            &rep.represent(&"b*c".parse()?)? * &m.r_prime,
        ),
    ];
    for (name, g, c, closed) in cases {
        let mut s = omega_sum(rep, f, &gen(g))?;
        s.push_re(-c, closed);
        out.push(identity_residual(rep, &s)?.record(name, rep, tol).calculus("3D"));
    }
    let mut s = omega_sum(rep, f, &gen(Gen::A))?;
    s.extend_scaled(re(1.0 / (q * q)), &omega_sum(rep, f, &gen(Gen::D))?);
    out.push(identity_residual(rep, &s)?.record("Omega(a) = -q^-2 Omega(d)", rep, tol).calculus("3D"));
    Ok(out)
}

/// `‖F - F^*‖` on the interior.
pub fn f_symmetry(rep: &Representation, f: &LatticeOperator, tol: f64) -> Result<CheckRecord> {
    let mut s = OpSum::single(f.clone());
    s.push_re(-1.0, f.adjoint());
    Ok(identity_residual(rep, &s)?.record("F = F*", rep, tol))
}

/// `π(x^*) = π(x)^*` for all PBW monomials up to `degree`.
pub fn star_rep_check(rep: &Representation, degree: u32, tol: f64) -> Result<CheckRecord> {
    let mut worst = IdentityResidual {
        residual: Residual::default(),
        mask_radius: [0, 0],
    };
    let mut witness = String::new();
    let monos = Monomial::up_to_degree(degree);
    for m in &monos {
        let x = AlgebraElement::monomial(*m);
        let mut s = OpSum::single(rep.represent(&star(&x))?);
        s.push_re(-1.0, rep.monomial(m)?.adjoint());
        let r = identity_residual(rep, &s)?;
        if r.residual.scaled >= worst.residual.scaled {
            witness = x.to_string();
            worst = r;
        }
        worst.mask_radius = [worst.mask_radius[0].max(r.mask_radius[0]), worst.mask_radius[1].max(r.mask_radius[1])];
    }
    Ok(worst
        .record(format!("pi(x*) = pi(x)* on {} monomials", monos.len()), rep, tol)
        .witness(witness))
}

/// Bimodule check: `d(g)·π(h) = Σ π(x_i)ρ(ω_i)` where
/// `dg·h = Σ x_i ω_i` in the calculus, for all generator pairs.
pub fn bimodule_check(
    rep: &Representation,
    f: &LatticeOperator,
    calc: &CalculusDescriptor,
    tol: f64,
) -> Result<Report> {
    let images = form_images(rep, f, calc)?;
    let mut out = Report::new();
    for g in Gen::ALL {
        let dg = calc.differential(&AlgebraElement::gen(g))?;
        for h in Gen::ALL {
            let form = calc.push_left(&dg, &AlgebraElement::gen(h))?;
            let mut s = commutator_d_sum(rep, f, &AlgebraElement::gen(g))?.mul_op(rep.gen(h));
            s.extend_scaled(re(-1.0), &form_image(rep, &images, &form)?);
            out.push(
                identity_residual(rep, &s)?
                    .record(format!("d({})*{} = image of d{}*{}", g.symbol(), h.symbol(), g.symbol(), h.symbol()), rep, tol)
                    .calculus(calc.id.name()),
            );
        }
    }
    Ok(out)
}

/// Numeric rank of `{π(m)Ω_j}`.
#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub degree: u32,
    pub monomials: usize,
    pub columns: usize,
    pub rank: usize,
    pub full: bool,
    pub singular_values: Vec<f64>,
}

/// Rank of the columns `π(m)Ω_j`, `deg m ≤ degree`, each flattened over
/// the interior sources and normalized; zero columns stay zero.
pub fn faithfulness_rank(
    rep: &Representation,
    f: &LatticeOperator,
    calc: &CalculusDescriptor,
    degree: u32,
) -> Result<RankReport> {
    let images: Vec<OpSum> = form_images(rep, f, calc)?
        .iter()
        .map(|s| s.scale(-I))
        .collect();
    let monos = Monomial::up_to_degree(degree);
    let mut sums = Vec::new();
    for m in &monos {
        let pm = rep.monomial(m)?;
        for om in &images {
            sums.push(om.left_mul_op(&pm));
        }
    }
    let ops: Vec<LatticeOperator> = sums
        .iter()
        .map(|s| s.total().unwrap_or_else(|| LatticeOperator::zero(&rep.layout)))
        .collect();
    let reach = ops.iter().fold([0, 0], |r, o| [r[0].max(o.reach()[0]), r[1].max(o.reach()[1])]);
    let mask = interior_mask(rep.window(), reach).map_err(|_| {
        Error::Window(format!(
            "window {} too small for degree {degree}: need margin ({}, {}); enlarge n_max or the k range",
            rep.window().describe(),
            reach[0],
            reach[1]
        ))
    })?;
    let sources = mask.indices(&rep.layout);
    let mut rows: HashMap<(usize, usize), usize> = HashMap::new();
    let mut cols: Vec<Vec<(usize, Complex64)>> = Vec::new();
    for op in &ops {
        let mut col = Vec::new();
        for &j in &sources {
            for (i, v) in op.column(j) {
                let n = rows.len();
                let r = *rows.entry((i, j)).or_insert(n);
                col.push((r, v));
            }
        }
        cols.push(col);
    }
    // A column that cancels to round-off against its own terms is zero.
    let frob = |op: &LatticeOperator| {
        sources
            .iter()
            .flat_map(|&j| op.column(j).map(|(_, v)| v.norm_sqr()))
            .sum::<f64>()
            .sqrt()
    };
    let mut a = DMatrix::<Complex64>::zeros(rows.len().max(1), cols.len());
    for (c, col) in cols.iter().enumerate() {
        let norm = col.iter().map(|(_, v)| v.norm_sqr()).sum::<f64>().sqrt();
        let size: f64 = sums[c].terms.iter().map(|(k, op)| k.norm() * frob(op)).sum();
        let scale = if norm > RANK_THRESHOLD * size { 1.0 / norm } else { 0.0 };
        for &(r, v) in col {
            a[(r, c)] = v * scale;
        }
    }
    let sv = a.singular_values();
    let mut svs: Vec<f64> = sv.iter().copied().collect();
    svs.sort_by(|x, y| y.total_cmp(x));
    let top = svs.first().copied().unwrap_or(0.0);
    let rank = svs.iter().filter(|&&s| s > RANK_THRESHOLD * top).count();
    Ok(RankReport {
        degree,
        monomials: monos.len(),
        columns: cols.len(),
        rank,
        full: rank == cols.len(),
        singular_values: svs,
    })
}

/// Growth of `Ω(b)` and `d(b)` as the window extends to `k → -∞`.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub control: bool,
    pub k_min: Vec<i64>,
    pub omega_b_sup: Vec<f64>,
    pub d_b_sup: Vec<f64>,
    pub omega_b_ratios: Vec<f64>,
    pub d_b_ratios: Vec<f64>,
}

fn ratios(v: &[f64]) -> Vec<f64> {
    v.windows(2).map(|w| w[1] / w[0]).collect()
}

/// Largest interior column norms of `Ω(b)` and `d_{π,F}(b)` per window
/// `k ∈ [k_min, k_max]`. The standard example grows like `q^{k_min}`; the
/// control (`T = 1`, `R = 0`, not an admissible pair) stays bounded.
pub fn growth_probe(
    q_value: &num_rational::BigRational,
    n_max: usize,
    k_max: i64,
    k_mins: &[i64],
    control: bool,
) -> Result<GrowthReport> {
    let mut om = Vec::new();
    let mut db = Vec::new();
    let b = AlgebraElement::gen(Gen::B);
    for &k_min in k_mins {
        let w = LatticeWindow::new(n_max, k_min, k_max, q_value.clone())?;
        let rep = build_rep(&w, WChoice::BilateralShift, None)?;
        let f = if control {
            let spec = FSpec {
                variant: Variant::Standard,
                t: TSpec::Identity { scale: 1.0 },
                r_prime: RSpec::Zero,
                r_double: vec![],
            };
            assemble_f(&rep, &spec, &materialize(&rep, &spec))
        } else {
            build_f(&rep, &FSpec::standard(rep.q, &[]))?
        };
        let o = omega(&rep, &f, &b)?;
        let d = commutator_d(&rep, &f, &b)?;
        om.push(o.max_column_norm(&interior_mask(&w, o.reach())?));
        db.push(d.max_column_norm(&interior_mask(&w, d.reach())?));
    }
    Ok(GrowthReport {
        control,
        k_min: k_mins.to_vec(),
        omega_b_ratios: ratios(&om),
        d_b_ratios: ratios(&db),
        omega_b_sup: om,
        d_b_sup: db,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::parse_rational;

    fn setup() -> (Representation, LatticeOperator) {
        let w = LatticeWindow::new(10, -10, 10, parse_rational("1/2").unwrap()).unwrap();
        let rep = build_rep(&w, WChoice::BilateralShift, None).unwrap();
        let f = build_f(&rep, &FSpec::standard(rep.q, &[(-1, 0.3), (1, 0.3)])).unwrap();
        (rep, f)
    }

    #[test]
    fn omega_of_one_and_linearity() {
        let (rep, f) = setup();
        assert!(omega(&rep, &f, &AlgebraElement::one()).unwrap().max_column_norm(&interior_mask(rep.window(), [1, 1]).unwrap()) < 1e-15);
        let f2 = f.scale_re(2.0);
        let x: AlgebraElement = "b^2".parse().unwrap();
        let mut s = omega_sum(&rep, &(&f + &f2), &x).unwrap();
        s.extend_scaled(re(-1.0), &omega_sum(&rep, &f, &x).unwrap());
        s.extend_scaled(re(-1.0), &omega_sum(&rep, &f2, &x).unwrap());
        assert!(identity_residual(&rep, &s).unwrap().residual.scaled < 1e-15);
    }

    #[test]
    fn commutator_adjoint() {
        let (rep, f) = setup();
        for x in ["a", "b", "a*b", "c*d^2"] {
            let x: AlgebraElement = x.parse().unwrap();
            let mut s = OpSum::single(commutator_d(&rep, &f, &x).unwrap().adjoint());
            s.push_re(-1.0, commutator_d(&rep, &f, &star(&x)).unwrap());
            assert!(identity_residual(&rep, &s).unwrap().residual.scaled < 1e-15);
        }
    }

    #[test]
    fn omega_b_closed_value() {
        let (rep, f) = setup();
        let o = omega(&rep, &f, &AlgebraElement::b()).unwrap();
        let e = rep.layout.index(super::super::lattice::Site::H { n: 0, k: 0, l: 0 }).unwrap();
        // -λq at q = 1/2
        assert!((o.entry(e, e).re - 0.75).abs() < 1e-14);
    }
}
