use crate::error::Result;
use crate::qscalar::{linalg, ScalarQ};
use crate::report::{CheckRecord, Report};
use crate::suq2::{
    defining_relations, omega_tensor, parse_operator_words, star, AlgebraElement, Gen, Monomial,
};

use super::engine::solve_star_table;
use super::{CalculusDescriptor, OneForm};

const SUITE: &str = "fodc";

fn record(calc: &CalculusDescriptor, check: String, residual: Result<OneForm>) -> CheckRecord {
    let r = CheckRecord::new(SUITE, check, false).calculus(calc.id.name());
    match residual {
        Ok(f) if f.is_zero() => CheckRecord { pass: true, ..r },
        Ok(f) => r.witness(f.to_string()),
        Err(e) => r.detail(e.to_string()),
    }
}

/// Sample monomials used by the associativity, Leibniz and star checks.
fn sample(max_degree: u32) -> Vec<AlgebraElement> {
    Monomial::up_to_degree(max_degree)
        .into_iter()
        .filter(|m| !m.is_one())
        .map(AlgebraElement::monomial)
        .collect()
}

/// The 3D right-ideal generators with `Ω(x) = Σ S(x_(1)) F x_(2)` written
/// out as operator words.
pub const OMEGA_WORDS: [(&str, &str); 6] = [
    ("q^2*b^2", "q^2*d^2*F*b^2 + b^2*F*d^2 - (q^2+1)*b*d*F*d*b"),
    ("c^2", "q^2*c^2*F*a^2 + a^2*F*c^2 - (q^2+1)*a*c*F*c*a"),
    ("q*b*c", "-q^2*c*d*F*b*a + (q^2+1)*b*c*F*b*c - a*b*F*d*c + q*F*b*c + q*b*c*F"),
    (
        "q^2*(a-1)*b",
        "q^2*d^2*F*a*b - (q^2+1)*b*d*F*b*c + b^2*F*c*d - q^2*d*F*b - q*b*d*F + q*b*F*d",
    ),
    (
        "(a-1)*c",
        "-q*c*d*F*a^2 + (q^2+1)*b*c*F*c*a - b*a*F*c^2 + F*a*c + q*c*F*a - a*F*c",
    ),
    ("q^2*a+d-q^2-1", "q^2*d*F*a + a*F*d - q*b*F*c - q*c*F*b - (1+q^2)*F"),
];

/// Expands `Ω(x)` symbolically for each entry of [`OMEGA_WORDS`] and compares
/// it with the printed word in `A ⊗ A`.
pub fn verify_omega_words() -> Report {
    OMEGA_WORDS
        .iter()
        .map(|(x, words)| {
            let check = format!("Omega({x}) = {words}");
            let res = (|| -> Result<_> {
                let x: AlgebraElement = x.parse()?;
                Ok(omega_tensor(&x)?.sub(&parse_operator_words(words)?))
            })();
            let r = CheckRecord::new(SUITE, check, false).calculus("3D");
            match res {
                Ok(t) if t.is_zero() => CheckRecord { pass: true, ..r },
                Ok(t) => r.witness(t.to_string()),
                Err(e) => r.detail(e.to_string()),
            }
        })
        .collect()
}

/// Runs every exact consistency check of a calculus.
pub fn verify_calculus(calc: &CalculusDescriptor) -> Report {
    let mut rep = Report::new();
    let relations = defining_relations();

    for rel in &relations {
        let res = (|| {
            let l = calc.differential_word(&rel.lhs)?;
            let r = calc.differential_word(&rel.rhs)?;
            Ok(l.sub(&r.scale(&rel.coeff)))
        })();
        rep.push(record(calc, format!("d({})", rel.name), res));
    }

    for (name, g) in &calc.right_ideal {
        rep.push(record(calc, format!("omega_gamma({name})"), calc.omega_gamma(g)));
    }

    for rel in &relations {
        let res = (|| {
            let mut total = OneForm::zero(calc.id);
            for i in 0..calc.dim() {
                let w = calc.basis(i);
                let l = calc.push_word(&w, &rel.lhs)?;
                let r = calc.push_word(&w, &rel.rhs)?;
                total = total.add(&l.sub(&r.scale(&rel.coeff)).sub(&w.scale(&rel.constant)));
            }
            Ok(total)
        })();
        rep.push(record(calc, format!("bimodule({})", rel.name), res));
    }

    let xs = sample(2);
    let res = (|| {
        let mut total = OneForm::zero(calc.id);
        for i in 0..calc.dim() {
            let w = calc.basis(i);
            for x in &xs {
                let wx = calc.push_left(&w, x)?;
                for y in xs.iter().take(5) {
                    let lhs = calc.push_left(&wx, y)?;
                    let rhs = calc.push_left(&w, &(x * y))?;
                    total = total.add(&lhs.sub(&rhs));
                }
            }
        }
        Ok(total)
    })();
    rep.push(record(calc, "push_left associativity".into(), res));

    let res = (|| {
        let mut total = OneForm::zero(calc.id);
        for x in &xs {
            let dx = calc.differential(x)?;
            for y in &xs {
                let lhs = calc.differential(&(x * y))?;
                let rhs = calc.differential(y)?.left_mul(x).add(&calc.push_left(&dx, y)?);
                total = total.add(&lhs.sub(&rhs));
            }
        }
        Ok(total)
    })();
    rep.push(record(calc, "leibniz".into(), res));

    let res = (|| {
        let mut total = OneForm::zero(calc.id);
        for i in 0..calc.dim() {
            let w = calc.basis(i);
            total = total.add(&calc.star_form(&calc.star_form(&w)?)?.sub(&w));
        }
        Ok(total)
    })();
    rep.push(record(calc, "star_form involution".into(), res));

    let res = (|| {
        let mut total = OneForm::zero(calc.id);
        let gens: Vec<AlgebraElement> = Gen::ALL.iter().map(|g| AlgebraElement::gen(*g)).collect();
        for x in std::iter::once(AlgebraElement::one()).chain(gens.iter().cloned()) {
            for y in &gens {
                // (x dy)* = d(y*) x*
                let lhs = calc.star_form(&calc.differential(y)?.left_mul(&x))?;
                let rhs = calc.push_left(&calc.differential(&star(y))?, &star(&x))?;
                total = total.add(&lhs.sub(&rhs));
            }
        }
        Ok(total)
    })();
    rep.push(record(calc, "star_form compatibility".into(), res));

    let solved = solve_star_table(calc);
    let pass = solved.as_ref() == Some(&calc.star_table);
    let mut r = CheckRecord::new(SUITE, "star_table unique", pass).calculus(calc.id.name());
    r = r.detail(
        calc.star_table
            .iter()
            .enumerate()
            .map(|(i, f)| format!("{}* = {f}", calc.form_names()[i]))
            .collect::<Vec<_>>()
            .join(", "),
    );
    rep.push(r);
    rep
}

/// Rank over `Q(q)` of `{ω_Γ(x) : deg x <= degree}`, and whether every such
/// form has constant coefficients.
pub fn omega_gamma_rank(calc: &CalculusDescriptor, degree: u32) -> Result<(usize, bool)> {
    let mut rows = Vec::new();
    let mut invariant = true;
    for m in Monomial::up_to_degree(degree) {
        let w = calc.omega_gamma(&AlgebraElement::monomial(m))?;
        match w.invariant_coeffs() {
            Some(c) => rows.push(
                (0..calc.dim())
                    .map(|i| c.get(&i).cloned().unwrap_or_else(ScalarQ::zero))
                    .collect::<Vec<_>>(),
            ),
            None => invariant = false,
        }
    }
    Ok((linalg::rank(&rows), invariant))
}

/// Checks that the quotient tables agree with the parent's with `ω_4` deleted
/// on `x · ω_i · y` and on `d x`, for monomials up to `degree`.
pub fn quotient_consistency(
    quotient: &CalculusDescriptor,
    parent: &CalculusDescriptor,
    degree: u32,
) -> Result<Option<String>> {
    let w4 = 3;
    let xs: Vec<AlgebraElement> = Monomial::up_to_degree(degree)
        .into_iter()
        .map(AlgebraElement::monomial)
        .collect();
    for y in &xs {
        let dq = quotient.differential(y)?;
        let dp = parent.differential(y)?.drop_component(w4, quotient.id);
        if dq != dp {
            return Ok(Some(format!("d({y}): {dq} vs {dp}")));
        }
        for i in 0..quotient.dim() {
            let fq = quotient.push_left(&quotient.basis(i), y)?;
            let fp = parent
                .push_left(&parent.basis(i), y)?
                .drop_component(w4, quotient.id);
            if fq != fp {
                return Ok(Some(format!("w{}*{y}: {fq} vs {fp}", i + 1)));
            }
        }
    }
    Ok(None)
}
