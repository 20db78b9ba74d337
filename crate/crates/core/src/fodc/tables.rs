use crate::qscalar::ScalarQ;
use crate::suq2::{coproduct, AlgebraElement, Gen, Monomial};

use super::engine;
use super::{CalculusId, OneForm};

/// Images `ω_i*` of the basis forms, as constant-coefficient forms.
pub type StarTable = Vec<OneForm>;

/// A left-covariant calculus as a bimodule rewrite system.
///
/// Fields are public so that perturbed tables can be checked against the
/// verification suite.
#[derive(Clone, Debug)]
pub struct CalculusDescriptor {
    pub id: CalculusId,
    /// `commutation[i][g] = ω_i · g` in left-normal form.
    pub commutation: Vec<[OneForm; 4]>,
    /// `ω_Γ(g)` on the generators.
    pub omega_gen: [OneForm; 4],
    /// `d g` on the generators.
    pub d_table: [OneForm; 4],
    pub star_table: StarTable,
    /// Named generators of the right ideal `R_Γ`.
    pub right_ideal: Vec<(String, AlgebraElement)>,
}

impl CalculusDescriptor {
    pub fn dim(&self) -> usize {
        self.id.dim()
    }

    pub fn epsilon(&self) -> Option<i32> {
        self.id.epsilon()
    }

    pub fn form_names(&self) -> &'static [&'static str] {
        self.id.form_names()
    }

    pub fn basis(&self, i: usize) -> OneForm {
        OneForm::basis(self.id, i)
    }
}

fn qp(e: i32) -> ScalarQ {
    ScalarQ::q_pow(e)
}

fn el(s: &str) -> AlgebraElement {
    s.parse().expect("static element")
}

/// `Σ c · g · ω_j` from `(coeff, generator, form)` triples.
fn row(id: CalculusId, entries: &[(ScalarQ, Gen, usize)]) -> OneForm {
    let mut f = OneForm::zero(id);
    for (c, g, j) in entries {
        f.add_component(*j, &AlgebraElement::gen(*g).scale(c));
    }
    f
}

/// `d g = g_(1) ω_Γ(g_(2))`.
pub(super) fn d_from_omega(id: CalculusId, omega_gen: &[OneForm; 4]) -> [OneForm; 4] {
    Gen::ALL.map(|g| {
        let t = coproduct(&AlgebraElement::gen(g)).expect("unlocalized");
        let mut out = OneForm::zero(id);
        for ((l, r), c) in t.terms() {
            let idx = gen_of(r);
            out = out.add(&omega_gen[idx].left_mul(&AlgebraElement::term(c.clone(), *l)));
        }
        out
    })
}

fn gen_of(m: &Monomial) -> usize {
    Gen::ALL
        .iter()
        .position(|g| Monomial::gen(*g) == *m)
        .expect("coproduct of a generator has generator legs")
}

fn three_d() -> CalculusDescriptor {
    use Gen::*;
    let id = CalculusId::ThreeD;
    // ω_j g = q^{w} g ω_j with w = ∓1 (j = 0, 2) and ∓2 (j = 1).
    let diag = |j: usize, s: i32| -> [OneForm; 4] {
        [
            row(id, &[(qp(-s), A, j)]),
            row(id, &[(qp(s), B, j)]),
            row(id, &[(qp(-s), C, j)]),
            row(id, &[(qp(s), D, j)]),
        ]
    };
    let commutation = vec![diag(0, 1), diag(1, 2), diag(2, 1)];
    let omega_gen = [
        OneForm::basis(id, 1),
        OneForm::basis(id, 0),
        OneForm::basis(id, 2),
        OneForm::basis(id, 1).scale(&-qp(2)),
    ];
    let d_table = [
        row(id, &[(ScalarQ::one(), A, 1), (ScalarQ::one(), B, 2)]),
        row(id, &[(ScalarQ::one(), A, 0), (-qp(2), B, 1)]),
        row(id, &[(ScalarQ::one(), C, 1), (ScalarQ::one(), D, 2)]),
        row(id, &[(ScalarQ::one(), C, 0), (-qp(2), D, 1)]),
    ];
    let right_ideal = [
        "b^2",
        "c^2",
        "b*c",
        "(a-1)*b",
        "(a-1)*c",
        "q^2*a+d-(q^2+1)",
    ]
    .iter()
    .map(|s| (s.to_string(), el(s)))
    .collect();
    let mut desc = CalculusDescriptor {
        id,
        commutation,
        omega_gen,
        d_table,
        star_table: Vec::new(),
        right_ideal,
    };
    desc.star_table = engine::solve_star_table(&desc)
        .expect("the 3D calculus admits a unique involution on basis forms");
    desc
}

fn four_d(id: CalculusId) -> CalculusDescriptor {
    use Gen::*;
    let eps = id.epsilon().expect("4D family");
    let e = ScalarQ::sign(eps);
    let lambda = ScalarQ::lambda();
    // ε λ² q^{-1}
    let l = &(&e * &(&lambda * &lambda)) * &qp(-1);
    let eq = |k: i32| &e * &qp(k);
    let (w1, w2, w3, w4) = (0, 1, 2, 3);
    let commutation = vec![
        [
            row(id, &[(eq(1), A, w1), (e.clone(), B, w3), (l.clone(), A, w4)]),
            row(id, &[(eq(-1), B, w1), (e.clone(), A, w2)]),
            row(id, &[(eq(1), C, w1), (e.clone(), D, w3), (l.clone(), C, w4)]),
            row(id, &[(eq(-1), D, w1), (e.clone(), C, w2)]),
        ],
        [
            row(id, &[(e.clone(), A, w2), (l.clone(), B, w4)]),
            row(id, &[(e.clone(), B, w2)]),
            row(id, &[(e.clone(), C, w2), (l.clone(), D, w4)]),
            row(id, &[(e.clone(), D, w2)]),
        ],
        [
            row(id, &[(e.clone(), A, w3)]),
            row(id, &[(e.clone(), B, w3), (l.clone(), A, w4)]),
            row(id, &[(e.clone(), C, w3)]),
            row(id, &[(e.clone(), D, w3), (l.clone(), C, w4)]),
        ],
        [
            row(id, &[(eq(-1), A, w4)]),
            row(id, &[(eq(1), B, w4)]),
            row(id, &[(eq(-1), C, w4)]),
            row(id, &[(eq(1), D, w4)]),
        ],
    ];
    let one = ScalarQ::one();
    let omega_gen = [
        OneForm::from_scalars(
            id,
            &[
                (w1, &eq(1) - &one),
                (w4, &(&eq(-1) - &one) + &l),
            ],
        ),
        OneForm::from_scalars(id, &[(w2, e.clone())]),
        OneForm::from_scalars(id, &[(w3, e.clone())]),
        OneForm::from_scalars(id, &[(w1, &eq(-1) - &one), (w4, &eq(1) - &one)]),
    ];
    let d_table = d_from_omega(id, &omega_gen);
    let minus = -ScalarQ::one();
    let star_table = vec![
        OneForm::from_scalars(id, &[(w1, minus.clone())]),
        OneForm::from_scalars(id, &[(w3, minus.clone())]),
        OneForm::from_scalars(id, &[(w2, minus.clone())]),
        OneForm::from_scalars(id, &[(w4, minus)]),
    ];
    let z = if eps > 0 {
        "(q^2*a+d-(q^3+q^-1))"
    } else {
        "(q^2*a+d+(q^3+q^-1))"
    };
    let right_ideal: Vec<(String, AlgebraElement)> = [
        "b^2".to_string(),
        "c^2".to_string(),
        "b*(a-d)".to_string(),
        "c*(a-d)".to_string(),
        "a^2+q^2*d^2-(1+q^2)*(a*d+q^-1*b*c)".to_string(),
        format!("{z}*b"),
        format!("{z}*c"),
        format!("{z}*(a-d)"),
        format!("{z}*(q^2*a+d-(q^2+1))"),
    ]
    .into_iter()
    .map(|s| {
        let x = el(&s);
        (s, x)
    })
    .collect();
    CalculusDescriptor {
        id,
        commutation,
        omega_gen,
        d_table,
        star_table,
        right_ideal,
    }
}

/// `Γ±,3`: the 4D± tables with `ω_4 = 0`, plus `a + εqd` in the ideal.
fn q3(id: CalculusId) -> CalculusDescriptor {
    let parent = four_d(id.parent().expect("quotient calculus"));
    let w4 = 3;
    let drop = |f: &OneForm| f.drop_component(w4, id);
    let commutation = parent.commutation[..3]
        .iter()
        .map(|r| r.clone().map(|f| drop(&f)))
        .collect();
    let omega_gen = parent.omega_gen.clone().map(|f| drop(&f));
    let d_table = parent.d_table.clone().map(|f| drop(&f));
    let star_table = parent.star_table[..3].iter().map(drop).collect();
    let eps = id.epsilon().expect("4D family");
    let mut right_ideal = parent.right_ideal;
    let extra = if eps > 0 { "a+q*d" } else { "a-q*d" };
    right_ideal.push((extra.to_string(), el(extra)));
    CalculusDescriptor {
        id,
        commutation,
        omega_gen,
        d_table,
        star_table,
        right_ideal,
    }
}

/// Builds the descriptor of a calculus.
pub fn make_calculus(id: CalculusId) -> CalculusDescriptor {
    match id {
        CalculusId::ThreeD => three_d(),
        CalculusId::FourDPlus | CalculusId::FourDMinus => four_d(id),
        CalculusId::Q3Plus | CalculusId::Q3Minus => q3(id),
    }
}
