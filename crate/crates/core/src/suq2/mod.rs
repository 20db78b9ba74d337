//! The Hopf *-algebra `O(SU_q(2))` and its Ore localization at `{b^n c^m}`.
//!
//! Relations: `ab = q ba`, `ac = q ca`, `bd = q db`, `cd = q dc`, `bc = cb`,
//! `ad - q bc = 1`, `da - q^{-1} bc = 1`. Elements are kept in the PBW basis
//! `a^p b^m c^r`, `b^m c^r d^s`.

mod element;
mod grammar;
mod hopf;
mod monomial;

pub use element::{normal_form, AlgebraElement};
pub(crate) use grammar::{join_terms, with_coeff};
pub use grammar::{parse_element, Env};
pub use hopf::{
    antipode, antipode_any, antipode_law, coproduct, counit, omega_tensor, parse_operator_words, star,
    TensorElement,
};
pub use monomial::{Gen, Letter, Monomial, Side};

/// A defining relation `lhs - coeff * rhs - constant = 0` on letter words.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: Vec<Letter>,
    pub coeff: crate::ScalarQ,
    pub rhs: Vec<Letter>,
    pub constant: crate::ScalarQ,
}

/// The seven defining relations of the algebra.
pub fn defining_relations() -> Vec<Relation> {
    use crate::ScalarQ;
    let w = |s: &str| -> Vec<Letter> {
        s.chars()
            .map(|ch| {
                Letter::new(match ch {
                    'a' => Gen::A,
                    'b' => Gen::B,
                    'c' => Gen::C,
                    _ => Gen::D,
                })
            })
            .collect()
    };
    let rel = |name, l, coeff, r, constant| Relation {
        name,
        lhs: w(l),
        coeff,
        rhs: w(r),
        constant,
    };
    let q = ScalarQ::q;
    vec![
        rel("ab-q*ba", "ab", q(), "ba", ScalarQ::zero()),
        rel("ac-q*ca", "ac", q(), "ca", ScalarQ::zero()),
        rel("bd-q*db", "bd", q(), "db", ScalarQ::zero()),
        rel("cd-q*dc", "cd", q(), "dc", ScalarQ::zero()),
        rel("bc-cb", "bc", ScalarQ::one(), "cb", ScalarQ::zero()),
        rel("ad-q*bc-1", "ad", q(), "bc", ScalarQ::one()),
        rel("da-q^-1*bc-1", "da", ScalarQ::q_pow(-1), "bc", ScalarQ::one()),
    ]
}
