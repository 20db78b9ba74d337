use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qscalar::{linalg, ScalarQ};
use crate::suq2::{antipode, coproduct, normal_form, star, AlgebraElement, Gen, Letter, Monomial};

use super::tables::StarTable;
use super::{CalculusDescriptor, CalculusId, OneForm};

impl CalculusDescriptor {
    /// `ω_i · l` for a single letter.
    fn basis_times_letter(&self, i: usize, l: Letter) -> Result<OneForm> {
        let entry = &self.commutation[i][l.gen.index()];
        if !l.inverse {
            return Ok(entry.clone());
        }
        // Only diagonal entries ω_i g = s g ω_i invert: ω_i g^{-1} = s^{-1} g^{-1} ω_i.
        let coeff = entry.component(i);
        let diag = entry.components().count() == 1 && coeff.len() == 1;
        let (m, s) = coeff
            .terms()
            .next()
            .map(|(m, s)| (*m, s.clone()))
            .unwrap_or((Monomial::ONE, ScalarQ::zero()));
        if !diag || m != Monomial::gen(l.gen) {
            return Err(Error::LocalizationMode(format!(
                "{} has no localized bimodule structure",
                self.id
            )));
        }
        Ok(OneForm::term(
            self.id,
            AlgebraElement::letter(l).scale(&s.inv()?),
            i,
        ))
    }

    fn push_letter(&self, form: &OneForm, l: Letter) -> Result<OneForm> {
        let mut out = OneForm::zero(self.id);
        for (i, x) in form.components() {
            out = out.add(&self.basis_times_letter(i, l)?.left_mul(x));
        }
        Ok(out)
    }

    /// `form · w` for a word of letters, pushed letter by letter.
    pub fn push_word(&self, form: &OneForm, word: &[Letter]) -> Result<OneForm> {
        let mut f = form.clone();
        for l in word {
            if f.is_zero() {
                break;
            }
            f = self.push_letter(&f, *l)?;
        }
        Ok(f)
    }

    /// Left-normal form of `form · y`.
    pub fn push_left(&self, form: &OneForm, y: &AlgebraElement) -> Result<OneForm> {
        let mut out = OneForm::zero(self.id);
        for (m, c) in y.terms() {
            out = out.add(&self.push_word(form, &m.letters())?.scale(c));
        }
        Ok(out)
    }

    fn d_letter(&self, l: Letter) -> Result<OneForm> {
        let dg = &self.d_table[l.gen.index()];
        if !l.inverse {
            return Ok(dg.clone());
        }
        // d(g^{-1}) = -g^{-1} dg g^{-1}
        let inv = AlgebraElement::letter(l);
        Ok(self
            .push_word(dg, &[l])?
            .left_mul(&inv)
            .scale(&-ScalarQ::one()))
    }

    /// Leibniz expansion of `d(l_1 ... l_n)` over an arbitrary word.
    pub fn differential_word(&self, word: &[Letter]) -> Result<OneForm> {
        let localized = word.iter().any(|l| l.inverse);
        let mut out = OneForm::zero(self.id);
        let mut prefix = AlgebraElement::one();
        for (i, l) in word.iter().enumerate() {
            let dl = self.d_letter(*l)?;
            let pushed = self.push_word(&dl, &word[i + 1..])?;
            out = out.add(&pushed.left_mul(&prefix));
            prefix = &prefix * &normal_form(&[*l], localized)?;
        }
        Ok(out)
    }

    /// `d x`, linear over the PBW basis.
    pub fn differential(&self, x: &AlgebraElement) -> Result<OneForm> {
        let mut out = OneForm::zero(self.id);
        for (m, c) in x.terms() {
            out = out.add(&self.differential_word(&m.letters())?.scale(c));
        }
        Ok(out)
    }

    /// `ω_Γ(x) = S(x_(1)) d x_(2)`.
    pub fn omega_gamma(&self, x: &AlgebraElement) -> Result<OneForm> {
        let t = coproduct(x)?;
        let mut out = OneForm::zero(self.id);
        let mut cache: BTreeMap<Monomial, OneForm> = BTreeMap::new();
        for ((l, r), c) in t.terms() {
            let dr = match cache.get(r) {
                Some(f) => f.clone(),
                None => {
                    let f = self.differential(&AlgebraElement::monomial(*r))?;
                    cache.insert(*r, f.clone());
                    f
                }
            };
            let s = antipode(&AlgebraElement::term(c.clone(), *l))?;
            out = out.add(&dr.left_mul(&s));
        }
        Ok(out)
    }

    /// Involution on forms: `(Σ x_i ω_i)* = Σ ω_i* · x_i*`.
    pub fn star_form(&self, form: &OneForm) -> Result<OneForm> {
        let mut out = OneForm::zero(self.id);
        for (i, x) in form.components() {
            out = out.add(&self.push_left(&self.star_table[i], &star(x))?);
        }
        Ok(out)
    }
}

/// Word-level differential of a letter word in a given calculus.
pub fn word_differential(calc: &CalculusDescriptor, word: &[Letter]) -> Result<OneForm> {
    calc.differential_word(word)
}

/// Solves for the unique constant involution `ω_i* = Σ_j s_ij ω_j` with
/// `(d g)* = d(g*)` on the generators.
pub(super) fn solve_star_table(calc: &CalculusDescriptor) -> Option<StarTable> {
    let n = calc.dim();
    let id: CalculusId = calc.id;
    let mut eq_rows: BTreeMap<(usize, usize, Monomial), Vec<ScalarQ>> = BTreeMap::new();
    let mut rhs: BTreeMap<(usize, usize, Monomial), ScalarQ> = BTreeMap::new();
    for g in Gen::ALL {
        let dg = &calc.d_table[g.index()];
        let target = calc.differential(&star(&AlgebraElement::gen(g))).ok()?;
        for ((k, m), c) in target.coordinates() {
            rhs.insert((g.index(), k, m), c);
        }
        for (i, x) in dg.components() {
            let xs = star(x);
            for j in 0..n {
                let f = calc.push_left(&OneForm::basis(id, j), &xs).ok()?;
                for ((k, m), c) in f.coordinates() {
                    let row = eq_rows
                        .entry((g.index(), k, m))
                        .or_insert_with(|| vec![ScalarQ::zero(); n * n]);
                    row[i * n + j] = &row[i * n + j] + &c;
                }
            }
        }
    }
    let keys: Vec<_> = eq_rows.keys().chain(rhs.keys()).cloned().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let a: Vec<Vec<ScalarQ>> = keys
        .iter()
        .map(|k| eq_rows.get(k).cloned().unwrap_or_else(|| vec![ScalarQ::zero(); n * n]))
        .collect();
    let b: Vec<ScalarQ> = keys.iter().map(|k| rhs.get(k).cloned().unwrap_or_default()).collect();
    if linalg::rank(&a) != n * n {
        return None;
    }
    let s = linalg::solve(&a, &b)?;
    Some(
        (0..n)
            .map(|i| {
                let coeffs: Vec<(usize, ScalarQ)> =
                    (0..n).map(|j| (j, s[i * n + j].clone())).collect();
                OneForm::from_scalars(id, &coeffs)
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::super::make_calculus;
    use super::*;

    fn el(s: &str) -> AlgebraElement {
        s.parse().unwrap()
    }

    #[test]
    fn three_d_push_left() {
        let c = make_calculus(CalculusId::ThreeD);
        let f = c.push_left(&c.basis(0), &el("a")).unwrap();
        assert_eq!(f, OneForm::term(c.id, el("q^-1*a"), 0));
        let f = c.push_left(&c.basis(1), &el("b")).unwrap();
        assert_eq!(f, OneForm::term(c.id, el("q^2*b"), 1));
    }

    #[test]
    fn four_d_push_left() {
        let c = make_calculus(CalculusId::FourDPlus);
        let f = c.push_left(&c.basis(1), &el("a")).unwrap();
        let expect = OneForm::term(c.id, el("a"), 1)
            .add(&OneForm::term(c.id, el("(q-q^-1)^2*q^-1*b"), 3));
        assert_eq!(f, expect);
    }

    #[test]
    fn three_d_differentials_of_generators() {
        let c = make_calculus(CalculusId::ThreeD);
        let da = c.differential(&el("a")).unwrap();
        assert_eq!(
            da,
            OneForm::term(c.id, el("a"), 1).add(&OneForm::term(c.id, el("b"), 2))
        );
        let db = c.differential(&el("b")).unwrap();
        assert_eq!(
            db,
            OneForm::term(c.id, el("a"), 0).add(&OneForm::term(c.id, el("-q^2*b"), 1))
        );
        assert!(c.differential(&el("1")).unwrap().is_zero());
    }

    #[test]
    fn three_d_table_matches_coproduct_form() {
        let c = make_calculus(CalculusId::ThreeD);
        let derived = super::super::tables::d_from_omega(c.id, &c.omega_gen);
        assert_eq!(derived, c.d_table);
    }

    #[test]
    fn omega_gamma_on_generators() {
        let c = make_calculus(CalculusId::ThreeD);
        assert_eq!(c.omega_gamma(&el("b")).unwrap(), c.basis(0));
        assert!(c.omega_gamma(&el("b^2")).unwrap().is_zero());
        let c4 = make_calculus(CalculusId::FourDPlus);
        let w = c4.omega_gamma(&el("a")).unwrap();
        let expect = OneForm::from_scalars(
            c4.id,
            &[
                (0, "q-1".parse().unwrap()),
                (3, "q^-1-1+(q-q^-1)^2*q^-1".parse().unwrap()),
            ],
        );
        assert_eq!(w, expect);
    }

    #[test]
    fn four_d_differential_of_b() {
        for id in [CalculusId::FourDPlus, CalculusId::FourDMinus] {
            let c = make_calculus(id);
            let e = ScalarQ::sign(id.epsilon().unwrap());
            let wb = OneForm::from_scalars(id, &[(1, e)]);
            let expect = wb
                .left_mul(&el("a"))
                .add(&c.omega_gen[3].left_mul(&el("b")));
            assert_eq!(c.differential(&el("b")).unwrap(), expect);
        }
    }

    #[test]
    fn localized_push_in_three_d_only() {
        let c = make_calculus(CalculusId::ThreeD);
        let f = c.push_left(&c.basis(0), &el("b^-1")).unwrap();
        assert_eq!(f, OneForm::term(c.id, el("q^-1*b^-1"), 0));
        let c4 = make_calculus(CalculusId::FourDPlus);
        assert!(c4.push_left(&c4.basis(0), &el("b^-1")).is_err());
    }
}
