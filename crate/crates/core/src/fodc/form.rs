use std::collections::BTreeMap;
use std::fmt;

use crate::qscalar::ScalarQ;
use crate::suq2::{AlgebraElement, Monomial};

use super::CalculusId;

/// Left-normal 1-form `Σ_j x_j ω_j` over a calculus.
#[derive(Clone, PartialEq, Eq)]
pub struct OneForm {
    calc: CalculusId,
    comps: BTreeMap<usize, AlgebraElement>,
}

impl OneForm {
    pub fn zero(calc: CalculusId) -> Self {
        Self {
            calc,
            comps: BTreeMap::new(),
        }
    }

    /// The basis form `ω_i`.
    pub fn basis(calc: CalculusId, i: usize) -> Self {
        Self::term(calc, AlgebraElement::one(), i)
    }

    /// `x ω_i`.
    pub fn term(calc: CalculusId, x: AlgebraElement, i: usize) -> Self {
        let mut f = Self::zero(calc);
        f.add_component(i, &x);
        f
    }

    /// Constant-coefficient form `Σ c_i ω_i`.
    pub fn from_scalars(calc: CalculusId, coeffs: &[(usize, ScalarQ)]) -> Self {
        let mut f = Self::zero(calc);
        for (i, c) in coeffs {
            f.add_component(*i, &AlgebraElement::scalar(c.clone()));
        }
        f
    }

    pub fn calculus(&self) -> CalculusId {
        self.calc
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn component(&self, i: usize) -> AlgebraElement {
        self.comps.get(&i).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &AlgebraElement)> {
        self.comps.iter().map(|(i, x)| (*i, x))
    }

    pub fn add_component(&mut self, i: usize, x: &AlgebraElement) {
        if x.is_zero() {
            return;
        }
        let s = match self.comps.remove(&i) {
            Some(old) => &old + x,
            None => x.clone(),
        };
        if !s.is_zero() {
            self.comps.insert(i, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, x) in &other.comps {
            out.add_component(*i, x);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-ScalarQ::one()))
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        let mut out = Self::zero(self.calc);
        for (i, x) in &self.comps {
            out.add_component(*i, &x.scale(c));
        }
        out
    }

    /// `x · form`.
    pub fn left_mul(&self, x: &AlgebraElement) -> Self {
        let mut out = Self::zero(self.calc);
        for (i, y) in &self.comps {
            out.add_component(*i, &(x * y));
        }
        out
    }

    /// Constant coefficients if the form is left-invariant.
    pub fn invariant_coeffs(&self) -> Option<BTreeMap<usize, ScalarQ>> {
        self.comps
            .iter()
            .map(|(i, x)| x.as_scalar().map(|s| (*i, s)))
            .collect()
    }

    /// Flattens into `(form index, monomial) -> coefficient`.
    pub fn coordinates(&self) -> BTreeMap<(usize, Monomial), ScalarQ> {
        let mut out = BTreeMap::new();
        for (i, x) in &self.comps {
            for (m, c) in x.terms() {
                out.insert((*i, *m), c.clone());
            }
        }
        out
    }

    /// Drops component `i` and relabels the form into `calc`.
    pub fn drop_component(&self, i: usize, calc: CalculusId) -> Self {
        let mut out = Self::zero(calc);
        for (j, x) in &self.comps {
            if *j != i {
                out.add_component(*j, x);
            }
        }
        out
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let names = self.calc.form_names();
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(i, x)| {
                let name = names.get(*i).copied().unwrap_or("w?");
                if x.len() == 1 {
                    let s = x.to_string();
                    if s == "1" {
                        name.to_string()
                    } else if s == "-1" {
                        format!("-{name}")
                    } else {
                        format!("{s}*{name}")
                    }
                } else {
                    format!("({x})*{name}")
                }
            })
            .collect();
        write!(f, "{}", crate::suq2::join_terms(&parts))
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OneForm[{}]({self})", self.calc)
    }
}
