use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::qscalar::ScalarQ;

use super::element::{mul_monomials, AlgebraElement};
use super::monomial::{Gen, Monomial};

fn signed_q_pow(sign_base: i64, q_exp: i32, times: i32) -> ScalarQ {
    // (sign_base * q^q_exp)^times with sign_base = ±1
    let sign = if sign_base < 0 && times.rem_euclid(2) == 1 {
        -1
    } else {
        1
    };
    ScalarQ::monomial(sign, q_exp * times)
}

/// Involution: `a* = d`, `b* = -q c`, `c* = -q^{-1} b`, `d* = a`.
///
/// Coefficients are fixed because `q` is real.
pub fn star(x: &AlgebraElement) -> AlgebraElement {
    x.map_monomials(|m| {
        // (a^x b^m c^r d^y)* = a^y (c*)^r (b*)^m d^x
        let k = &signed_q_pow(-1, 1, m.b()) * &signed_q_pow(-1, -1, m.c());
        AlgebraElement::term(k, Monomial::raw(m.d(), m.c(), m.b(), m.a()))
    })
}

/// Antipode: `S(a) = d`, `S(d) = a`, `S(b) = -q^{-1} b`, `S(c) = -q c`.
pub fn antipode(x: &AlgebraElement) -> Result<AlgebraElement> {
    x.require_unlocalized("antipode")?;
    Ok(antipode_any(x))
}

/// Antipode extended to the localized algebra, where it is still defined on
/// `b^{-1}` and `c^{-1}` by inversion.
pub fn antipode_any(x: &AlgebraElement) -> AlgebraElement {
    x.map_monomials(|m| {
        let k = &signed_q_pow(-1, -1, m.b()) * &signed_q_pow(-1, 1, m.c());
        AlgebraElement::term(k, Monomial::raw(m.d(), m.b(), m.c(), m.a()))
    })
}

/// Counit: `1` on `a, d`, `0` on `b, c`.
pub fn counit(x: &AlgebraElement) -> Result<ScalarQ> {
    x.require_unlocalized("counit")?;
    let mut acc = ScalarQ::zero();
    for (m, c) in x.terms() {
        if m.b() == 0 && m.c() == 0 {
            acc += c;
        }
    }
    Ok(acc)
}

/// Element of the algebraic tensor square, normal in both legs.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), ScalarQ>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::pure(&AlgebraElement::one(), &AlgebraElement::one())
    }

    /// `x ⊗ y`.
    pub fn pure(x: &AlgebraElement, y: &AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                out.add_term((*m1, *m2), c1 * c2);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &ScalarQ)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: (Monomial, Monomial), c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(k, s);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(*k, x * c);
        }
        out
    }

    /// Componentwise product `(x⊗y)(x'⊗y') = xx' ⊗ yy'`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                let left = mul_monomials(l1, l2);
                let right = mul_monomials(r1, r2);
                let c = c1 * c2;
                for (lm, lc) in left.terms() {
                    let lc = lc * &c;
                    for (rm, rc) in right.terms() {
                        out.add_term((*lm, *rm), &lc * rc);
                    }
                }
            }
        }
        out
    }

    /// Applies `f ⊗ g` and recombines.
    pub fn map_legs(
        &self,
        mut f: impl FnMut(&AlgebraElement) -> AlgebraElement,
        mut g: impl FnMut(&AlgebraElement) -> AlgebraElement,
    ) -> Self {
        let mut out = Self::zero();
        for ((l, r), c) in &self.terms {
            let fl = f(&AlgebraElement::monomial(*l));
            let gr = g(&AlgebraElement::monomial(*r));
            out = out.add(&Self::pure(&fl, &gr).scale(c));
        }
        out
    }

    /// Multiplication map `x ⊗ y ↦ xy`.
    pub fn multiply(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for ((l, r), c) in &self.terms {
            out.add_scaled(&mul_monomials(l, r), c);
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| {
                let body = format!("{l}⊗{r}");
                super::grammar::with_coeff(c, &body)
            })
            .collect();
        write!(f, "{}", super::grammar::join_terms(&parts))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

fn coproduct_gen(g: Gen) -> TensorElement {
    let e = AlgebraElement::gen;
    let p = |x: Gen, y: Gen| TensorElement::pure(&e(x), &e(y));
    match g {
        Gen::A => p(Gen::A, Gen::A).add(&p(Gen::B, Gen::C)),
        Gen::B => p(Gen::A, Gen::B).add(&p(Gen::B, Gen::D)),
        Gen::C => p(Gen::C, Gen::A).add(&p(Gen::D, Gen::C)),
        Gen::D => p(Gen::C, Gen::B).add(&p(Gen::D, Gen::D)),
    }
}

/// Coproduct `Δ`, an algebra map into the tensor square.
pub fn coproduct(x: &AlgebraElement) -> Result<TensorElement> {
    x.require_unlocalized("coproduct")?;
    let mut out = TensorElement::zero();
    for (m, c) in x.terms() {
        let mut acc = TensorElement::one();
        for l in m.letters() {
            acc = acc.mul(&coproduct_gen(l.gen));
        }
        out = out.add(&acc.scale(c));
    }
    Ok(out)
}

/// `Σ S(x_(1)) ⊗ x_(2) - ε(x) 1 ⊗ 1`, the word `Σ S(x_(1)) F x_(2) - ε(x)F`
/// with `F` standing between the legs.
pub fn omega_tensor(x: &AlgebraElement) -> Result<TensorElement> {
    let t = coproduct(x)?.map_legs(antipode_any, |y| y.clone());
    let e = counit(x)?;
    Ok(t.sub(&TensorElement::one().scale(&e)))
}

/// Parses `Σ c_i x_i F y_i` into `Σ c_i x_i ⊗ y_i`. Every term carries exactly
/// one `F`, e.g. `q^2*d^2*F*b^2 - (q^2+1)*b*d*F*d*b`.
pub fn parse_operator_words(src: &str) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    let bytes = src.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    let mut terms = Vec::new();
    for (i, &ch) in bytes.iter().enumerate() {
        match ch {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start && !matches!(bytes[i - 1], b'^' | b'*') => {
                terms.push((start, i));
                start = i;
            }
            _ => {}
        }
    }
    terms.push((start, bytes.len()));
    for (lo, hi) in terms {
        let term = src[lo..hi].trim();
        if term.is_empty() {
            continue;
        }
        let factors: Vec<&str> = term.split('*').map(str::trim).collect();
        let pos: Vec<usize> = factors
            .iter()
            .enumerate()
            .filter(|(_, f)| f.trim_start_matches(['+', '-']).trim() == "F")
            .map(|(i, _)| i)
            .collect();
        let [p] = pos[..] else {
            return Err(crate::Error::Parse {
                pos: lo,
                msg: format!("term `{term}` must contain exactly one F"),
            });
        };
        let sign = factors[p].trim().starts_with('-');
        let mut left = factors[..p].join("*");
        if sign {
            left = format!("-{left}");
        }
        let left = match left.as_str() {
            "" => "1".to_string(),
            "-" => "-1".to_string(),
            "+" => "1".to_string(),
            _ => left,
        };
        let left = left.trim_start_matches('+').trim_end_matches('*');
        let right = factors[p + 1..].join("*");
        let right = if right.is_empty() { "1".to_string() } else { right };
        let x: AlgebraElement = left.parse()?;
        let y: AlgebraElement = right.parse()?;
        out = out.add(&TensorElement::pure(&x, &y));
    }
    Ok(out)
}

/// `m ∘ (S ⊗ id) ∘ Δ`, which must equal `ε(x) 1`.
pub fn antipode_law(x: &AlgebraElement) -> Result<AlgebraElement> {
    let t = coproduct(x)?;
    Ok(t.map_legs(antipode_any, |y| y.clone()).multiply())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> AlgebraElement {
        s.parse().unwrap()
    }

    #[test]
    fn omega_tensor_of_b_squared() {
        let t = omega_tensor(&el("q^2*b^2")).unwrap();
        let w = parse_operator_words("q^2*d^2*F*b^2 + b^2*F*d^2 - (q^2+1)*b*d*F*d*b").unwrap();
        assert_eq!(t, w);
        assert!(parse_operator_words("a*F*b*F").is_err());
    }

    #[test]
    fn star_on_generators() {
        assert_eq!(star(&el("b")), el("-q*c"));
        assert_eq!(star(&el("1")), el("1"));
        assert_eq!(star(&el("a*b")), &star(&el("b")) * &star(&el("a")));
    }

    #[test]
    fn star_is_involutive_antihomomorphism() {
        for m in Monomial::up_to_degree(3) {
            let x = AlgebraElement::monomial(m);
            assert_eq!(star(&star(&x)), x);
            for g in Gen::ALL {
                let y = AlgebraElement::gen(g);
                assert_eq!(star(&(&x * &y)), &star(&y) * &star(&x));
            }
        }
    }

    #[test]
    fn antipode_generators() {
        assert_eq!(antipode(&el("a")).unwrap(), el("d"));
        assert_eq!(antipode(&el("b")).unwrap(), el("-q^-1*b"));
        assert_eq!(antipode(&el("1")).unwrap(), el("1"));
    }

    #[test]
    fn counit_values() {
        assert!(counit(&el("a")).unwrap().is_one());
        assert!(counit(&el("q^2*a + d - q^2 - 1")).unwrap().is_zero());
        assert!(counit(&el("b*c")).unwrap().is_zero());
    }

    #[test]
    fn coproduct_unit() {
        assert_eq!(coproduct(&el("1")).unwrap(), TensorElement::one());
    }
}
