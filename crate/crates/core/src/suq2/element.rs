use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::qscalar::ScalarQ;

use super::monomial::{Gen, Letter, Monomial};

/// Finite `Q(q)`-linear combination of PBW monomials.
///
/// `localized` marks membership in the Ore extension by `{b^n c^m}`; it is
/// contagious under every operation.
#[derive(Clone, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, ScalarQ>,
    localized: bool,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl std::hash::Hash for AlgebraElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE)
    }

    pub fn scalar(c: ScalarQ) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(ScalarQ::one(), m)
    }

    pub fn term(c: ScalarQ, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        let localized = m.is_localized();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms, localized }
    }

    pub fn gen(g: Gen) -> Self {
        Self::monomial(Monomial::gen(g))
    }

    pub fn a() -> Self {
        Self::gen(Gen::A)
    }

    pub fn b() -> Self {
        Self::gen(Gen::B)
    }

    pub fn c() -> Self {
        Self::gen(Gen::C)
    }

    pub fn d() -> Self {
        Self::gen(Gen::D)
    }

    /// `b^{-1}` in the localized algebra.
    pub fn b_inv() -> Self {
        Self::monomial(Monomial::raw(0, -1, 0, 0))
    }

    /// `c^{-1}` in the localized algebra.
    pub fn c_inv() -> Self {
        Self::monomial(Monomial::raw(0, 0, -1, 0))
    }

    pub fn letter(l: Letter) -> Self {
        match (l.gen, l.inverse) {
            (g, false) => Self::gen(g),
            (Gen::B, true) => Self::b_inv(),
            (Gen::C, true) => Self::c_inv(),
            (g, true) => panic!("{} has no inverse in the localized algebra", g.symbol()),
        }
    }

    /// Switches on localized mode without changing the value.
    pub fn localize(mut self) -> Self {
        self.localized = true;
        self
    }

    pub fn is_localized(&self) -> bool {
        self.localized
    }

    /// Errors if the element needs the localized algebra.
    pub fn require_unlocalized(&self, what: &str) -> Result<()> {
        if self.terms.keys().any(|m| m.is_localized()) {
            return Err(Error::LocalizationMode(format!("{what} of {self}")));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> ScalarQ {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Sparse coordinates in the PBW basis.
    pub fn coordinates(&self) -> BTreeMap<Monomial, ScalarQ> {
        self.terms.clone()
    }

    /// Highest monomial degree, `0` for zero.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Scalar value if the element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<ScalarQ> {
        match self.terms.len() {
            0 => Some(ScalarQ::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        self.localized |= m.is_localized();
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Self, c: &ScalarQ) {
        if c.is_zero() {
            return;
        }
        self.localized |= other.localized;
        for (m, x) in &other.terms {
            self.add_term(*m, x * c);
        }
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            localized: self.localized,
        };
        if !c.is_zero() {
            for (m, x) in &self.terms {
                out.terms.insert(*m, x * c);
            }
        }
        out
    }

    pub fn mul_elem(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        out.localized = self.localized || other.localized;
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_scaled(&mul_monomials(m1, m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        acc.localized = self.localized;
        for _ in 0..e {
            acc = acc.mul_elem(self);
        }
        acc
    }

    /// Maps every monomial through `f` and recombines linearly.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Self) -> Self {
        let mut out = Self::zero();
        out.localized = self.localized;
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Maps every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&ScalarQ) -> ScalarQ) -> Self {
        let mut out = Self::zero();
        out.localized = self.localized;
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }
}

/// Normal form of an arbitrary product of letters and scalars.
///
/// Inverse letters are only accepted when `localized` is set.
pub fn normal_form(word: &[Letter], localized: bool) -> Result<AlgebraElement> {
    let mut acc = AlgebraElement::one();
    acc.localized = localized;
    for l in word {
        if l.inverse {
            if !localized {
                return Err(Error::LocalizationMode(format!(
                    "{l} outside the localized algebra"
                )));
            }
            if !matches!(l.gen, Gen::B | Gen::C) {
                return Err(Error::Unsupported(format!("{l} is not invertible")));
            }
        }
        acc = acc.mul_elem(&AlgebraElement::letter(*l));
    }
    Ok(acc)
}

fn qp(e: i64) -> ScalarQ {
    ScalarQ::q_pow(e as i32)
}

thread_local! {
    static DA_CACHE: RefCell<HashMap<(u32, u32), AlgebraElement>> = RefCell::new(HashMap::new());
    static AD_CACHE: RefCell<HashMap<(u32, i32, i32, u32), AlgebraElement>> = RefCell::new(HashMap::new());
}

/// `d^y a^x` in normal form.
fn d_pow_a_pow(y: u32, x: u32) -> AlgebraElement {
    if y == 0 || x == 0 {
        return AlgebraElement::monomial(Monomial::raw(x, 0, 0, y));
    }
    if let Some(v) = DA_CACHE.with(|c| c.borrow().get(&(y, x)).cloned()) {
        return v;
    }
    // d^y a^x = d^{y-1} a^{x-1} + q^{-1} d^{y-1} (bc) a^{x-1}
    //         = P + q^{-1} q^{-2(y-1)} (bc) P,  P = d^{y-1} a^{x-1}
    let p = d_pow_a_pow(y - 1, x - 1);
    let mut out = p.clone();
    let k = qp(-1 - 2 * (y as i64 - 1));
    for (m, c) in p.terms() {
        // (bc) a^X B d^Y = q^{-2X} a^X (bc) B d^Y
        let shifted = Monomial::raw(m.a(), m.b() + 1, m.c() + 1, m.d());
        out.add_term(shifted, &(c * &k) * &qp(-2 * m.a() as i64));
    }
    DA_CACHE.with(|c| c.borrow_mut().insert((y, x), out.clone()));
    out
}

/// `a^x b^m c^r d^y` in normal form (`x` and `y` may both be positive).
fn order_a_mid_d(x: u32, m: i32, r: i32, y: u32) -> AlgebraElement {
    if x == 0 || y == 0 {
        return AlgebraElement::monomial(Monomial::raw(x, m, r, y));
    }
    let key = (x, m, r, y);
    if let Some(v) = AD_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    // a C = q^{deg C} C a, then a d = 1 + q bc.
    let deg = (m + r) as i64;
    let mut out = order_a_mid_d(x - 1, m, r, y - 1).scale(&qp(deg));
    out.add_scaled(&order_a_mid_d(x - 1, m + 1, r + 1, y - 1), &qp(deg + 1));
    AD_CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// Product of two PBW monomials in normal form.
pub(crate) fn mul_monomials(m1: &Monomial, m2: &Monomial) -> AlgebraElement {
    // a^x1 C1 (d^y1 a^x2) C2 d^y2
    let mid = d_pow_a_pow(m1.d(), m2.a());
    let deg1 = m1.mid_degree() as i64;
    let deg2 = m2.mid_degree() as i64;
    let mut out = AlgebraElement::zero();
    for (t, c) in mid.terms() {
        // C1 a^X = q^{-X deg C1} a^X C1,  d^Y C2 = q^{-Y deg C2} C2 d^Y
        let k = qp(-(t.a() as i64) * deg1 - (t.d() as i64) * deg2);
        let part = order_a_mid_d(
            m1.a() + t.a(),
            m1.b() + t.b() + m2.b(),
            m1.c() + t.c() + m2.c(),
            t.d() + m2.d(),
        );
        out.add_scaled(&part, &(c * &k));
    }
    out
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &ScalarQ::one());
        out
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-ScalarQ::one());
        out
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.mul_elem(rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-ScalarQ::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl Mul<&AlgebraElement> for &ScalarQ {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        rhs.scale(self)
    }
}

impl Mul<AlgebraElement> for ScalarQ {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        rhs.scale(&self)
    }
}

impl From<ScalarQ> for AlgebraElement {
    fn from(c: ScalarQ) -> Self {
        Self::scalar(c)
    }
}

impl From<Monomial> for AlgebraElement {
    fn from(m: Monomial) -> Self {
        Self::monomial(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarQ {
        ScalarQ::q()
    }

    #[test]
    fn defining_relations() {
        let (a, b, c, d) = (
            AlgebraElement::a(),
            AlgebraElement::b(),
            AlgebraElement::c(),
            AlgebraElement::d(),
        );
        assert_eq!(&a * &b, q() * (&b * &a));
        assert_eq!(&a * &c, q() * (&c * &a));
        assert_eq!(&b * &d, q() * (&d * &b));
        assert_eq!(&c * &d, q() * (&d * &c));
        assert_eq!(&b * &c, &c * &b);
        let bc = &b * &c;
        assert_eq!(&a * &d, AlgebraElement::one() + q() * bc.clone());
        assert_eq!(
            &d * &a,
            AlgebraElement::one() + ScalarQ::q_pow(-1) * bc
        );
    }

    #[test]
    fn ba_normal_form() {
        let ba = &AlgebraElement::b() * &AlgebraElement::a();
        let ab = Monomial::new(1, 1, 0, 0).unwrap();
        assert_eq!(ba, AlgebraElement::term(ScalarQ::q_pow(-1), ab));
    }

    #[test]
    fn inverse_cancels() {
        let x = normal_form(
            &[Letter::new(Gen::D), Letter::inv(Gen::C), Letter::new(Gen::C)],
            true,
        )
        .unwrap();
        assert_eq!(x, AlgebraElement::d());
    }

    #[test]
    fn inverse_needs_localization() {
        let r = normal_form(&[Letter::inv(Gen::B)], false);
        assert!(matches!(r, Err(Error::LocalizationMode(_))));
    }

    #[test]
    fn associativity_on_small_words() {
        let gens = [
            AlgebraElement::a(),
            AlgebraElement::b(),
            AlgebraElement::c(),
            AlgebraElement::d(),
        ];
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    let xy = x * y;
                    let yz = y * z;
                    let l = &xy * z;
                    let r = x * &yz;
                    assert_eq!(l, r);
                }
            }
        }
    }
}
