//! Exact arithmetic in the rational function field `Q(q)`.
//!
//! A [`ScalarQ`] is a ratio of [`Laurent`] polynomials kept in a canonical
//! form, so structural equality decides equality in the field and values can
//! be used as map keys. Numeric evaluation substitutes an exact rational
//! `0 < q < 1`; floats only appear when a caller converts the exact result.

pub mod linalg;
mod laurent;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use laurent::Laurent;

use crate::error::{Error, Result};
use crate::text::{Cursor, Token};

/// Element of `Q(q)` in canonical form.
///
/// Invariants: the denominator is monic with lowest exponent `0` (so `q`
/// never divides it), and numerator and denominator are coprime. Zero is
/// stored as `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    num: Laurent,
    den: Laurent,
}

impl ScalarQ {
    pub fn zero() -> Self {
        Self {
            num: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(Laurent::monomial(BigRational::from_integer(n.into()), 0))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_laurent(Laurent::monomial(r, 0))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_laurent(num: Laurent) -> Self {
        Self {
            num,
            den: Laurent::one(),
        }
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        Self::from_laurent(Laurent::monomial(BigRational::from_integer(c.into()), e))
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `λ = q - q^{-1}`.
    pub fn lambda() -> Self {
        Self::q() - Self::q_pow(-1)
    }

    /// `λ₊ = q + q^{-1}`.
    pub fn lambda_plus() -> Self {
        Self::q() + Self::q_pow(-1)
    }

    /// The sign `ε = ±1` as a scalar.
    pub fn sign(eps: i32) -> Self {
        Self::from_int(if eps < 0 { -1 } else { 1 })
    }

    /// Normalizes an arbitrary numerator/denominator pair.
    pub fn from_parts(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.len() == 1 {
            // Monomial denominator: fold it into the numerator.
            let c = den.leading().unwrap().recip();
            return Self::from_laurent(num.shift(-den.low()).scale(&c));
        }
        let den_shift = den.low();
        let num_shift = num.low();
        let den0 = den.shift(-den_shift);
        let num0 = num.shift(-num_shift);
        let g = num0.gcd(&den0);
        let (num0, den0) = if g.len() > 1 {
            (num0.div_rem(&g).0, den0.div_rem(&g).0)
        } else {
            (num0, den0)
        };
        let lead = den0.leading().unwrap().recip();
        let num = num0.shift(num_shift - den_shift).scale(&lead);
        let den = den0.scale(&lead);
        if den.is_one() {
            Self::from_laurent(num)
        } else {
            Self { num, den }
        }
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True for rational constants (no `q` dependence).
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && (self.num.is_zero() || (self.num.len() == 1 && self.num.low() == 0))
    }

    /// `c * q^e` with one term, returned as `(c, e)`.
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        if self.den.is_one() && self.num.len() == 1 {
            Some((self.num.leading().unwrap().clone(), self.num.low()))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Exact substitution of a rational `0 < q < 1`.
    pub fn evaluate_at(&self, q_value: &BigRational) -> Result<BigRational> {
        check_q(q_value)?;
        let d = self.den.eval(q_value);
        if d.is_zero() {
            return Err(Error::Pole(crate::qscalar::fmt_rational(q_value)));
        }
        Ok(self.num.eval(q_value) / d)
    }

    /// Float view of [`evaluate_at`](Self::evaluate_at).
    pub fn evaluate_f64(&self, q_value: &BigRational) -> Result<f64> {
        Ok(rational_to_f64(&self.evaluate_at(q_value)?))
    }
}

/// Rejects `q` outside the open unit interval.
pub fn check_q(q_value: &BigRational) -> Result<()> {
    if q_value <= &BigRational::zero() || q_value >= &BigRational::one() {
        return Err(Error::InvalidQ(fmt_rational(q_value)));
    }
    Ok(())
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio of huge integers: divide in floating point after scaling.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn fmt_rational(c: &BigRational) -> String {
    laurent::fmt_rational(c)
}

/// Parses `"1/2"`, `"3"` or `"0.25"` as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational number: `{s}`"),
    };
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches('-'), fp);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

impl Default for ScalarQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarQ::from_laurent(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return ScalarQ::canonical(self.num.add(&rhs.num), self.den.clone());
        }
        ScalarQ::canonical(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Mul<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() || rhs.is_zero() {
            return ScalarQ::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ScalarQ::from_laurent(self.num.mul(&rhs.num));
        }
        ScalarQ::canonical(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        self + &(-rhs)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, rhs: ScalarQ) -> ScalarQ {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, rhs: &ScalarQ) -> ScalarQ {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl AddAssign<&ScalarQ> for ScalarQ {
    fn add_assign(&mut self, rhs: &ScalarQ) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarQ({self})")
    }
}

impl FromStr for ScalarQ {
    type Err = Error;

    /// Grammar: sums and products of integers and `q`, with `/`, `^` (signed
    /// integer exponent) and parentheses, e.g. `"(q^2-1)/(q^2+1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s)?;
        let v = parse_expr(&mut cur)?;
        if !cur.at_end() {
            return Err(cur.error("trailing input"));
        }
        Ok(v)
    }
}

fn parse_expr(cur: &mut Cursor) -> Result<ScalarQ> {
    let mut acc = if cur.eat(&Token::Minus) {
        -parse_term(cur)?
    } else {
        cur.eat(&Token::Plus);
        parse_term(cur)?
    };
    loop {
        if cur.eat(&Token::Plus) {
            acc = acc + parse_term(cur)?;
        } else if cur.eat(&Token::Minus) {
            acc = acc - parse_term(cur)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_term(cur: &mut Cursor) -> Result<ScalarQ> {
    let mut acc = parse_unary(cur)?;
    loop {
        if cur.eat(&Token::Star) {
            acc = acc * parse_unary(cur)?;
        } else if cur.eat(&Token::Slash) {
            let rhs = parse_unary(cur)?;
            acc = acc.try_div(&rhs)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_unary(cur: &mut Cursor) -> Result<ScalarQ> {
    if cur.eat(&Token::Minus) {
        return Ok(-parse_unary(cur)?);
    }
    let base = parse_atom(cur)?;
    if cur.eat(&Token::Caret) {
        let e = cur.signed_int()?;
        let e = i32::try_from(e).map_err(|_| cur.error("exponent out of range"))?;
        return base.pow(e);
    }
    Ok(base)
}

fn parse_atom(cur: &mut Cursor) -> Result<ScalarQ> {
    let err = cur.error("expected number, `q` or `(`");
    match cur.bump() {
        Some(Token::Num(n)) => Ok(ScalarQ::from_rational(BigRational::from_integer(n))),
        Some(Token::Ident(id)) if id == "q" => Ok(ScalarQ::q()),
        Some(Token::LParen) => {
            let v = parse_expr(cur)?;
            cur.expect(&Token::RParen)?;
            Ok(v)
        }
        _ => Err(err),
    }
}

impl serde::Serialize for ScalarQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[allow(dead_code)]
fn _assert_traits() {
    fn is_send_sync<T: Send + Sync>() {}
    is_send_sync::<ScalarQ>();
}

impl ScalarQ {
    pub(crate) fn is_minus_one(&self) -> bool {
        self.den.is_one()
            && self.num.len() == 1
            && self.num.low() == 0
            && self.num.leading().is_some_and(|c| (-c).is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ScalarQ {
        x.parse().unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn additive_inverse() {
        assert!((ScalarQ::q() + -ScalarQ::q()).is_zero());
    }

    #[test]
    fn lambda_times_lambda_plus() {
        let p = ScalarQ::lambda() * ScalarQ::lambda_plus();
        assert_eq!(p, s("q^2-q^-2"));
    }

    #[test]
    fn inverse_is_canonical() {
        let x = s("1-q^2").inv().unwrap();
        assert_eq!(x.to_string(), "(-1)/(q^2-1)");
        assert_eq!(x.denominator().leading().unwrap(), &BigRational::one());
        assert!((&x * &s("1-q^2")).is_one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(ScalarQ::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn common_factor_cancels() {
        // (q^2-1)/(q-1) = q+1
        let x = s("(q^2-1)/(q-1)");
        assert!(x.is_laurent());
        assert_eq!(x, s("q+1"));
        // q-power in the denominator moves to the numerator
        assert_eq!(s("1/(q^3+q)"), s("q^-1/(q^2+1)"));
    }

    #[test]
    fn evaluate_lambdas() {
        let h = half();
        assert_eq!(
            ScalarQ::lambda().evaluate_at(&h).unwrap(),
            BigRational::new((-3).into(), 2.into())
        );
        assert_eq!(
            ScalarQ::lambda_plus().evaluate_at(&h).unwrap(),
            BigRational::new(5.into(), 2.into())
        );
    }

    #[test]
    fn evaluate_rejects_bad_q() {
        assert!(matches!(
            s("1/(1-q)").evaluate_at(&BigRational::one()),
            Err(Error::InvalidQ(_))
        ));
        assert!(matches!(
            s("q").evaluate_at(&BigRational::zero()),
            Err(Error::InvalidQ(_))
        ));
        // A genuine pole inside (0,1).
        assert!(matches!(
            s("1/(2*q-1)").evaluate_at(&half()),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn render_grammar() {
        assert_eq!(s("(q^2-1)/(q^2+1)").to_string(), "(q^2-1)/(q^2+1)");
        assert_eq!(s("3/2*q^-1 - q").to_string(), "-q+3/2*q^-1");
        assert_eq!(ScalarQ::zero().to_string(), "0");
        assert_eq!(s("-(q)").to_string(), "-q");
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), half());
        assert_eq!(parse_rational("0.5").unwrap(), half());
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        match "q + * 2".parse::<ScalarQ>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }
}
