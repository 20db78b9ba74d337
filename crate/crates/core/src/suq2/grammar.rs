//! Text form of algebra elements.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := unary (('*'|'/') unary)*
//! unary := '-' unary | atom ['^' int]
//! atom  := integer | 'q' | 'a' | 'b' | 'c' | 'd' | name | '(' expr ')'
//! ```
//!
//! Negative exponents are allowed on scalars and on products of `b`, `c`;
//! division is by scalars only.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::qscalar::ScalarQ;
use crate::text::{Cursor, Token};

use super::element::AlgebraElement;
use super::monomial::{Gen, Monomial};

/// Named elements available to the parser (e.g. sphere generators).
pub type Env = BTreeMap<String, AlgebraElement>;

pub fn parse_element(src: &str, env: &Env) -> Result<AlgebraElement> {
    let mut cur = Cursor::new(src)?;
    let v = expr(&mut cur, env)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(v)
}

impl FromStr for AlgebraElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_element(s, &Env::new())
    }
}

fn expr(cur: &mut Cursor, env: &Env) -> Result<AlgebraElement> {
    let mut acc = if cur.eat(&Token::Minus) {
        -term(cur, env)?
    } else {
        cur.eat(&Token::Plus);
        term(cur, env)?
    };
    loop {
        if cur.eat(&Token::Plus) {
            acc = acc + term(cur, env)?;
        } else if cur.eat(&Token::Minus) {
            acc = acc - term(cur, env)?;
        } else {
            return Ok(acc);
        }
    }
}

fn term(cur: &mut Cursor, env: &Env) -> Result<AlgebraElement> {
    let mut acc = unary(cur, env)?;
    loop {
        if cur.eat(&Token::Star) {
            acc = acc * unary(cur, env)?;
        } else if cur.eat(&Token::Slash) {
            let at = cur.offset();
            let rhs = unary(cur, env)?;
            let s = rhs.as_scalar().ok_or(Error::Parse {
                pos: at,
                msg: "division is only defined by scalars".into(),
            })?;
            acc = acc.scale(&s.inv()?);
        } else {
            return Ok(acc);
        }
    }
}

fn unary(cur: &mut Cursor, env: &Env) -> Result<AlgebraElement> {
    if cur.eat(&Token::Minus) {
        return Ok(-unary(cur, env)?);
    }
    let base = atom(cur, env)?;
    if !cur.eat(&Token::Caret) {
        return Ok(base);
    }
    let at = cur.offset();
    let e = cur.signed_int()?;
    let e = i32::try_from(e).map_err(|_| cur.error("exponent out of range"))?;
    if e >= 0 {
        return Ok(base.pow(e as u32));
    }
    if let Some(s) = base.as_scalar() {
        return Ok(AlgebraElement::scalar(s.pow(e)?));
    }
    let inv = invert_bc(&base).ok_or(Error::Parse {
        pos: at,
        msg: "negative powers are only defined for scalars, b and c".into(),
    })?;
    Ok(inv.pow(e.unsigned_abs()))
}

/// Inverse of `s * b^m c^r`.
fn invert_bc(x: &AlgebraElement) -> Option<AlgebraElement> {
    if x.len() != 1 {
        return None;
    }
    let (m, c) = x.terms().next()?;
    if m.a() != 0 || m.d() != 0 {
        return None;
    }
    let mono = Monomial::raw(0, -m.b(), -m.c(), 0);
    Some(AlgebraElement::term(c.inv().ok()?, mono))
}

fn atom(cur: &mut Cursor, env: &Env) -> Result<AlgebraElement> {
    let err_at = cur.error("expected a number, generator, name or `(`");
    match cur.bump() {
        Some(Token::Num(n)) => Ok(AlgebraElement::scalar(ScalarQ::from_rational(
            BigRational::from_integer(n),
        ))),
        Some(Token::Ident(id)) => match id.as_str() {
            "q" => Ok(AlgebraElement::scalar(ScalarQ::q())),
            "a" => Ok(AlgebraElement::gen(Gen::A)),
            "b" => Ok(AlgebraElement::gen(Gen::B)),
            "c" => Ok(AlgebraElement::gen(Gen::C)),
            "d" => Ok(AlgebraElement::gen(Gen::D)),
            name => env.get(name).cloned().ok_or_else(|| match err_at {
                Error::Parse { pos, .. } => Error::Parse {
                    pos,
                    msg: format!("unknown symbol `{name}`"),
                },
                e => e,
            }),
        },
        Some(Token::LParen) => {
            let v = expr(cur, env)?;
            cur.expect(&Token::RParen)?;
            Ok(v)
        }
        _ => Err(err_at),
    }
}

/// Renders `c * body`, leaving out unit coefficients.
pub(crate) fn with_coeff(c: &ScalarQ, body: &str) -> String {
    if body == "1" {
        return c.to_string();
    }
    if c.is_one() {
        return body.to_string();
    }
    if c.is_minus_one() {
        return format!("-{body}");
    }
    if c.as_monomial().is_some() || !c.is_laurent() {
        // `3/2*q^-1` and `(n)/(d)` both bind as a single factor.
        return format!("{c}*{body}");
    }
    format!("({c})*{body}")
}

/// Joins rendered terms with ` + ` / ` - `.
pub(crate) fn join_terms(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| with_coeff(c, &m.to_string()))
            .collect();
        write!(f, "{}", join_terms(&parts))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for s in [
            "a*b - q*b*c + 1",
            "(q^2-1)/(q^2+1)*a^2 + (q+1)*d",
            "-3/2*q^-1*b^-1*c + q^2-1",
            "0",
        ] {
            let x: AlgebraElement = s.parse().unwrap();
            let y: AlgebraElement = x.to_string().parse().unwrap();
            assert_eq!(x, y, "{s} -> {x}");
        }
    }

    #[test]
    fn env_symbols() {
        let mut env = Env::new();
        env.insert("xp".into(), "b*a".parse().unwrap());
        let x = parse_element("xp^2 - q*xp", &env).unwrap();
        let y: AlgebraElement = "(b*a)^2 - q*b*a".parse().unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn rejects_bad_inverse_and_division() {
        assert!("a^-1".parse::<AlgebraElement>().is_err());
        assert!("a/b".parse::<AlgebraElement>().is_err());
        assert!("z".parse::<AlgebraElement>().is_err());
    }

    #[test]
    fn inverse_marks_localized() {
        let x: AlgebraElement = "b^-1".parse().unwrap();
        assert!(x.is_localized());
        let y: AlgebraElement = "b^-1*b".parse().unwrap();
        assert_eq!(y, AlgebraElement::one());
    }
}
