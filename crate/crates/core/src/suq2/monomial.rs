use std::fmt;

use crate::error::{Error, Result};

/// Which side of the PBW basis a monomial lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `a^p b^m c^r` (includes the unit).
    A,
    /// `b^m c^r d^s` with `s >= 1`.
    D,
}

/// One of the four matrix generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    B,
    C,
    D,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::A, Gen::B, Gen::C, Gen::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
            Gen::D => 'd',
        }
    }
}

/// A generator raised to `+1` or, for `b` and `c`, to `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(gen: Gen) -> Self {
        Self {
            gen,
            inverse: false,
        }
    }

    pub const fn inv(gen: Gen) -> Self {
        Self { gen, inverse: true }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen.symbol())
        } else {
            write!(f, "{}", self.gen.symbol())
        }
    }
}

/// PBW monomial `a^p b^m c^r d^s` with `p == 0 || s == 0`.
///
/// `m` and `r` may be negative only in the localized algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u32,
    a: u32,
    d: u32,
    b: i32,
    c: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        deg: 0,
        a: 0,
        d: 0,
        b: 0,
        c: 0,
    };

    pub fn new(a: u32, b: i32, c: i32, d: u32) -> Result<Self> {
        if a > 0 && d > 0 {
            return Err(Error::Unsupported(format!(
                "a^{a}...d^{d} is not a PBW monomial"
            )));
        }
        Ok(Self::raw(a, b, c, d))
    }

    pub(crate) fn raw(a: u32, b: i32, c: i32, d: u32) -> Self {
        debug_assert!(a == 0 || d == 0);
        let deg = a + d + b.unsigned_abs() + c.unsigned_abs();
        Self { deg, a, d, b, c }
    }

    pub fn gen(g: Gen) -> Self {
        match g {
            Gen::A => Self::raw(1, 0, 0, 0),
            Gen::B => Self::raw(0, 1, 0, 0),
            Gen::C => Self::raw(0, 0, 1, 0),
            Gen::D => Self::raw(0, 0, 0, 1),
        }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> i32 {
        self.b
    }

    pub fn c(&self) -> i32 {
        self.c
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn side(&self) -> Side {
        if self.d > 0 {
            Side::D
        } else {
            Side::A
        }
    }

    /// Word length, counting inverse letters once each.
    pub fn degree(&self) -> u32 {
        self.deg
    }

    /// Exponent sum of the middle block `b^m c^r`.
    pub(crate) fn mid_degree(&self) -> i32 {
        self.b + self.c
    }

    pub fn is_localized(&self) -> bool {
        self.b < 0 || self.c < 0
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// The canonical letter word `a..a b..b c..c d..d`.
    pub fn letters(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity(self.deg as usize);
        w.extend(std::iter::repeat_n(Letter::new(Gen::A), self.a as usize));
        let push = |w: &mut Vec<Letter>, g: Gen, e: i32| {
            let l = if e < 0 { Letter::inv(g) } else { Letter::new(g) };
            w.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        };
        push(&mut w, Gen::B, self.b);
        push(&mut w, Gen::C, self.c);
        w.extend(std::iter::repeat_n(Letter::new(Gen::D), self.d as usize));
        w
    }

    /// All unlocalized monomials of total degree `<= max_degree`, in order.
    pub fn up_to_degree(max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in 0..=max_degree {
            for b in 0..=(max_degree - a) {
                for c in 0..=(max_degree - a - b) {
                    let rest = max_degree - a - b - c;
                    out.push(Self::raw(a, b as i32, c as i32, 0));
                    if a == 0 {
                        for d in 1..=rest {
                            out.push(Self::raw(0, b as i32, c as i32, d));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (sym, e) in [
            ('a', self.a as i32),
            ('b', self.b),
            ('c', self.c),
            ('d', self.d as i32),
        ] {
            match e {
                0 => {}
                1 => parts.push(sym.to_string()),
                e => parts.push(format!("{sym}^{e}")),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}
