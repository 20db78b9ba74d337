//! Left-covariant first-order differential calculi on `O(SU_q(2))`.
//!
//! A calculus is a [`CalculusDescriptor`]: a basis of invariant forms, the
//! table of products `ω_i · g` for every generator `g`, the canonical forms
//! `ω_Γ(g)` and the right ideal. The differential is the generator table
//! extended by the Leibniz rule, so the relations of the algebra and the
//! right ideal become exact checks rather than assumptions.

mod engine;
mod form;
mod tables;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use engine::word_differential;
pub use form::OneForm;
pub use tables::{make_calculus, CalculusDescriptor, StarTable};
pub use verify::{
    omega_gamma_rank, quotient_consistency, verify_calculus, verify_omega_words, OMEGA_WORDS,
};

/// The five calculi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CalculusId {
    ThreeD,
    FourDPlus,
    FourDMinus,
    Q3Plus,
    Q3Minus,
}

impl CalculusId {
    pub const ALL: [CalculusId; 5] = [
        CalculusId::ThreeD,
        CalculusId::FourDPlus,
        CalculusId::FourDMinus,
        CalculusId::Q3Plus,
        CalculusId::Q3Minus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CalculusId::ThreeD => "3D",
            CalculusId::FourDPlus => "4D+",
            CalculusId::FourDMinus => "4D-",
            CalculusId::Q3Plus => "Q3+",
            CalculusId::Q3Minus => "Q3-",
        }
    }

    pub fn form_names(self) -> &'static [&'static str] {
        match self {
            CalculusId::ThreeD => &["w0", "w1", "w2"],
            CalculusId::FourDPlus | CalculusId::FourDMinus => &["w1", "w2", "w3", "w4"],
            CalculusId::Q3Plus | CalculusId::Q3Minus => &["w1", "w2", "w3"],
        }
    }

    pub fn dim(self) -> usize {
        self.form_names().len()
    }

    /// `ε` for the 4D± family.
    pub fn epsilon(self) -> Option<i32> {
        match self {
            CalculusId::ThreeD => None,
            CalculusId::FourDPlus | CalculusId::Q3Plus => Some(1),
            CalculusId::FourDMinus | CalculusId::Q3Minus => Some(-1),
        }
    }

    /// The 4D calculus a quotient descends from.
    pub fn parent(self) -> Option<CalculusId> {
        match self {
            CalculusId::Q3Plus => Some(CalculusId::FourDPlus),
            CalculusId::Q3Minus => Some(CalculusId::FourDMinus),
            _ => None,
        }
    }

    /// Index of a basis form by name (`"w1"` etc.).
    pub fn form_index(self, name: &str) -> Option<usize> {
        self.form_names().iter().position(|n| *n == name)
    }
}

impl fmt::Display for CalculusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CalculusId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | ' '))
            .collect::<String>()
            .to_ascii_uppercase();
        Ok(match norm.as_str() {
            "3D" | "THREED" => CalculusId::ThreeD,
            "4D+" | "4DPLUS" | "FOURDPLUS" => CalculusId::FourDPlus,
            "4D-" | "4DMINUS" | "FOURDMINUS" => CalculusId::FourDMinus,
            "Q3+" | "Q3PLUS" => CalculusId::Q3Plus,
            "Q3-" | "Q3MINUS" => CalculusId::Q3Minus,
            _ => return Err(Error::UnknownCalculus(s.to_string())),
        })
    }
}
