use thiserror::Error;

/// Errors raised by the symbolic and numeric engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole: denominator vanishes at q = {0}")]
    Pole(String),

    #[error("q must lie strictly between 0 and 1, got {0}")]
    InvalidQ(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("localized element used where the localization is off: {0}")]
    LocalizationMode(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("unknown calculus `{0}`")]
    UnknownCalculus(String),

    #[error("element is outside the sphere subalgebra: {0}")]
    NotInSphere(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("condition {condition} violated: scaled residual {residual:.3e} exceeds {tolerance:.1e}")]
    SpecViolation {
        condition: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
