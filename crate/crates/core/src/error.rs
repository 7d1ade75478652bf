use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero element")]
    DivisionByZero,
    #[error("denominator vanishes at {0}")]
    DenominatorVanishes(String),
    #[error("missing binding for variable `{0}`")]
    MissingVariable(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("family `{family}` is incompatible with {group}: {reason}")]
    FamilyMismatch {
        family: String,
        group: String,
        reason: String,
    },
    #[error("side condition violated: {0} vanishes")]
    SideCondition(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown parameter {0}")]
    UnknownParameter(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
