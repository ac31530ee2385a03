use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("linear system {0}")]
    LinearSystem(String),
    #[error("representation rejected: {0}")]
    InvalidRepresentation(String),
    #[error("generator construction failed: {0}")]
    Construction(String),
    #[error("backends disagree: {0}")]
    BackendMismatch(String),
    #[error("not an Askey-Wilson pair: {0}")]
    NotAskeyWilson(String),
    #[error("no relation found: {0}")]
    NoRelation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
