use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a complex: composite of consecutive maps is nonzero on basis vector {witness}")]
    NotAComplex { witness: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("rejected: {what} (witness: {witness})")]
    Rejected { what: String, witness: String },
    #[error("index out of range: {0}")]
    Index(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
