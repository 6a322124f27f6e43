use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live over different indeterminate lists, or an
    /// indeterminate is missing from an assignment.
    #[error("context error: {0}")]
    Context(String),

    /// Input outside the domain of the operation (zero where nonzero is
    /// required, composite where a prime is required, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("enumeration refused: {required} assignments exceed the limit of {limit}")]
    EnumerationBudget { required: u128, limit: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
