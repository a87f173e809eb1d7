use thiserror::Error;

use crate::scalar::Field;

/// Errors raised by the exact-algebra layer and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("surd divisor `{0}` has more than one term")]
    NonInvertibleSurd(String),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("linear system is infeasible: {0}")]
    Infeasible(String),

    #[error("{what} is not invertible over {field}")]
    NonInvertibleScalar { what: String, field: Field },

    #[error("{class}: constraint `{constraint}` violated")]
    ClassViolation { class: String, constraint: String },

    #[error("bracket is not idempotent on the given points")]
    NotIdempotent,

    #[error("{0}")]
    InvalidField(String),

    #[error("{0}")]
    InvalidClass(String),

    #[error("operation not supported over {field}: {reason}")]
    UnsupportedField { field: Field, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("check `{check}` does not apply to bracket {bracket}")]
    NotApplicable { check: String, bracket: String },

    #[error("{0} requires conjugation by U; P does not preserve it")]
    RequiresUnitary(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
