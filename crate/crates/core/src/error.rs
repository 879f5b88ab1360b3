use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("object is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("unsupported degree {degree}: {what}")]
    UnsupportedDegree { degree: i64, what: &'static str },

    #[error("cochain arity {arity} exceeds the cap {cap}")]
    ArityCap { arity: usize, cap: usize },

    #[error("exponential series did not terminate within order {max_order}")]
    NotNilpotent { max_order: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cochain is not the derived bracket of a vector field: {0}")]
    NotRepresentable(String),

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
