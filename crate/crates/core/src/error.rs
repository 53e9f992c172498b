use thiserror::Error;

use crate::fields::MembershipReport;
use crate::weyl::WeylElement;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} degrees of freedom, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected} components, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("generator index {index} out of range for {dof} degrees of freedom")]
    IndexOutOfRange { index: usize, dof: usize },

    #[error("not a vector field: {0}")]
    NotAVectorField(MembershipReport),

    #[error("precondition violated: {what} (residual {residual})")]
    PreconditionViolated {
        what: &'static str,
        residual: WeylElement,
    },

    #[error("generator {0} has no matrix in the assignment")]
    MissingGenerator(String),

    #[error("matrix dimension mismatch: expected {expected}, found {found}")]
    MatrixDim { expected: usize, found: usize },

    #[error("cannot evaluate a negative power of hbar at hbar = 0")]
    HbarPole,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid JSON: {0}")]
    Json(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Arity { expected, found })
    }
}
