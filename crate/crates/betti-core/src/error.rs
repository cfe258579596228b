//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("scalar belongs to a different field")]
    FieldMismatch,
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("input is not homogeneous: {0}")]
    NonHomogeneousInput(String),
    #[error("degree cap exceeded: needed degree {needed} but the window stops at {cap}")]
    DegreeCapExceeded { needed: i64, cap: i64 },
    #[error("window exceeded: {0}")]
    WindowExceeded(String),
    #[error("unsound window: {0}")]
    UnsoundWindow(String),
    #[error("piece index {index} out of range for order {order}")]
    BadPieceIndex { index: i64, order: i64 },
    #[error("elements have mixed degrees: {0}")]
    MixedDegrees(String),
    #[error("homomorphism does not scale degrees uniformly: {0}")]
    OrderMismatch(String),
    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("algebra is not standard graded (generator degree {0})")]
    NotStandardGraded(i64),
    #[error("quotient by the extended ideal is not artinian within the window")]
    NotArtinian,
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
