use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("operation requires a field, got {0}")]
    NotAField(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("polynomial must be non-constant")]
    ConstantPolynomial,

    #[error("polynomial must be non-zero")]
    ZeroPolynomial,

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("matrix does not square to zero")]
    NotSquareZero,

    #[error("reduction is not idempotent")]
    NotIdempotentModIdeal,

    #[error("reduction is not {0}-potent")]
    NotPotentModIdeal(String),

    #[error("residue matrix does not lie in the corner of the idempotent")]
    CornerMismatch,

    #[error("lifting identity failed: {0}")]
    LiftIdentityFailed(String),

    #[error("iteration limit of {0} steps exceeded")]
    IterationLimit(u64),

    #[error("budget of {budget} ring multiplications exceeded after {examined} candidates")]
    BudgetExceeded { budget: u64, examined: u64 },
}

impl Error {
    pub(crate) fn parse(pos: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            message: message.into(),
        }
    }
}
