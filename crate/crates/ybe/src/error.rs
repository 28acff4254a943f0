use thiserror::Error;

/// Errors raised by the algebraic kernels.
///
/// `Parse` covers malformed textual input (cycle notation, word syntax,
/// fixture files); everything else is a domain error on well-formed input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("point {0} repeated in cycle product")]
    RepeatedPoint(usize),

    #[error("not a bijection: image table {0:?}")]
    NotBijective(Vec<usize>),

    #[error("closure exceeded cap of {cap} elements")]
    ClosureCap { cap: usize },

    #[error("solution is not involutive")]
    NotInvolutive,

    #[error("not a valid solution: {0}")]
    InvalidSolution(String),

    #[error("size {0} out of supported range {1}")]
    SizeOutOfRange(usize, String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not invertible over the integers")]
    NotUnimodular,

    #[error("not a valid group: {0}")]
    InvalidGroup(String),

    #[error("not a valid skew brace: {0}")]
    InvalidBrace(String),

    #[error("additive group is not nilpotent; Sylow decomposition is not canonical")]
    NotNilpotentType,

    #[error("prime {0} does not divide the order {1}")]
    PrimeNotInOrder(usize, usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
