use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("order {from} does not divide target order {to}")]
    OrderNotDivisible { from: u32, to: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid quantum matrix: {0}")]
    InvalidQuantumMatrix(String),

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),

    #[error("quantum matrix is not in simple form: {0}")]
    NotSimpleForm(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("not a real root: {0}")]
    NotRealRoot(String),

    #[error("degree {0} is not in the radical")]
    NotInRadical(String),

    #[error("degree {0} lies in the radical, excluded here")]
    RadicalDegree(String),

    #[error("evaluation points collide under xi: {0}")]
    XiCollision(String),

    #[error("zero coordinate in evaluation point")]
    ZeroCoordinate,

    #[error("incompatible grading: {0}")]
    IncompatibleGrading(String),

    #[error("element outside the supported subalgebra: {0}")]
    Unsupported(String),

    #[error("missing generator action: {0}")]
    MissingAction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
