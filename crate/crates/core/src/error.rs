use thiserror::Error;

/// Errors raised while building or evaluating propagators and sequences.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported matrix dimension {0} (expected 2 or 4)")]
    BadDimension(usize),

    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),

    #[error("unknown product operator label `{0}`")]
    UnknownLabel(String),

    #[error("operator {label} is not defined on a {dim}-dimensional space")]
    LabelDimension { label: String, dim: usize },

    #[error("generator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("generator does not square to I/4 (deviation {0:e}); use expm_generic")]
    NotProductOperator(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("eigendecomposition failed to converge")]
    Eigen,

    #[error("invalid pulse element: {0}")]
    InvalidElement(String),

    #[error("empty pulse sequence")]
    EmptySequence,

    #[error("invalid error model: {0}")]
    InvalidErrorModel(String),

    #[error("rotation angle {0} is outside the BB1 domain |theta| <= 4 pi")]
    Bb1Domain(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("infidelity {infidelity:e} at epsilon {epsilon:e} is below the numerical noise floor")]
    BelowNoiseFloor { epsilon: f64, infidelity: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
