use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be between 1 and {max}, got {n}")]
    InvalidSize { n: usize, max: usize },

    #[error("size mismatch: expected {expected} letters, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("tableau is not standard: {0}")]
    NotStandard(String),

    #[error("invalid perfect matching: {0}")]
    InvalidMatching(String),

    #[error("matching is not noncrossing: {a}~{c} crosses {b}~{d}")]
    Crossing { a: usize, b: usize, c: usize, d: usize },

    #[error("generator index {i} out of range 1..{max}")]
    InvalidGenerator { i: usize, max: usize },

    #[error("minor columns must satisfy 1 <= a < b <= {max}, got ({a}, {b})")]
    InvalidMinor { a: usize, b: usize, max: usize },

    #[error("vector is not in the span of the basis")]
    NotInSpan,

    #[error("intertwiner space has dimension {0}, expected 1")]
    IntertwinerDimension(usize),

    #[error("oracle produced a non-integral entry {value} at ({row}, {col})")]
    NonIntegral { row: usize, col: usize, value: String },

    #[error(transparent)]
    LinAlg(#[from] crate::exactalg::LinAlgError),
}
