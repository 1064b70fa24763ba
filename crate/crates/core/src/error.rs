use thiserror::Error;

use crate::lattice::LatticeVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("vector {0} is not primitive")]
    NotPrimitive(LatticeVector),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis columns are linearly dependent")]
    DependentBasis,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("fan is not smooth and complete: {0}")]
    NotSmoothComplete(String),
    #[error("ray index {0} is not in the fan")]
    RayNotFound(usize),
    #[error("fan is not weak Fano")]
    NotWeakFano,
    #[error("operation requires dimension {expected}, fan has dimension {found}")]
    UnsupportedDimension { expected: usize, found: usize },
    #[error("relation is not an extremal degree-0 relation: {0}")]
    NotCrepantExtremal(String),
    #[error("two-element relation outside the weak Fano trichotomy: {0}")]
    OutsideTrichotomy(String),
    #[error("unknown catalog name `{0}`")]
    UnknownCatalogName(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
