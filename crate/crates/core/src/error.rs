use thiserror::Error;

/// Vertices are stored 0-based; messages print them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid orientation string: {0}")]
    Orientation(String),
    #[error("invalid composition: {0}")]
    Composition(String),
    #[error("compositions have different sums: {0} vs {1}")]
    SumMismatch(usize, usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("vertex {} out of range", .0 + 1)]
    VertexOutOfRange(usize),
    #[error("representation does not satisfy the relations")]
    RelationsViolated,
    #[error("representation is not Delta-filtered")]
    NotDeltaFiltered,
    #[error("vertex {} is not admissible for this operation", .0 + 1)]
    NotAdmissible(usize),
    #[error("Delta multiplicity mismatch at vertex {}: {left} vs {right}", .vertex + 1)]
    Multiplicity { vertex: usize, left: usize, right: usize },
    #[error("support condition violated: {0}")]
    Support(String),
    #[error("summands are not comparable: {0}")]
    Incomparable(String),
    #[error("matrix is not in the nilradical")]
    NotInNilradical,
    #[error("representation is not in R^alpha normal form")]
    NotRAlpha,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
