use thiserror::Error;

/// Reasons a vertex list is rejected as a Fano polytope.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("need at least {needed} vertices in dimension {dim}, got {got}")]
    TooFewVertices {
        dim: usize,
        needed: usize,
        got: usize,
    },
    #[error("vertex {index} has length {got}, expected {dim}")]
    WrongLength {
        index: usize,
        dim: usize,
        got: usize,
    },
    #[error("vertex {index} duplicates vertex {first}")]
    DuplicateVertex { index: usize, first: usize },
    #[error("vertex {index} is not primitive")]
    NonPrimitiveVertex { index: usize },
    #[error("vertices do not span a full-dimensional polytope")]
    NotFullDimensional,
    #[error("the origin is not strictly inside the polytope")]
    OriginNotInterior,
    #[error("column {index} is not a vertex of the convex hull")]
    RedundantColumn { index: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow")]
    Overflow,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("invalid polytope: {0}")]
    Polytope(#[from] PolytopeError),
    #[error("polytope is not reflexive")]
    NotReflexive,
    #[error("polytope is not simplicial")]
    NotSimplicial,
    #[error("polytope is not pseudo-symmetric")]
    NotPseudoSymmetric,
    #[error("not a reflexive cs-crosspolytope: {0}")]
    NotCrossPolytope(String),
    #[error("invalid Wirth matrix: {0}")]
    InvalidWirth(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
