use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("matrix entries must be finite (found NaN or infinity)")]
    NonFinite,

    #[error("matrix is not a permutation matrix: {0}")]
    NotPermutationMatrix(String),

    #[error("matrix is not row-stochastic within {tol}: {detail}")]
    NotRowStochastic { tol: f64, detail: String },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loops are not allowed (vertex {0})")]
    SelfLoop(usize),

    #[error("graph generation failed: {0}")]
    GraphGeneration(String),

    #[error("graph structure violates a protocol precondition: {0}")]
    GraphStructure(String),

    #[error("linear consensus requires a balanced graph")]
    Unbalanced,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("rank-deficient matrix: {0}")]
    RankDeficient(String),

    #[error("missing association for edge ({i}, {j})")]
    MissingAssociation { i: usize, j: usize },

    #[error("association reciprocity violated on edge ({i}, {j}): stored matrix is not the transpose of the reverse edge")]
    ReciprocityViolation { i: usize, j: usize },

    #[error("instance too large for exhaustive search: {0}")]
    SizeGuard(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
