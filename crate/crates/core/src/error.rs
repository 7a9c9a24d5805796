use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("permutation of length {got} does not match graph with {expected} nodes")]
    PermutationLength { expected: usize, got: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// The input is not planar. `witness` holds the edges of an edge-minimal
    /// non-planar subgraph when one was computed (a Kuratowski subdivision).
    #[error("graph is not planar")]
    NotPlanar { witness: Vec<(usize, usize)> },

    #[error("graph is disconnected; process each connected component separately")]
    Disconnected,

    #[error("block is not biconnected")]
    NotBiconnected,

    #[error("invalid skeleton: {0}")]
    InvalidSkeleton(String),

    #[error("decomposition integrity error: {0}")]
    Integrity(String),

    #[error("walk stalled after {used} of {total} darts")]
    WalkStalled { used: usize, total: usize },

    #[error("graph with {n} nodes exceeds the brute-force bound of {bound}")]
    SizeBound { n: usize, bound: usize },

    #[error("invalid generator spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
