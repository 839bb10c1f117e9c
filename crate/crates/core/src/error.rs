use thiserror::Error;

use crate::sparsity::Density;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} is coloured {colour}, which is not in its list")]
    InvalidColouring { vertex: usize, colour: u32 },

    #[error("size mismatch: expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("instance too large for exhaustive search: {size} exceeds cap {cap}")]
    SizeLimitExceeded { size: u128, cap: u128 },

    #[error("precondition violated at vertex {vertex}: {reason}")]
    PreconditionViolated { vertex: usize, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("density bound violated: {} vertices induce average degree {density}", witness.len())]
    DensityViolation {
        witness: Vec<usize>,
        density: Density,
    },

    #[error("no independent transversal exists")]
    NotFound,

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn precondition(vertex: usize, reason: impl Into<String>) -> Self {
        Error::PreconditionViolated {
            vertex,
            reason: reason.into(),
        }
    }
}
