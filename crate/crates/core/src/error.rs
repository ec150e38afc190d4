use thiserror::Error;

/// Errors produced by complex construction, spectral computations and the
/// exact optimization layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("dimension {dim} out of range (complex has dimension {max})")]
    DimensionOutOfRange { dim: usize, max: usize },

    #[error("capacity limit exceeded: {0}")]
    Capacity(String),

    #[error("degenerate degree: {0}")]
    DegenerateDegree(String),

    #[error("ambiguous adjacency: {0}")]
    AmbiguousAdjacency(String),

    #[error("non-finite numeric input: {0}")]
    NumericInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("linear program is infeasible")]
    LpInfeasible,

    #[error("linear program is unbounded")]
    LpUnbounded,
}

pub type Result<T> = std::result::Result<T, Error>;
