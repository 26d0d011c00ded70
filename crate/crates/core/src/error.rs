use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("size mismatch: expected degree {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("matching class undefined for odd n = {0}")]
    MatchingClassUndefined(usize),

    #[error("cell ({row}, {col}) lies outside the diagram")]
    CellOutsideDiagram { row: usize, col: usize },

    #[error("parameter c = {0} must lie strictly between 0 and 1/4")]
    InvalidThreshold(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("not an involution")]
    NotAnInvolution,

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("completeness condition violated (deviation {0:.3e})")]
    CompletenessViolated(f64),

    #[error("not an orthogonal projector: {0}")]
    NotAProjector(String),

    #[error("projector has rank zero")]
    ZeroRank,

    #[error("mismatched outcome sets")]
    MismatchedOutcomes,

    #[error("n = {n} exceeds the desk-scale limit {limit} for {what}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
