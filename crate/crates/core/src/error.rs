use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("label {label} out of range for {labels} labels")]
    LabelOutOfRange { label: usize, labels: usize },
    #[error("domain point {point} out of range for domain of size {size}")]
    PointOutOfRange { point: usize, size: usize },
    #[error("list must hold {expected} distinct labels, got {got}")]
    BadListSize { expected: usize, got: usize },
    #[error("list size {k} needs 1 <= k < {labels}")]
    ListSizeOutOfRange { k: usize, labels: usize },
    #[error("hypothesis class is empty")]
    EmptyClass,
    #[error("inconsistent class: {0}")]
    InconsistentClass(String),
    #[error("branch index {index} out of range at depth {depth}")]
    InvalidBranch { index: usize, depth: usize },
    #[error("example ({point}, {label}) is not realizable by the current version space")]
    NonRealizable { point: usize, label: usize },
    #[error("feature dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid marginal vector: {0}")]
    InvalidDistribution(String),
    #[error("at least one expert is required")]
    NoExperts,
    #[error("dimension is infinite")]
    InfiniteDimension,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("minimax value did not stabilize within horizon {cap}")]
    NotStabilized { cap: usize },
}
