use thiserror::Error;

/// Errors raised across the library. Each variant corresponds to a
/// precondition or validation failure of one operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis exchange fails: B1={b1:?}, B2={b2:?}, x={x} has no valid swap")]
    ExchangeViolation { b1: Vec<usize>, b2: Vec<usize>, x: usize },
    #[error("bases have different cardinalities ({0} and {1})")]
    MixedCardinality(usize, usize),
    #[error("basis family is empty")]
    EmptyBasisFamily,
    #[error("element {element} outside ground set of size {ground_size}")]
    ElementOutOfRange { element: usize, ground_size: usize },
    #[error("ground set of size {0} exceeds the supported maximum of 32")]
    GroundSetTooLarge(usize),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("matroid is not connected")]
    NotConnected,
    #[error("base point is a coloop of both matroids")]
    BasePointColoop,
    #[error("base point is a loop of both matroids")]
    BasePointLoop,
    #[error("base point is a loop or coloop of one of the matroids")]
    BasePointDegenerate,
    #[error("point configuration contains duplicate points")]
    DuplicatePoints,
    #[error("point lies in the configuration")]
    PointInV,
    #[error("functional is not negative at the separating point")]
    NonNegativeAtP,
    #[error("functional is negative on the configuration")]
    NegativeOnV,
    #[error("slack entry {0} has no square root in Q(sqrt 2) of the supported form")]
    UnsupportedEntry(i64),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
