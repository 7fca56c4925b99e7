use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("size guard exceeded: {requested} points requested, limit is {limit}")]
    SizeGuardExceeded { requested: usize, limit: usize },
    #[error("the first dimension must be 1 (pointed chains)")]
    RequiresPointedDims,
    #[error("the nested partition is not nilpotently filtered")]
    RequiresNilfil,
    #[error("{needed} unit vectors needed but n = {n}")]
    TooManyPoints { needed: usize, n: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid coset representative: {0}")]
    InvalidCoset(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
