use nahilb_lattice::LatticeError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightsError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("the nested partition is not a fixed point of the fiber over this flag")]
    NotInFiber,
    #[error("malformed weight multiset: {0}")]
    Malformed(String),
}
