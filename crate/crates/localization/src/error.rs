use nahilb_algebra::AlgebraError;
use nahilb_lattice::LatticeError;
use nahilb_weights::WeightsError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("Chern class index {k} out of range 0..={max}")]
    IndexOutOfRange { k: usize, max: usize },
    #[error("class is not symmetric under the transposition {0}")]
    NotBisymmetric(String),
    #[error("class uses variable {0}, which is outside theta1..theta_q and eta1..eta_(d-1)")]
    ForeignVariable(String),
    #[error("virtual dimension differs between fixed points: {first} and {other}")]
    InconsistentVirtualDimension { first: i64, other: i64 },
    #[error("no fixed points contribute for these parameters")]
    NoFixedPoints,
    #[error("the reduction requires dims = (1, ..., 1)")]
    RequiresFullFlag,
}
