use nahilb_algebra::AlgebraError;
use nahilb_lattice::LatticeError;
use nahilb_localization::LocalizationError;
use nahilb_weights::WeightsError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error("denominator factor {0} does not involve any z variable")]
    ZFreeFactor(String),
    #[error("variable {0} is outside z1..z_{1}")]
    ZOutOfRange(String, usize),
    #[error("z variables survived the residue: {0}")]
    NonElimination(String),
    #[error("the fiber sum does not clear its denominator: {0}")]
    NotPolynomial(String),
}
