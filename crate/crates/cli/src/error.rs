use nahilb_algebra::AlgebraError;
use nahilb_lattice::LatticeError;
use nahilb_localization::LocalizationError;
use nahilb_residue::ResidueError;
use nahilb_weights::WeightsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid job: {0}")]
    Job(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
