use thiserror::Error;

use crate::var::VariableId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("no value assigned to variable {0}")]
    MissingVariable(VariableId),
    #[error("a denominator factor vanishes at the given assignment")]
    DivisionByZero,
    #[error("expression is not homogeneous")]
    NotHomogeneous,
    #[error("a denominator factor vanishes identically under the substitution")]
    DegenerateRestriction,
    #[error("parse error: {0}")]
    Parse(String),
}
