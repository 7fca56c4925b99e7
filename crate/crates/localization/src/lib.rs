//! Equivariant virtual localization on nested Hilbert schemes of points in
//! affine space: tautological classes, fixed-point contributions and their sums.

mod engine;
mod error;
mod taut;

pub use engine::{
    contribution, cy_restrict, fixed_point_classes, integrate_localization, integrate_localization_with,
    reduce_full_flag, reduce_full_flag_with, virtual_dimension, IntegralResult, Method, Space,
};
pub use error::LocalizationError;
pub use taut::{chern_taut, eta, restrict_class, theta, TautClass};
