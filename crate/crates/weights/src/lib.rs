//! Torus weights of the tangent, obstruction and flag classes at the monomial
//! fixed points of nested Hilbert schemes, and their Euler classes.

mod classes;
mod error;
mod euler;
mod multiset;

pub use classes::{
    epunct_class, fiber_tangent_class, fiber_tangent_class_direct, fiber_tangent_levels, fixed_ranks,
    obstruction_class, obstruction_class_direct, obstruction_levels, tangent_class, tangent_class_direct,
    tangent_class_punctual, tangent_levels,
};
pub use error::WeightsError;
pub use euler::{euler_class, flag_tangent_euler};
pub use multiset::SignedWeightMultiset;
