//! Exact arithmetic for equivariant localization computations.
//!
//! Everything is over arbitrary-precision rationals. The main types are
//! [`Poly`] (sparse multivariate polynomials in named variables), [`LinearForm`]
//! and [`FactoredRational`], a polynomial times a product of powers of linear
//! forms. Denominators in this domain are always products of linear forms, so
//! cancellation is done by trial division rather than polynomial gcd.

pub mod error;
pub mod factored;
pub mod json;
pub mod laurent;
pub mod linear;
pub mod poly;
pub mod sample;
pub mod sum;
pub mod var;

pub use error::AlgebraError;
pub use factored::FactoredRational;
pub use json::parse_rational;
pub use linear::{linear_form_of, LinearForm};
pub use poly::{Assignment, Monomial, Poly};
pub use sample::{sampled_equal, Sampler};
pub use sum::{add_pair, same_value, sum_factored};
pub use var::{Namespace, VariableId};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Convenience constructor for integer rationals.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d`.
///
/// # Panics
/// If `d == 0`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
