//! Command-line driver for the nested Hilbert scheme integrals: JSON job
//! specifications, the text syntax for tautological classes, configuration
//! and the acceptance checks.

pub mod acceptance;
pub mod class_spec;
pub mod config;
pub mod error;
pub mod job;

pub use class_spec::{parse_class_poly, parse_class_spec};
pub use config::{Config, MAX_POINTS_ENV};
pub use error::CliError;
pub use job::{run, ClassSpec, Command, Flags, JobSpec, Outcome};
