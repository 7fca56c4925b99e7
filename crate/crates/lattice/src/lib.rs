//! Order ideals of `Z_{≥0}^n`, nested chains of them, their enumerations and
//! the membership predicates used to select torus fixed points.

mod coset;
mod enumeration;
mod error;
mod nested;
mod partition;
mod point;

pub use coset::{all_cosets, flag_block, in_flag_fiber, Coset};
pub use enumeration::{all_enumerations, all_enumerations_with, canonical_enumeration, Enumeration};
pub use error::LatticeError;
pub use nested::{enumerate_nested, enumerate_nested_with, partial_sums, porteous, NestedPartition};
pub use partition::{enumerate_partitions, enumerate_partitions_with, Limits, Partition};
pub use point::LatticePoint;
