//! Stirling numbers, complete Bell polynomials and integer partitions.

mod bell;
mod partition;
mod stirling;

pub use bell::complete_bell;
pub use partition::{partitions_of, LengthConstraint, Partition, MAX_WEIGHT};
pub use stirling::{stirling_first_unsigned, stirling_second, StirlingCache, FIRST_KIND_MAX, SECOND_KIND_MAX};
