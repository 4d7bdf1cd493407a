pub mod combinatorics;
pub mod cyclestats;
pub mod divisors;
pub mod error;
pub mod exec;
pub mod harness;
pub mod limits;
pub mod numeric;
pub mod series;
pub mod symfunc;
pub mod thresholds;

pub use error::{Error, Result};
