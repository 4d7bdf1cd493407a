//! Exact and high-precision arithmetic kernel.
//!
//! Integers and rationals are GMP-backed (`rug::Integer`, `rug::Rational`);
//! [`HpReal`] wraps an MPFR float carrying its own precision.

mod bounded;
mod harmonic;
mod hp;
pub mod linalg;
mod logspan;
mod precision;
mod render;
mod scalar;

pub use bounded::{ErrorBounded, Tri};
pub use harmonic::{euler_gamma, generalized_harmonic, harmonic_exact, harmonic_hp, HarmonicSweep, DIRECT_SUM_LIMIT};
pub use hp::{HpReal, Tolerance};
pub use logspan::LogCombination;
pub use precision::Precision;
pub use render::{render_decimal, render_significant};
pub use scalar::{Exact, Linear, Mode, Scalar};

pub use rug::{Integer, Rational};
