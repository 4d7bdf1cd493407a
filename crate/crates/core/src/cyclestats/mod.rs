//! The number of cycles of a uniform random permutation: exact law,
//! cumulants, central moments, truncated expansions and a sampler.

mod distribution;
mod moments;
mod sample;

pub(crate) use distribution::build as build_distribution;
pub use distribution::{cycle_distribution, CycleDistribution};
pub(crate) use moments::weighted_log;
pub use moments::{
    asymptotic_c_log_c, asymptotic_log_moment, central_moment, cumulant, exact_c_log_c, exact_expected_log,
    exact_log_moment, log_moment, moment_set, MomentSet, MAX_EXPANSION, MAX_ORDER,
};
pub use sample::{draw_cycle_count, sample_cycle_count, CycleSample, BLOCK_TRIALS, MAX_SAMPLE};
