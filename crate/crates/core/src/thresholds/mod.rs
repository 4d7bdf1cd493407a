//! Divisor-pair prefix sums and the thresholds `d^(1)`, `d^(2)`.

mod prefix;
mod table;

pub use prefix::{d_threshold, pair_prefix_sums, Convention, PairPrefixTable, PairRow, ThresholdResult};
pub use table::{
    d_table, exact_a_target, gamma_log, log_of_factored, nloglogn_target, parse_factor, DRow, DTable, TargetMode,
    EXACT_TARGET_MAX_N,
};
