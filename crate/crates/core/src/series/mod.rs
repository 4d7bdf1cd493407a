//! Exponential integrals, the series `A(n)` under each coefficient family,
//! and the hook sums `A~_r(n)` by determinant, moment and brute-force routes.

mod expint;
mod family;
mod hooks;

pub use expint::{exp_integral_e1, exp_integral_ei};
pub use family::{
    a_lower_closed, a_lower_closed_at, a_series, a_series_at, harmonic_for_series, tail_bound, CoefficientFamily,
    SeriesValue,
};
pub use hooks::{
    a1, a1_by_moment, a_by_assembly, ar_direct, assembly_tail_bound, atilde_det, atilde_direct, atilde_moment,
    delta_determinant, delta_row, e_moment, r3, s_row, s_sum, AR_MAX_R, BRUTE_MAX_N, MAX_R,
};
