//! Symmetric polynomials at `x_i = 1/i`: elementary, power-sum and monomial
//! values, the Newton and hook determinants, and brute-force oracles.

mod det;
mod elementary;
mod monomial;

pub use det::{hook_monomial_det, hook_row, m221_expansion, newton_p_det, newton_row, newton_rows};
pub use elementary::{elementary_table, harmonic_points, power_sum, ElementarySweep, ElementaryTable};
pub use monomial::{e_ij, exp_expansion_partial, monomial_bruteforce, BRUTE_MAX_VARS, BRUTE_MAX_WEIGHT};
