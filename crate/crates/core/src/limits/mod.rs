//! Zeta values at integers and the limiting hook proportions `rho_r`.

mod rho;
mod zeta;

pub use rho::{rho, rho_table, RhoRow, RhoTable, MAX_RHO_R};
pub use zeta::{bernoulli, zeta_int, zeta_int_bounded};
