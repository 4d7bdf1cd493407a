//! Factorization, divisor sums and abundant-number generation.

mod abundant;
mod arith;
mod factored;
mod primes;

pub use abundant::{
    ca_chain, ca_chain_csv, highly_abundant_scan, sigma_table, superabundant_scan, CaChain, ChainTie, MAX_CHAIN,
    MAX_SCAN_BOUND, PRIME_POOL,
};
pub use arith::{divisors, divisors_below_sqrt, factorize, factorize_u64, prime_power_sigma, sigma};
pub use factored::FactoredInteger;
pub use primes::{first_primes, is_prime_u64, primes_below, SIEVE_LIMIT};
