use rug::ops::Pow;
use rug::Integer;

use super::primes::{is_prime_u64, small_primes, SIEVE_LIMIT};
use super::FactoredInteger;
use crate::error::{Error, Result};

/// Exact factorization by trial division over the primes below `10^7`.
///
/// Succeeds whenever the cofactor left after trial division is 1 or a
/// 64-bit prime (in particular for every `n < 10^14`); otherwise reports
/// [`Error::FactorizationTooHard`].
pub fn factorize(n: &Integer) -> Result<FactoredInteger> {
    if *n < 1 {
        return Err(Error::Domain(format!("cannot factor {n}")));
    }
    let mut rest = n.clone();
    let mut out = FactoredInteger::one();
    for &p in small_primes() {
        if rest == 1 {
            return Ok(out);
        }
        let p = u64::from(p);
        if p * p > rest {
            break;
        }
        let mut e = 0;
        while rest.is_divisible_u(p as u32) {
            rest.div_exact_u_mut(p as u32);
            e += 1;
        }
        out.multiply_prime_power(p, e);
    }
    if rest == 1 {
        return Ok(out);
    }
    let sieve_sq = u64::from(SIEVE_LIMIT) * u64::from(SIEVE_LIMIT);
    match rest.to_u64() {
        // no prime factor below 10^7, so below 10^14 the cofactor is prime
        Some(r) if r < sieve_sq || is_prime_u64(r) => {
            out.multiply_prime_power(r, 1);
            Ok(out)
        }
        _ => Err(Error::FactorizationTooHard(format!(
            "{n} leaves cofactor {rest} with no prime factor below {SIEVE_LIMIT}"
        ))),
    }
}

pub fn factorize_u64(n: u64) -> Result<FactoredInteger> {
    factorize(&Integer::from(n))
}

/// `sigma(n) = prod (p^(a+1) - 1) / (p - 1)`.
pub fn sigma(n: &FactoredInteger) -> Integer {
    let mut acc = Integer::from(1);
    for (p, e) in n.factors() {
        acc *= prime_power_sigma(p, e);
    }
    acc
}

/// `sigma(p^a) = 1 + p + ... + p^a`.
pub fn prime_power_sigma(p: u64, a: u32) -> Integer {
    let p = Integer::from(p);
    (p.clone().pow(a + 1) - 1u32) / (p - 1u32)
}

/// All divisors of `n` in increasing order.
pub fn divisors(n: &FactoredInteger) -> Vec<Integer> {
    let mut out = vec![Integer::from(1)];
    for (p, e) in n.factors() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        let mut pk = Integer::from(1);
        for _ in 0..=e {
            next.extend(out.iter().map(|d| Integer::from(d * &pk)));
            pk *= p;
        }
        out = next;
    }
    out.sort_unstable();
    out
}

/// The divisors `d` of `n` with `d < sqrt(n)`, ascending.
///
/// Perfect squares (including 1) are rejected.
pub fn divisors_below_sqrt(n: &FactoredInteger) -> Result<Vec<Integer>> {
    if n.is_perfect_square() {
        return Err(Error::Domain(format!("{n} is a perfect square")));
    }
    let value = n.value();
    let mut out: Vec<Integer> = divisors(n)
        .into_iter()
        .filter(|d| Integer::from(d * d) < value)
        .collect();
    out.sort_unstable();
    Ok(out)
}
