use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::Integer;

use crate::error::{Error, Result};

/// A positive integer stored as its prime factorization.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    /// The integer 1.
    pub fn one() -> Self {
        FactoredInteger::default()
    }

    /// Builds from `(prime, exponent)` pairs. Primality is the caller's
    /// responsibility; zero exponents are dropped and repeated primes merge.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let mut out = FactoredInteger::one();
        for (p, e) in pairs {
            out.multiply_prime_power(p, e);
        }
        out
    }

    pub fn multiply_prime_power(&mut self, prime: u64, exponent: u32) {
        assert!(prime >= 2, "{prime} is not a prime");
        if exponent > 0 {
            *self.factors.entry(prime).or_insert(0) += exponent;
        }
    }

    pub fn times_prime(&self, prime: u64) -> Self {
        let mut out = self.clone();
        out.multiply_prime_power(prime, 1);
        out
    }

    pub fn exponent(&self, prime: u64) -> u32 {
        self.factors.get(&prime).copied().unwrap_or(0)
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(p, e)| (*p, *e))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> Integer {
        let mut acc = Integer::from(1);
        for (p, e) in self.factors() {
            acc *= Integer::from(p).pow(e);
        }
        acc
    }

    /// Number of divisors.
    pub fn divisor_count(&self) -> Integer {
        self.factors().map(|(_, e)| Integer::from(e + 1)).product()
    }

    pub fn is_perfect_square(&self) -> bool {
        self.factors().all(|(_, e)| e % 2 == 0)
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &FactoredInteger) -> bool {
        self.factors().all(|(p, e)| other.exponent(p) >= e)
    }
}

impl fmt::Display for FactoredInteger {
    /// `2^4*3^2*5*7`; the integer 1 renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FactoredInteger {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form. Bases are not checked for
    /// primality.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(FactoredInteger::one());
        }
        let mut out = FactoredInteger::one();
        for term in s.split('*') {
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => (b, e),
                None => (term, "1"),
            };
            let base: u64 = base
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime {base:?} in {s:?}")))?;
            let exp: u32 = exp
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {exp:?} in {s:?}")))?;
            if base < 2 || exp == 0 {
                return Err(Error::Parse(format!("bad factor {term:?} in {s:?}")));
            }
            out.multiply_prime_power(base, exp);
        }
        Ok(out)
    }
}
