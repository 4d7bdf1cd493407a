use std::cmp::Ordering;

use rug::Rational;

use super::arith::{prime_power_sigma, sigma};
use super::primes::first_primes;
use super::FactoredInteger;
use crate::error::{check_range, Result};
use crate::exec::{self, Strategy};
use crate::numeric::{HpReal, Precision, Tolerance};

/// Longest chain [`ca_chain`] will build.
pub const MAX_CHAIN: usize = 60;
/// Primes available to the greedy chain.
pub const PRIME_POOL: usize = 100;
/// Largest bound accepted by the abundance scans.
pub const MAX_SCAN_BOUND: u64 = 10_000_000;

const RATIO_DIGITS: u32 = 60;

/// A step of the greedy chain where two primes had the same benefit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTie {
    pub step: usize,
    pub chosen: u64,
    pub rejected: u64,
}

/// Colossally abundant numbers `2, 6, 12, 60, 120, ...` together with any
/// benefit ties met on the way.
#[derive(Clone, Debug)]
pub struct CaChain {
    pub entries: Vec<FactoredInteger>,
    pub ties: Vec<ChainTie>,
}

// log(sigma(p^(a+1)) / sigma(p^a)) / log p
fn benefit(p: u64, a: u32, precision: Precision) -> HpReal {
    let ratio = Rational::from((prime_power_sigma(p, a + 1), prime_power_sigma(p, a)));
    let num = HpReal::from_rational(&ratio, precision).ln();
    num / HpReal::from_u64(p, precision).ln()
}

/// The first `count` colossally abundant numbers.
///
/// Starting from 1, each step multiplies by the prime whose next power gives
/// the largest `log(sigma(p^(a+1))/sigma(p^a)) / log p`. Ties go to the
/// smaller prime and are recorded.
pub fn ca_chain(count: usize) -> Result<CaChain> {
    check_range("count", count, 1, MAX_CHAIN)?;
    let precision = Precision::digits(RATIO_DIGITS);
    let tie = Tolerance::relative_pow10(10 - RATIO_DIGITS as i32, precision);
    let pool = first_primes(PRIME_POOL);
    let mut current = FactoredInteger::one();
    let mut entries = Vec::with_capacity(count);
    let mut ties = Vec::new();
    // benefit of raising each prime once more; only the raised prime changes
    let mut gains: Vec<HpReal> = pool.iter().map(|&p| benefit(p, 0, precision)).collect();
    for step in 0..count {
        let mut best = 0usize;
        for i in 1..pool.len() {
            if gains[i].cmp_within(&gains[best], &tie) == Ordering::Greater {
                best = i;
            }
        }
        for i in best + 1..pool.len() {
            if gains[i].approx_eq(&gains[best], &tie) {
                log::warn!(
                    "benefit tie at step {} between primes {} and {}; taking {}",
                    step + 1,
                    pool[best],
                    pool[i],
                    pool[best]
                );
                ties.push(ChainTie {
                    step: step + 1,
                    chosen: pool[best],
                    rejected: pool[i],
                });
            }
        }
        let p = pool[best];
        assert!(best + 1 < pool.len(), "prime pool exhausted");
        current.multiply_prime_power(p, 1);
        gains[best] = benefit(p, current.exponent(p), precision);
        entries.push(current.clone());
    }
    Ok(CaChain { entries, ties })
}

/// CSV with columns `n,factorization,sigma`.
pub fn ca_chain_csv(entries: &[FactoredInteger]) -> String {
    let mut out = String::from("n,factorization,sigma\n");
    for n in entries {
        out.push_str(&format!("{},{},{}\n", n.value(), n, sigma(n)));
    }
    out
}

/// `sigma(n)` for `1 <= n < bound` via a smallest-prime-factor sieve.
/// Index 0 holds 0.
pub fn sigma_table(bound: u64) -> Vec<u64> {
    let len = bound as usize;
    let mut spf = vec![0u32; len];
    let mut sig = vec![0u64; len];
    if len > 1 {
        sig[1] = 1;
    }
    for i in 2..len {
        if spf[i] == 0 {
            let mut j = i;
            while j < len {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        // strip the full power of the smallest prime
        let p = spf[i] as usize;
        let mut rest = i / p;
        let mut pk_sum = 1 + p as u64;
        let mut pk = p as u64;
        while rest % p == 0 {
            rest /= p;
            pk *= p as u64;
            pk_sum += pk;
        }
        sig[i] = sig[rest] * pk_sum;
    }
    sig
}

#[derive(Clone, Copy)]
enum Record {
    // sigma(n) / n
    Abundance,
    // sigma(n)
    Sum,
}

impl Record {
    // strict comparison of (sigma_a, a) against (sigma_b, b)
    fn beats(self, sa: u64, a: u64, sb: u64, b: u64) -> bool {
        match self {
            Record::Abundance => (sa as u128) * (b as u128) > (sb as u128) * (a as u128),
            Record::Sum => sa > sb,
        }
    }
}

const CHUNK: u64 = 1 << 16;

fn scan(bound: u64, kind: Record, strategy: Strategy) -> Result<Vec<u64>> {
    check_range("bound", bound, 1, MAX_SCAN_BOUND)?;
    let sig = sigma_table(bound + 1);
    let chunks = bound.div_ceil(CHUNK);
    // each chunk reports its own running records; a global record is
    // always a record of its chunk, so a sequential merge is exact
    let local: Vec<Vec<u64>> = exec::map_range(strategy, 0, chunks, |c| {
        let lo = 1 + c * CHUNK;
        let hi = (lo + CHUNK).min(bound + 1);
        let mut out: Vec<u64> = Vec::new();
        for n in lo..hi {
            let beats = match out.last() {
                None => true,
                Some(&m) => kind.beats(sig[n as usize], n, sig[m as usize], m),
            };
            if beats {
                out.push(n);
            }
        }
        out
    });
    let mut records: Vec<u64> = Vec::new();
    for n in local.into_iter().flatten() {
        let beats = match records.last() {
            None => true,
            Some(&m) => kind.beats(sig[n as usize], n, sig[m as usize], m),
        };
        if beats {
            records.push(n);
        }
    }
    Ok(records)
}

/// Integers `n <= bound` with `sigma(n)/n > sigma(m)/m` for every `m < n`.
pub fn superabundant_scan(bound: u64, strategy: Strategy) -> Result<Vec<u64>> {
    scan(bound, Record::Abundance, strategy)
}

/// Integers `n <= bound` with `sigma(n) > sigma(m)` for every `m < n`.
pub fn highly_abundant_scan(bound: u64, strategy: Strategy) -> Result<Vec<u64>> {
    scan(bound, Record::Sum, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sigma(n: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0).sum()
    }

    fn brute_records(bound: u64, abundance: bool) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        let mut best = (0u64, 1u64);
        for n in 1..=bound {
            let s = brute_sigma(n);
            let better = if abundance {
                (s as u128) * (best.1 as u128) > (best.0 as u128) * (n as u128)
            } else {
                s > best.0
            };
            if better {
                out.push(n);
                best = (s, n);
            }
        }
        out
    }

    #[test]
    fn chain_prefix() {
        let chain = ca_chain(8).unwrap();
        let values: Vec<u64> = chain.entries.iter().map(|n| n.value().to_u64().unwrap()).collect();
        assert_eq!(values, vec![2, 6, 12, 60, 120, 360, 2520, 5040]);
        assert_eq!(ca_chain(1).unwrap().entries[0].value(), 2);
        assert!(chain.ties.is_empty());
        assert!(ca_chain(0).is_err());
        assert!(ca_chain(61).is_err());
    }

    #[test]
    fn csv_export() {
        let chain = ca_chain(3).unwrap();
        assert_eq!(
            ca_chain_csv(&chain.entries),
            "n,factorization,sigma\n2,2,3\n6,2*3,12\n12,2^2*3,28\n"
        );
    }

    #[test]
    fn sigma_table_matches_enumeration() {
        let t = sigma_table(2000);
        for n in 1..2000u64 {
            assert_eq!(t[n as usize], brute_sigma(n), "{n}");
        }
    }

    #[test]
    fn scan_examples() {
        for strategy in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(superabundant_scan(13, strategy).unwrap(), vec![1, 2, 4, 6, 12]);
            assert_eq!(
                highly_abundant_scan(13, strategy).unwrap(),
                vec![1, 2, 3, 4, 6, 8, 10, 12]
            );
            assert_eq!(superabundant_scan(1, strategy).unwrap(), vec![1]);
            assert_eq!(highly_abundant_scan(1, strategy).unwrap(), vec![1]);
        }
        assert!(superabundant_scan(0, Strategy::Sequential).is_err());
    }

    #[test]
    fn scans_match_brute_force_across_chunks() {
        let bound = 3 * CHUNK + 17;
        for abundance in [true, false] {
            let brute = brute_records(5000, abundance);
            let fast = if abundance {
                superabundant_scan(bound, Strategy::Parallel).unwrap()
            } else {
                highly_abundant_scan(bound, Strategy::Parallel).unwrap()
            };
            let prefix: Vec<u64> = fast.iter().copied().filter(|&n| n <= 5000).collect();
            assert_eq!(prefix, brute);
            let seq = if abundance {
                superabundant_scan(bound, Strategy::Sequential).unwrap()
            } else {
                highly_abundant_scan(bound, Strategy::Sequential).unwrap()
            };
            assert_eq!(fast, seq);
        }
    }
}
