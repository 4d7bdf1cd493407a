use std::sync::{OnceLock, RwLock};

use rug::Integer;

use crate::error::{check_range, Result};

/// Largest `n` for which [`stirling_first_unsigned`] is served.
pub const FIRST_KIND_MAX: usize = 300;
/// Largest `m` for which [`stirling_second`] is served.
pub const SECOND_KIND_MAX: usize = 30;

/// Lazily grown triangular tables of Stirling numbers.
///
/// Rows are appended under a write lock the first time they are requested;
/// later reads only take the read lock.
#[derive(Debug, Default)]
pub struct StirlingCache {
    first: RwLock<Vec<Vec<Integer>>>,
    second: RwLock<Vec<Vec<Integer>>>,
}

impl StirlingCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shared process-wide cache.
    pub fn global() -> &'static StirlingCache {
        static CACHE: OnceLock<StirlingCache> = OnceLock::new();
        CACHE.get_or_init(StirlingCache::new)
    }

    /// Signless first kind `c(n, k)`: permutations of `n` with `k` cycles.
    pub fn first_unsigned(&self, n: usize, k: usize) -> Integer {
        if k > n {
            return Integer::new();
        }
        {
            let rows = self.first.read().expect("stirling cache poisoned");
            if n < rows.len() {
                return rows[n][k].clone();
            }
        }
        let mut rows = self.first.write().expect("stirling cache poisoned");
        if rows.is_empty() {
            rows.push(vec![Integer::from(1)]);
        }
        while rows.len() <= n {
            let i = rows.len();
            let prev = &rows[i - 1];
            let mut row = vec![Integer::new(); i + 1];
            for k in 1..=i {
                // c(i, k) = c(i-1, k-1) + (i-1) c(i-1, k)
                let mut v = prev[k - 1].clone();
                if k < i {
                    v += Integer::from(&prev[k] * (i as u64 - 1));
                }
                row[k] = v;
            }
            rows.push(row);
        }
        rows[n][k].clone()
    }

    /// Second kind `S(m, l)`: set partitions of `m` elements into `l` blocks.
    pub fn second(&self, m: usize, l: usize) -> Integer {
        if l > m {
            return Integer::new();
        }
        {
            let rows = self.second.read().expect("stirling cache poisoned");
            if m < rows.len() {
                return rows[m][l].clone();
            }
        }
        let mut rows = self.second.write().expect("stirling cache poisoned");
        if rows.is_empty() {
            rows.push(vec![Integer::from(1)]);
        }
        while rows.len() <= m {
            let i = rows.len();
            let prev = &rows[i - 1];
            let mut row = vec![Integer::new(); i + 1];
            for l in 1..=i {
                // S(i, l) = S(i-1, l-1) + l S(i-1, l)
                let mut v = prev[l - 1].clone();
                if l < i {
                    v += Integer::from(&prev[l] * l as u64);
                }
                row[l] = v;
            }
            rows.push(row);
        }
        rows[m][l].clone()
    }
}

/// `c(n, k)` for `n <= 300`.
pub fn stirling_first_unsigned(n: usize, k: usize) -> Result<Integer> {
    check_range("n", n, 0, FIRST_KIND_MAX)?;
    Ok(StirlingCache::global().first_unsigned(n, k))
}

/// `S(m, l)` for `m <= 30`.
pub fn stirling_second(m: usize, l: usize) -> Result<Integer> {
    check_range("m", m, 0, SECOND_KIND_MAX)?;
    Ok(StirlingCache::global().second(m, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cycle counts of all permutations of `n` (Heap's algorithm).
    fn cycle_histogram(n: usize) -> Vec<u64> {
        fn cycles(perm: &[usize]) -> usize {
            let mut seen = vec![false; perm.len()];
            let mut count = 0;
            for s in 0..perm.len() {
                if !seen[s] {
                    count += 1;
                    let mut i = s;
                    while !seen[i] {
                        seen[i] = true;
                        i = perm[i];
                    }
                }
            }
            count
        }
        let mut hist = vec![0u64; n + 1];
        let mut perm: Vec<usize> = (0..n).collect();
        let mut c = vec![0usize; n];
        hist[cycles(&perm)] += 1;
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                hist[cycles(&perm)] += 1;
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        hist
    }

    /// Block counts of all set partitions of `m` (restricted growth strings).
    fn block_histogram(m: usize) -> Vec<u64> {
        fn rec(pos: usize, m: usize, max_block: usize, hist: &mut Vec<u64>) {
            if pos == m {
                hist[max_block] += 1;
                return;
            }
            for b in 0..=max_block {
                let next = if b == max_block { max_block + 1 } else { max_block };
                rec(pos + 1, m, next, hist);
            }
        }
        let mut hist = vec![0u64; m + 1];
        rec(0, m, 0, &mut hist);
        hist
    }

    #[test]
    fn first_kind_matches_permutation_enumeration() {
        assert_eq!(stirling_first_unsigned(3, 2).unwrap(), 3);
        assert_eq!(stirling_first_unsigned(4, 2).unwrap(), 11);
        for n in 1..=7 {
            let hist = cycle_histogram(n);
            for (k, &count) in hist.iter().enumerate() {
                assert_eq!(stirling_first_unsigned(n, k).unwrap(), count, "c({n},{k})");
            }
        }
    }

    #[test]
    fn second_kind_matches_set_partition_enumeration() {
        assert_eq!(stirling_second(4, 2).unwrap(), 7);
        for m in 1..=8 {
            let hist = block_histogram(m);
            for (l, &count) in hist.iter().enumerate() {
                assert_eq!(stirling_second(m, l).unwrap(), count, "S({m},{l})");
            }
        }
    }

    #[test]
    fn boundary_values() {
        for n in 0..=40 {
            assert_eq!(stirling_first_unsigned(n, n).unwrap(), 1);
            assert_eq!(stirling_first_unsigned(n, n + 1).unwrap(), 0);
            if n >= 1 {
                assert_eq!(stirling_first_unsigned(n, 0).unwrap(), 0);
                assert_eq!(stirling_second(n.min(30), 1).unwrap(), 1);
            }
        }
        for m in 0..=30 {
            assert_eq!(stirling_second(m, m).unwrap(), 1);
        }
        assert!(stirling_first_unsigned(301, 1).is_err());
        assert!(stirling_second(31, 1).is_err());
    }

    #[test]
    fn first_kind_rows_sum_to_factorial() {
        for n in 0..=20usize {
            let sum: Integer = (0..=n).map(|k| stirling_first_unsigned(n, k).unwrap()).sum();
            assert_eq!(sum, Integer::from(Integer::factorial(n as u32)));
        }
    }

    #[test]
    fn large_row_is_exact() {
        // c(300, 1) = 299!
        assert_eq!(
            stirling_first_unsigned(300, 1).unwrap(),
            Integer::from(Integer::factorial(299))
        );
    }
}
