use crate::error::{check_range, Result};
use crate::numeric::{Linear, Mode, Scalar};

/// Law of the number of cycles `C_n` of a uniform random permutation of `n`.
///
/// High-precision distributions drop the upper tail past the mode's
/// truncation index, where `P(C_n = k) <= H_n^(k-1) / (k-1)! < 10^(-2P)`.
#[derive(Clone, Debug)]
pub struct CycleDistribution<M: Mode> {
    n: u64,
    // probs[k] = P(C_n = k), k = 0..=kmax
    probs: Vec<M::Value>,
    truncated_at: Option<usize>,
    mode: M,
}

impl<M: Mode> CycleDistribution<M> {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mode(&self) -> &M {
        &self.mode
    }

    /// Largest `k` stored.
    pub fn kmax(&self) -> usize {
        self.probs.len() - 1
    }

    /// First `k` dropped by truncation, if any.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    /// `P(C_n = k)`; zero past the stored range.
    pub fn prob(&self, k: usize) -> M::Value {
        self.probs.get(k).cloned().unwrap_or_else(|| self.mode.zero())
    }

    /// `(k, P(C_n = k))` for `k = 1..=kmax`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &M::Value)> {
        self.probs.iter().enumerate().skip(1)
    }

    /// `E[f(C_n)]` for a scalar-valued `f`.
    pub fn expect(&self, f: impl Fn(usize) -> M::Value) -> M::Value {
        let mut acc = self.mode.zero();
        for (k, p) in self.iter() {
            if !p.is_zero() {
                acc = acc.add(&f(k).mul(p));
            }
        }
        acc
    }

    /// `E[w(C_n) log(C_n + shift)]` where `w` is an integer weight.
    pub fn expect_weighted_log(&self, shift: u64, weight: impl Fn(usize) -> i64) -> M::Log {
        let mut acc = self.mode.log_zero();
        for (k, p) in self.iter() {
            let w = weight(k);
            if w == 0 || p.is_zero() || k as u64 + shift <= 1 {
                continue;
            }
            let term = self.mode.log_int(k as u64 + shift).scale(&p.mul_int(w));
            acc = acc.plus(&term);
        }
        acc
    }

    /// Raw moment `E[C_n^m]`.
    pub fn raw_moment(&self, m: u32) -> M::Value {
        self.expect(|k| {
            if m == 0 {
                self.mode.one()
            } else {
                self.mode.int(k as i64).pow_u(m)
            }
        })
    }

    /// `E[(C_n - c)^m]` for a given centre `c`.
    pub fn moment_about(&self, centre: &M::Value, m: u32) -> M::Value {
        self.expect(|k| {
            let d = self.mode.int(k as i64).sub(centre);
            if m == 0 {
                self.mode.one()
            } else {
                d.pow_u(m)
            }
        })
    }
}

/// The distribution of `C_n` for `1 <= n <= MAX_N` of the mode.
pub fn cycle_distribution<M: Mode>(n: u64, mode: &M) -> Result<CycleDistribution<M>> {
    check_range("n", n, 1, M::MAX_N as u64)?;
    Ok(build(n, mode))
}

/// Same as [`cycle_distribution`] but allowing `n = MAX_N + 1`, which the
/// `C_{n+1}`-based expectations need at the top of the range.
pub(crate) fn build<M: Mode>(n: u64, mode: &M) -> CycleDistribution<M> {
    assert!(n >= 1);
    let h = (n as f64).ln() + 1.0;
    let truncated_at = mode.truncation_index(h).map(|t| t + 1).filter(|&t| t <= n as usize);
    let kmax = truncated_at.map_or(n as usize, |t| t - 1);
    let mut probs = vec![mode.zero(); kmax + 1];
    probs[1] = mode.one();
    // P_i(k) = (1 - 1/i) P_{i-1}(k) + (1/i) P_{i-1}(k-1)
    for i in 2..=n as usize {
        let top = i.min(kmax);
        let stay = mode.ratio(i as i64 - 1, i as i64);
        for k in (1..=top).rev() {
            let new_cycle = probs[k - 1].div_int(i as i64);
            probs[k] = probs[k].mul(&stay).add(&new_cycle);
        }
    }
    CycleDistribution {
        n,
        probs,
        truncated_at,
        mode: *mode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::stirling_first_unsigned;
    use crate::numeric::{harmonic_exact, Exact, HpReal, Precision, Tolerance};
    use rug::{Integer, Rational};

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn small_distributions() {
        let d = cycle_distribution(3, &Exact).unwrap();
        assert_eq!((d.prob(1), d.prob(2), d.prob(3)), (q(1, 3), q(1, 2), q(1, 6)));
        assert_eq!(cycle_distribution(1, &Exact).unwrap().prob(1), q(1, 1));
        assert_eq!(cycle_distribution(4, &Exact).unwrap().prob(2), q(11, 24));
        assert!(cycle_distribution(0, &Exact).is_err());
        assert!(cycle_distribution(201, &Exact).is_err());
    }

    #[test]
    fn stirling_law_and_mean() {
        for n in [1u64, 5, 17, 40, 200] {
            let d = cycle_distribution(n, &Exact).unwrap();
            let fact = Integer::from(Integer::factorial(n as u32));
            let mut total = Rational::new();
            for k in 1..=n as usize {
                let c = stirling_first_unsigned(n as usize, k).unwrap();
                assert_eq!(d.prob(k), Rational::from((c, fact.clone())));
                total += d.prob(k);
            }
            assert_eq!(total, 1);
            assert_eq!(d.expect(|k| q(k as i64, 1)), harmonic_exact(n).unwrap());
        }
    }

    #[test]
    fn hp_matches_exact_and_truncates_tail() {
        let p = Precision::digits(25);
        let exact = cycle_distribution(200, &Exact).unwrap();
        let hp = cycle_distribution(200, &p).unwrap();
        let cut = hp.truncated_at().unwrap();
        assert!(cut < 200);
        for k in 1..cut {
            let want = HpReal::from_rational(&exact.prob(k), p);
            assert!(
                hp.prob(k).approx_eq(&want, &Tolerance::relative_pow10(-22, p)),
                "k = {k}"
            );
        }
        let tail: Rational = (cut..=200).map(|k| exact.prob(k)).sum();
        assert!(tail.to_f64() < 1e-50);
    }

    #[test]
    fn moments_about_centre() {
        let d = cycle_distribution(3, &Exact).unwrap();
        let h = harmonic_exact(3).unwrap();
        assert_eq!(d.moment_about(&h, 1), 0);
        assert_eq!(d.moment_about(&h, 2), q(17, 36));
        assert_eq!(d.raw_moment(0), 1);
        assert_eq!(d.raw_moment(1), h);
    }
}
