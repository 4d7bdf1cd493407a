use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;

use super::scalar::{Linear, Scalar};
use super::{HpReal, Precision};

/// An exact element of the rational span of `{log k : k >= 2}`.
///
/// Stored on the prime basis: `log 12` is kept as `2 log 2 + log 3`. Logs of
/// distinct primes are linearly independent over the rationals, so two
/// combinations denote the same real number exactly when they compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogCombination {
    coeffs: BTreeMap<u64, Rational>,
}

impl LogCombination {
    pub fn zero() -> Self {
        LogCombination::default()
    }

    /// `log k` for `k >= 1`.
    pub fn log_of(k: u64) -> Self {
        assert!(k >= 1, "log of zero");
        let mut coeffs = BTreeMap::new();
        for (p, e) in small_factor(k) {
            coeffs.insert(p, Rational::from(e));
        }
        LogCombination { coeffs }
    }

    /// Coefficient of `log p` for a prime `p`.
    pub fn coefficient(&self, prime: u64) -> Rational {
        self.coeffs.get(&prime).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    fn insert_scaled(&mut self, other: &LogCombination, factor: &Rational) {
        for (p, c) in &other.coeffs {
            let entry = self.coeffs.entry(*p).or_default();
            *entry += Rational::from(c * factor);
            if entry.cmp0() == std::cmp::Ordering::Equal {
                self.coeffs.remove(p);
            }
        }
    }
}

fn small_factor(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= k {
        if k % p == 0 {
            let mut e = 0;
            while k % p == 0 {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

impl Linear<Rational> for LogCombination {
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.insert_scaled(other, &Rational::from(1));
        out
    }

    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.insert_scaled(other, &Rational::from(-1));
        out
    }

    fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return LogCombination::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(p, c)| (*p, Rational::from(c * factor)))
            .collect();
        LogCombination { coeffs }
    }

    fn vanishes(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn evaluate(&self, precision: Precision) -> HpReal {
        let work = precision.with_extra(10);
        let mut acc = HpReal::zero(work);
        for (p, c) in &self.coeffs {
            acc = acc + HpReal::from_u64(*p, work).ln() * HpReal::from_rational(c, work);
        }
        acc.with_precision(precision)
    }
}

impl fmt::Display for LogCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})·log {p}")?;
        }
        Ok(())
    }
}
