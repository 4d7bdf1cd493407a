use rug::ops::Pow;
use rug::{Integer, Rational};

use super::{ErrorBounded, HpReal, Precision};
use crate::error::{check_range, Result};

/// Largest `n` summed term by term; above it the Euler–Maclaurin form is used.
pub const DIRECT_SUM_LIMIT: u64 = 1_000_000;

/// `H_n = 1 + 1/2 + ... + 1/n` as an exact fraction.
pub fn harmonic_exact(n: u64) -> Result<Rational> {
    check_range("n", n, 1, DIRECT_SUM_LIMIT)?;
    Ok(power_sum_range(1, n + 1, 1))
}

/// `sum_{i=1}^n i^(-order)` exactly.
pub fn generalized_harmonic(n: u64, order: u32) -> Result<Rational> {
    check_range("n", n, 1, 10_000)?;
    check_range("order", order, 1, 12)?;
    Ok(power_sum_range(1, n + 1, order))
}

// Binary splitting over [lo, hi); partial sums stay reduced so the
// denominators track lcm(lo..hi) rather than the full product.
fn power_sum_range(lo: u64, hi: u64, order: u32) -> Rational {
    if hi - lo <= 16 {
        let mut acc = Rational::new();
        for i in lo..hi {
            let den = Integer::from(i).pow(order);
            acc += Rational::from((Integer::from(1), den));
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    power_sum_range(lo, mid, order) + power_sum_range(mid, hi, order)
}

/// `H_n` as a high-precision value with a rigorous error bound.
///
/// Direct summation for `n <= 10^6`, otherwise
/// `log n + gamma + 1/(2n) - 1/(12n^2) + 1/(120n^4)` whose remainder is at
/// most `1/(252 n^6)`.
pub fn harmonic_hp(n: &Integer, precision: Precision) -> Result<ErrorBounded> {
    if *n < 1 {
        return Err(crate::Error::Domain(format!("harmonic number of n = {n} < 1")));
    }
    if *n <= DIRECT_SUM_LIMIT {
        let n = n.to_u64().expect("bounded above");
        return Ok(harmonic_direct(n, precision));
    }
    let work = precision.with_extra(10);
    let nf = HpReal::from_integer(n, work);
    let inv = nf.recip();
    let inv2 = &inv * &inv;
    let inv4 = &inv2 * &inv2;
    let value = nf.ln() + HpReal::euler_gamma(work) + inv.div_i64(2) - inv2.div_i64(12) + inv4.div_i64(120);
    let remainder = (&inv4 * &inv2).div_i64(252);
    // A handful of roundings, each bounded by one ulp of a value below |H_n|.
    let rounding = value.ulp_bound().mul_i64(16);
    let value = value.with_precision(precision);
    let rounding = rounding + value.ulp_bound();
    Ok(ErrorBounded::new(value, remainder + rounding))
}

fn harmonic_direct(n: u64, precision: Precision) -> ErrorBounded {
    let work = precision.with_extra(8);
    let mut acc = HpReal::zero(work);
    for i in 1..=n {
        acc = acc + HpReal::one(work).div_i64(i as i64);
    }
    // Each reciprocal and each addition rounds once, by at most ulp(H_n).
    let rounding = acc.ulp_bound().mul_i64(2 * n as i64 + 2);
    let value = acc.with_precision(precision);
    let rounding = rounding + value.ulp_bound();
    ErrorBounded::new(value, rounding)
}

/// Successive harmonic numbers `H_1, H_2, ...` with accumulated error bounds.
///
/// Cheaper than repeated calls to [`harmonic_hp`] when sweeping a range.
#[derive(Clone, Debug)]
pub struct HarmonicSweep {
    next: u64,
    work: Precision,
    target: Precision,
    acc: HpReal,
}

impl HarmonicSweep {
    pub fn new(precision: Precision) -> Self {
        let work = precision.with_extra(8);
        HarmonicSweep {
            next: 1,
            work,
            target: precision,
            acc: HpReal::zero(work),
        }
    }
}

impl Iterator for HarmonicSweep {
    type Item = (u64, ErrorBounded);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next;
        self.acc = &self.acc + HpReal::one(self.work).div_i64(n as i64);
        self.next += 1;
        let rounding = self.acc.ulp_bound().mul_i64(2 * n as i64 + 2);
        let value = self.acc.with_precision(self.target);
        let rounding = rounding + value.ulp_bound();
        Some((n, ErrorBounded::new(value, rounding)))
    }
}

/// The Euler–Mascheroni constant.
pub fn euler_gamma(precision: Precision) -> HpReal {
    HpReal::euler_gamma(precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Tolerance;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn small_harmonic_numbers() {
        assert_eq!(harmonic_exact(1).unwrap(), q(1, 1));
        assert_eq!(harmonic_exact(3).unwrap(), q(11, 6));
        assert_eq!(harmonic_exact(4).unwrap(), q(25, 12));
        // binary splitting branch against a plain loop
        let mut plain = Rational::new();
        for i in 1..=100 {
            plain += q(1, i);
        }
        assert_eq!(harmonic_exact(100).unwrap(), plain);
    }

    #[test]
    fn harmonic_range_errors() {
        assert!(harmonic_exact(0).is_err());
        assert!(harmonic_exact(DIRECT_SUM_LIMIT + 1).is_err());
        assert!(generalized_harmonic(10, 13).is_err());
        assert!(generalized_harmonic(10_001, 2).is_err());
    }

    #[test]
    fn generalized_harmonic_values() {
        assert_eq!(generalized_harmonic(3, 2).unwrap(), q(49, 36));
        assert_eq!(generalized_harmonic(1, 7).unwrap(), q(1, 1));
        assert_eq!(generalized_harmonic(57, 1).unwrap(), harmonic_exact(57).unwrap());
    }

    #[test]
    fn consecutive_differences_are_reciprocals() {
        let mut prev = harmonic_exact(1).unwrap();
        for n in 2..=1000u64 {
            let cur = &prev + q(1, n as i64);
            assert_eq!(Rational::from(&cur - &prev), q(1, n as i64));
            prev = cur;
        }
        assert_eq!(prev, harmonic_exact(1000).unwrap());
    }

    #[test]
    fn hp_small_values() {
        let p = Precision::digits(30);
        let h4 = harmonic_hp(&Integer::from(4), p).unwrap();
        let exact = HpReal::from_rational(&q(25, 12), p);
        assert!(h4.value().approx_eq(&exact, &Tolerance::absolute_pow10(-29, p)));
        let h1 = harmonic_hp(&Integer::from(1), p).unwrap();
        assert!(h1
            .value()
            .approx_eq(&HpReal::one(p), &Tolerance::absolute_pow10(-29, p)));
        assert!(harmonic_hp(&Integer::from(0), p).is_err());
    }

    #[test]
    fn hp_agrees_with_exact_within_bound() {
        let p = Precision::digits(40);
        for n in [10u64, 1000] {
            let exact = HpReal::from_rational(&harmonic_exact(n).unwrap(), p.with_extra(20));
            let hp = harmonic_hp(&Integer::from(n), p).unwrap();
            let diff = (&exact - hp.value()).abs();
            assert!(diff.as_float() <= hp.abs_error().as_float(), "n = {n}");
        }
    }

    #[test]
    fn euler_maclaurin_branch_matches_direct_sum_at_cutoff() {
        // Evaluate the asymptotic form at n = 10^6 directly and compare with
        // the summed value; both paths apply there.
        let p = Precision::digits(40);
        let n = Integer::from(DIRECT_SUM_LIMIT);
        let direct = harmonic_hp(&n, p).unwrap();
        let work = p.with_extra(10);
        let nf = HpReal::from_integer(&n, work);
        let inv = nf.recip();
        let asym =
            nf.ln() + HpReal::euler_gamma(work) + inv.div_i64(2) - (&inv * &inv).div_i64(12) + inv.powi(4).div_i64(120);
        // remainder 1/(252 n^6) ~ 4e-39
        assert!(direct.value().approx_eq(&asym, &Tolerance::absolute_pow10(-37, p)));

        let big = harmonic_hp(&Integer::from(1_000_000_000u64), Precision::digits(30)).unwrap();
        assert!(big.abs_error().as_float() < &1e-12);
        let ln = HpReal::from_u64(1_000_000_000, Precision::digits(30)).ln();
        let expected = ln + euler_gamma(Precision::digits(30)) + HpReal::from_f64(5e-10, Precision::digits(30));
        assert!(big
            .value()
            .approx_eq(&expected, &Tolerance::absolute_pow10(-18, Precision::digits(30))));
    }

    #[test]
    fn gamma_matches_harmonic_difference() {
        let p = Precision::digits(40);
        let g = euler_gamma(Precision::digits(10));
        assert_eq!(g.to_fixed(10), "0.5772156649");
        assert_eq!(euler_gamma(Precision::digits(3)).to_fixed(3), "0.577");
        let n = Integer::from(DIRECT_SUM_LIMIT);
        let h = harmonic_hp(&n, p).unwrap();
        let diff = h.value() - HpReal::from_integer(&n, p).ln();
        // H_n - log n - gamma = 1/(2n) + O(n^-2)
        let g = euler_gamma(p);
        assert!(diff.approx_eq(&(&g + HpReal::from_f64(5e-7, p)), &Tolerance::absolute_pow10(-12, p)));
    }

    #[test]
    fn sweep_matches_pointwise() {
        let p = Precision::digits(40);
        let sweep: Vec<_> = HarmonicSweep::new(p).take(50).collect();
        for (n, h) in sweep {
            let exact = HpReal::from_rational(&harmonic_exact(n).unwrap(), p.with_extra(10));
            assert!((&exact - h.value()).abs().as_float() <= h.abs_error().as_float());
        }
    }
}
