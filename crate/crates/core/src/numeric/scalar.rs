//! Arithmetic modes.
//!
//! Table-building code is generic over a [`Mode`]: [`Exact`] computes over
//! rationals (values that involve logarithms become [`LogCombination`]s),
//! while a [`Precision`] computes over [`HpReal`] with logarithms evaluated.

use std::fmt;

use rug::{Integer, Rational};

use super::{HpReal, LogCombination, Precision};

/// Field operations needed by the symmetric-function and moment code.
pub trait Scalar: Clone + fmt::Debug + Send + Sync {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_int(&self, k: i64) -> Self;
    fn div_int(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Approximate magnitude, used for pivot selection and truncation.
    fn magnitude(&self) -> f64;
    fn to_hp(&self, precision: Precision) -> HpReal;

    fn pow_u(&self, exponent: u32) -> Self {
        assert!(exponent > 0);
        let mut result = self.clone();
        for _ in 1..exponent {
            result = result.mul(self);
        }
        result
    }
}

/// Values that are linear combinations of logarithms with scalar weights.
pub trait Linear<S: Scalar>: Clone + fmt::Debug + Send + Sync {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn scale(&self, factor: &S) -> Self;
    fn vanishes(&self) -> bool;
    fn evaluate(&self, precision: Precision) -> HpReal;
}

/// Selects the number system for generic computations.
pub trait Mode: Copy + fmt::Debug + Send + Sync {
    type Value: Scalar;
    type Log: Linear<Self::Value>;

    /// Largest table / distribution size supported in this mode.
    const MAX_N: usize;
    const NAME: &'static str;

    fn int(&self, value: i64) -> Self::Value;
    fn integer(&self, value: &Integer) -> Self::Value;
    fn rational(&self, value: &Rational) -> Self::Value;
    fn log_int(&self, k: u64) -> Self::Log;
    fn log_zero(&self) -> Self::Log;

    fn zero(&self) -> Self::Value {
        self.int(0)
    }

    fn one(&self) -> Self::Value {
        self.int(1)
    }

    fn ratio(&self, num: i64, den: i64) -> Self::Value {
        self.rational(&Rational::from((num, den)))
    }

    /// First index `m` past which `h^m / m!` is negligible, or `None` when
    /// nothing may be dropped.
    fn truncation_index(&self, h: f64) -> Option<usize>;

    /// `p_k(n) = sum_{i=1}^n i^(-k)`.
    fn power_sum(&self, n: u64, k: u32) -> crate::Result<Self::Value>;
}

/// Exact rational arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Exact;

impl Scalar for Rational {
    fn add(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational::from(self - other)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn div(&self, other: &Self) -> Self {
        Rational::from(self / other)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn mul_int(&self, k: i64) -> Self {
        Rational::from(self * Integer::from(k))
    }
    fn div_int(&self, k: i64) -> Self {
        Rational::from(self / Integer::from(k))
    }
    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn to_hp(&self, precision: Precision) -> HpReal {
        HpReal::from_rational(self, precision)
    }
}

impl Linear<Rational> for Rational {
    fn plus(&self, other: &Self) -> Self {
        Rational::from(self + other)
    }
    fn minus(&self, other: &Self) -> Self {
        Rational::from(self - other)
    }
    fn scale(&self, factor: &Rational) -> Self {
        Rational::from(self * factor)
    }
    fn vanishes(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }
    fn evaluate(&self, precision: Precision) -> HpReal {
        HpReal::from_rational(self, precision)
    }
}

impl Mode for Exact {
    type Value = Rational;
    type Log = LogCombination;

    const MAX_N: usize = 200;
    const NAME: &'static str = "exact";

    fn int(&self, value: i64) -> Rational {
        Rational::from(value)
    }
    fn integer(&self, value: &Integer) -> Rational {
        Rational::from(value)
    }
    fn rational(&self, value: &Rational) -> Rational {
        value.clone()
    }
    fn log_int(&self, k: u64) -> LogCombination {
        LogCombination::log_of(k)
    }
    fn log_zero(&self) -> LogCombination {
        LogCombination::zero()
    }
    fn truncation_index(&self, _h: f64) -> Option<usize> {
        None
    }
    fn power_sum(&self, n: u64, k: u32) -> crate::Result<Rational> {
        super::generalized_harmonic(n, k)
    }
}

impl Scalar for HpReal {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_int(&self, k: i64) -> Self {
        self.mul_i64(k)
    }
    fn div_int(&self, k: i64) -> Self {
        self.div_i64(k)
    }
    fn is_zero(&self) -> bool {
        HpReal::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn to_hp(&self, precision: Precision) -> HpReal {
        self.with_precision(precision)
    }
}

impl Linear<HpReal> for HpReal {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, factor: &HpReal) -> Self {
        self * factor
    }
    fn vanishes(&self) -> bool {
        HpReal::is_zero(self)
    }
    fn evaluate(&self, precision: Precision) -> HpReal {
        self.with_precision(precision)
    }
}

impl Mode for Precision {
    type Value = HpReal;
    type Log = HpReal;

    const MAX_N: usize = 10_000;
    const NAME: &'static str = "hp";

    fn int(&self, value: i64) -> HpReal {
        HpReal::from_i64(value, *self)
    }
    fn integer(&self, value: &Integer) -> HpReal {
        HpReal::from_integer(value, *self)
    }
    fn rational(&self, value: &Rational) -> HpReal {
        HpReal::from_rational(value, *self)
    }
    fn log_int(&self, k: u64) -> HpReal {
        assert!(k >= 1, "log of zero");
        HpReal::from_u64(k, *self).ln()
    }
    fn log_zero(&self) -> HpReal {
        HpReal::zero(*self)
    }

    /// Drops terms below `10^(-2P)`.
    fn truncation_index(&self, h: f64) -> Option<usize> {
        let threshold = -2.0 * f64::from(self.decimal_digits()) * std::f64::consts::LN_10;
        let ln_h = h.max(1.0).ln();
        let mut log_term = 0.0;
        let mut m = 0usize;
        loop {
            m += 1;
            log_term += ln_h - (m as f64).ln();
            if (m as f64) > h && log_term < threshold {
                return Some(m);
            }
        }
    }

    fn power_sum(&self, n: u64, k: u32) -> crate::Result<HpReal> {
        crate::error::check_range("n", n, 1, Self::MAX_N as u64)?;
        crate::error::check_range("k", k, 1, 64)?;
        let work = self.with_extra(10);
        let mut acc = HpReal::zero(work);
        // smallest terms first
        for i in (1..=n).rev() {
            acc = acc + HpReal::from_u64(i, work).powi(-(k as i32));
        }
        Ok(acc.with_precision(*self))
    }
}
