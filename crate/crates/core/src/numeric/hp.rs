use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::Precision;
use crate::error::{Error, Result};

/// A high-precision real number backed by an MPFR float.
///
/// Equality and ordering are deliberately not implemented: every comparison
/// goes through a [`Tolerance`], or through [`HpReal::identical`] when bit
/// equality is what is wanted.
#[derive(Clone, Debug)]
pub struct HpReal(Float);

/// Admissible deviation between two values.
#[derive(Clone, Debug)]
pub enum Tolerance {
    Absolute(HpReal),
    /// Relative to the larger magnitude of the two operands.
    Relative(HpReal),
}

impl Tolerance {
    /// `10^exponent` absolute.
    pub fn absolute_pow10(exponent: i32, precision: Precision) -> Self {
        Tolerance::Absolute(HpReal::pow10(exponent, precision))
    }

    /// `10^exponent` relative.
    pub fn relative_pow10(exponent: i32, precision: Precision) -> Self {
        Tolerance::Relative(HpReal::pow10(exponent, precision))
    }

    pub fn admits(&self, a: &HpReal, b: &HpReal) -> bool {
        let diff = (a - b).abs();
        match self {
            Tolerance::Absolute(t) => diff.0 <= t.0,
            Tolerance::Relative(t) => {
                let scale = if a.0.cmp_abs(&b.0) == Some(Ordering::Greater) {
                    a.abs()
                } else {
                    b.abs()
                };
                diff.0 <= Float::with_val(diff.0.prec(), &t.0 * &scale.0)
            }
        }
    }
}

impl HpReal {
    pub fn from_float(value: Float) -> Self {
        HpReal(value)
    }

    pub fn zero(precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), 0))
    }

    pub fn one(precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), 1))
    }

    pub fn from_i64(value: i64, precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), value))
    }

    pub fn from_u64(value: u64, precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), value))
    }

    /// Nearest representable value; only meant for tolerances and grid points.
    pub fn from_f64(value: f64, precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), value))
    }

    pub fn from_integer(value: &Integer, precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), value))
    }

    pub fn from_rational(value: &Rational, precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), value))
    }

    /// Parses a decimal literal such as `"0.400095410701532"`.
    pub fn parse(text: &str, precision: Precision) -> Result<Self> {
        let parsed = Float::parse(text.trim()).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
        Ok(HpReal(Float::with_val(precision.bits(), parsed)))
    }

    pub fn pow10(exponent: i32, precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), 10).pow(exponent))
    }

    pub fn euler_gamma(precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), Constant::Euler))
    }

    pub fn pi(precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), Constant::Pi))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn bits(&self) -> u32 {
        self.0.prec()
    }

    /// Re-rounds to another precision.
    pub fn with_precision(&self, precision: Precision) -> Self {
        HpReal(Float::with_val(precision.bits(), &self.0))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    /// Bit-for-bit equality of value and precision.
    pub fn identical(&self, other: &HpReal) -> bool {
        self.0.prec() == other.0.prec() && (self.0 == other.0 || (self.0.is_nan() && other.0.is_nan()))
    }

    pub fn abs(&self) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), self.0.abs_ref()))
    }

    pub fn ln(&self) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), self.0.ln_ref()))
    }

    pub fn exp(&self) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), self.0.exp_ref()))
    }

    pub fn sqrt(&self) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), self.0.sqrt_ref()))
    }

    pub fn recip(&self) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), self.0.recip_ref()))
    }

    pub fn powi(&self, exponent: i32) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), (&self.0).pow(exponent)))
    }

    pub fn powf(&self, exponent: &HpReal) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), (&self.0).pow(&exponent.0)))
    }

    pub fn mul_i64(&self, k: i64) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), &self.0 * k))
    }

    pub fn div_i64(&self, k: i64) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), &self.0 / k))
    }

    pub fn max(self, other: HpReal) -> HpReal {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    /// One unit in the last place of this value's mantissa, times `|self|`
    /// scale; a bound on the rounding error of the operation that produced it.
    pub fn ulp_bound(&self) -> HpReal {
        let bits = self.0.prec();
        let scale = Float::with_val(32, 2).pow(1 - bits as i32);
        HpReal(Float::with_val(bits, self.0.abs_ref()) * scale)
    }

    /// Three-way comparison where differences within `tol` count as equal.
    pub fn cmp_within(&self, other: &HpReal, tol: &Tolerance) -> Ordering {
        if tol.admits(self, other) {
            Ordering::Equal
        } else if self.0 < other.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn approx_eq(&self, other: &HpReal, tol: &Tolerance) -> bool {
        tol.admits(self, other)
    }

    /// Strictly less, with at least `tol` of separation.
    pub fn lt_by(&self, other: &HpReal, tol: &Tolerance) -> bool {
        self.cmp_within(other, tol) == Ordering::Less
    }

    /// Round-to-nearest decimal rendering with a fixed number of decimals.
    pub fn to_fixed(&self, decimals: u32) -> String {
        let bits = self.0.prec() + 8;
        let scaled = Float::with_val(bits, &self.0 * Float::with_val(bits, 10).pow(decimals));
        let int = scaled.round().to_integer().unwrap_or_default();
        let negative = int < 0;
        let mut digits = int.abs().to_string();
        let width = decimals as usize + 1;
        if digits.len() < width {
            digits = format!("{}{digits}", "0".repeat(width - digits.len()));
        }
        let split = digits.len() - decimals as usize;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&digits[..split]);
        if decimals > 0 {
            out.push('.');
            out.push_str(&digits[split..]);
        }
        out
    }

    /// Scientific rendering with `digits` significant digits.
    pub fn to_sig(&self, digits: usize) -> String {
        self.0.to_string_radix(10, Some(digits))
    }

    /// Rounds to the nearest integer.
    pub fn round_to_integer(&self) -> Option<Integer> {
        self.0.to_integer()
    }

    pub fn floor_to_integer(&self) -> Option<Integer> {
        Float::with_val(self.0.prec(), self.0.floor_ref()).to_integer()
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.0.prec() as f64) / std::f64::consts::LOG2_10).floor() as usize;
        f.write_str(&self.to_sig(digits.max(1)))
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a HpReal> for &'a HpReal {
            type Output = HpReal;
            fn $method(self, rhs: &'a HpReal) -> HpReal {
                let bits = self.0.prec().max(rhs.0.prec());
                HpReal(Float::with_val(bits, &self.0 $op &rhs.0))
            }
        }
        impl $trait<HpReal> for HpReal {
            type Output = HpReal;
            fn $method(self, rhs: HpReal) -> HpReal {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a HpReal> for HpReal {
            type Output = HpReal;
            fn $method(self, rhs: &'a HpReal) -> HpReal {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<HpReal> for &'a HpReal {
            type Output = HpReal;
            fn $method(self, rhs: HpReal) -> HpReal {
                self.$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add, +);
binary_op!(Sub, sub, -);
binary_op!(Mul, mul, *);
binary_op!(Div, div, /);

impl Neg for HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal(-self.0)
    }
}

impl Neg for &HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal(Float::with_val(self.0.prec(), -&self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_rendering_rounds_to_nearest() {
        let p = Precision::digits(30);
        let x = HpReal::parse("0.1074890111413710727", p).unwrap();
        assert_eq!(x.to_fixed(15), "0.107489011141371");
        let y = HpReal::parse("-1.23456", p).unwrap();
        assert_eq!(y.to_fixed(3), "-1.235");
        assert_eq!(HpReal::one(p).to_fixed(0), "1");
        assert_eq!(HpReal::parse("0.000000138", p).unwrap().to_fixed(9), "0.000000138");
    }

    #[test]
    fn tolerance_is_explicit() {
        let p = Precision::digits(40);
        let a = HpReal::one(p);
        let b = &a + &HpReal::pow10(-30, p);
        assert!(a.approx_eq(&b, &Tolerance::absolute_pow10(-25, p)));
        assert!(!a.approx_eq(&b, &Tolerance::absolute_pow10(-35, p)));
        assert!(a.lt_by(&b, &Tolerance::relative_pow10(-35, p)));
        assert_eq!(a.cmp_within(&b, &Tolerance::relative_pow10(-20, p)), Ordering::Equal);
    }

    #[test]
    fn exp_of_gamma_matches_robin_constant() {
        let p = Precision::digits(6);
        let eg = HpReal::euler_gamma(p).exp();
        assert_eq!(eg.to_fixed(5), "1.78107");
    }
}
