use std::fmt;

use rug::Integer;

use super::{HpReal, Precision};

/// Outcome of a comparison made with error-bounded operands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Holds,
    Violated,
    /// The error intervals overlap; more precision is needed.
    Undecided,
}

/// A value together with a conservative bound on its absolute error.
#[derive(Clone, Debug)]
pub struct ErrorBounded {
    value: HpReal,
    abs_error: HpReal,
}

impl ErrorBounded {
    pub fn new(value: HpReal, abs_error: HpReal) -> Self {
        debug_assert!(!abs_error.is_negative());
        ErrorBounded { value, abs_error }
    }

    /// A value known without error.
    pub fn exact(value: HpReal) -> Self {
        let abs_error = HpReal::from_float(rug::Float::with_val(value.bits(), 0));
        ErrorBounded { value, abs_error }
    }

    pub fn from_integer(n: &Integer, precision: Precision) -> Self {
        let value = HpReal::from_integer(n, precision);
        // Conversion is exact when the integer fits in the mantissa.
        let abs_error = if n.significant_bits() <= precision.bits() {
            HpReal::zero(precision)
        } else {
            value.ulp_bound()
        };
        ErrorBounded { value, abs_error }
    }

    pub fn value(&self) -> &HpReal {
        &self.value
    }

    pub fn abs_error(&self) -> &HpReal {
        &self.abs_error
    }

    pub fn lower(&self) -> HpReal {
        &self.value - &self.abs_error
    }

    pub fn upper(&self) -> HpReal {
        &self.value + &self.abs_error
    }

    /// Adds `extra` to the error bound.
    pub fn widen(mut self, extra: &HpReal) -> Self {
        self.abs_error = &self.abs_error + &extra.abs();
        self
    }

    pub fn add(&self, other: &ErrorBounded) -> ErrorBounded {
        let value = &self.value + &other.value;
        let err = &self.abs_error + &other.abs_error + value.ulp_bound();
        ErrorBounded::new(value, err)
    }

    pub fn sub(&self, other: &ErrorBounded) -> ErrorBounded {
        let value = &self.value - &other.value;
        let err = &self.abs_error + &other.abs_error + value.ulp_bound();
        ErrorBounded::new(value, err)
    }

    pub fn mul(&self, other: &ErrorBounded) -> ErrorBounded {
        let value = &self.value * &other.value;
        let err = &self.value.abs() * &other.abs_error
            + &other.value.abs() * &self.abs_error
            + &self.abs_error * &other.abs_error
            + value.ulp_bound();
        ErrorBounded::new(value, err)
    }

    /// Decides `self <= other` using both error intervals.
    pub fn le(&self, other: &ErrorBounded) -> Tri {
        if self.upper().as_float() <= other.lower().as_float() {
            Tri::Holds
        } else if self.lower().as_float() > other.upper().as_float() {
            Tri::Violated
        } else {
            Tri::Undecided
        }
    }

    /// Decides `self < other` strictly.
    pub fn lt(&self, other: &ErrorBounded) -> Tri {
        if self.upper().as_float() < other.lower().as_float() {
            Tri::Holds
        } else if self.lower().as_float() >= other.upper().as_float() {
            Tri::Violated
        } else {
            Tri::Undecided
        }
    }
}

impl fmt::Display for ErrorBounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.value, self.abs_error.to_sig(3))
    }
}
