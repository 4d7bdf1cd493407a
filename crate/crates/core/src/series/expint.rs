use crate::error::{Error, Result};
use crate::numeric::{HpReal, Precision};

const LOG10_E: f64 = std::f64::consts::LOG10_E;

fn require_positive(x: &HpReal) -> Result<()> {
    if !x.is_positive() || !x.is_finite() {
        return Err(Error::Domain(format!("exponential integral needs x > 0, got {x}")));
    }
    Ok(())
}

/// `E_1(x) = int_x^inf e^(-t)/t dt` for `x > 0`, from
/// `-gamma - log x + sum_{k>=1} (-1)^(k+1) x^k / (k k!)`.
///
/// The alternating terms grow to about `e^x` while the result is about
/// `e^(-x)`, so the sum runs with `2 x log10(e)` extra digits.
pub fn exp_integral_e1(x: &HpReal, precision: Precision) -> Result<HpReal> {
    require_positive(x)?;
    let xf = x.to_f64();
    let extra = (2.0 * xf * LOG10_E).ceil() as u32 + 10;
    let work = precision.with_extra(extra);
    let x = x.with_precision(work);
    // stop once terms are below the absolute accuracy the result needs
    let cutoff = HpReal::pow10(
        -((precision.decimal_digits() + 5) as i32) - (xf * LOG10_E).ceil() as i32,
        work,
    );
    let mut power = HpReal::one(work); // x^k / k!
    let mut sum = HpReal::zero(work);
    let mut k = 1i64;
    loop {
        power = (&power * &x).div_i64(k);
        let term = power.div_i64(k);
        if k % 2 == 1 {
            sum = sum + &term;
        } else {
            sum = sum - &term;
        }
        if k as f64 > xf && term.as_float() < cutoff.as_float() {
            break;
        }
        k += 1;
    }
    let value = sum - HpReal::euler_gamma(work) - x.ln();
    Ok(value.with_precision(precision))
}

/// `Ei(x) = gamma + log x + sum_{k>=1} x^k / (k k!)` for `x > 0`.
pub fn exp_integral_ei(x: &HpReal, precision: Precision) -> Result<HpReal> {
    require_positive(x)?;
    let work = precision.with_extra(10);
    let x = x.with_precision(work);
    let xf = x.to_f64();
    let mut power = HpReal::one(work);
    let mut sum = HpReal::zero(work);
    let mut k = 1i64;
    loop {
        power = (&power * &x).div_i64(k);
        let term = power.div_i64(k);
        sum = sum + &term;
        if k as f64 > xf && (term.to_f64() / sum.to_f64()) < 10f64.powi(-(work.decimal_digits() as i32)) {
            break;
        }
        k += 1;
    }
    let value = sum + HpReal::euler_gamma(work) + x.ln();
    Ok(value.with_precision(precision))
}
