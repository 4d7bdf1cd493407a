use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use super::exp_integral_e1;
use crate::error::{Error, Result};
use crate::numeric::{harmonic_exact, harmonic_hp, ErrorBounded, HpReal, Precision};

/// Coefficients `a_k` of `A(n) = sum_k a_k H_n^k / k!`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientFamily {
    /// `a_k = H_k - gamma`, `a_0 = -gamma`.
    Lower,
    /// `a_k = log k + 1/k`, `a_0 = 0`.
    Upper,
    /// `a_k = log(k + 1)`.
    Canonical,
}

impl CoefficientFamily {
    pub const ALL: [CoefficientFamily; 3] = [
        CoefficientFamily::Lower,
        CoefficientFamily::Canonical,
        CoefficientFamily::Upper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoefficientFamily::Lower => "lower",
            CoefficientFamily::Upper => "upper",
            CoefficientFamily::Canonical => "canonical",
        }
    }

    /// `a_0, ..., a_kmax` at the given precision (shared, computed once per
    /// family and precision and extended on demand).
    pub fn coefficients(self, kmax: usize, precision: Precision) -> Arc<Vec<HpReal>> {
        type Cache = RwLock<HashMap<(CoefficientFamily, u32), Arc<Vec<HpReal>>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (self, precision.decimal_digits());
        if let Some(v) = cache.read().expect("coefficient cache poisoned").get(&key) {
            if v.len() > kmax {
                return Arc::clone(v);
            }
        }
        let mut guard = cache.write().expect("coefficient cache poisoned");
        let entry = guard.entry(key).or_insert_with(|| Arc::new(Vec::new()));
        if entry.len() <= kmax {
            let target = (kmax + 1).max(2 * entry.len());
            let values = self.compute(target, precision);
            *entry = Arc::new(values);
        }
        Arc::clone(entry)
    }

    fn compute(self, len: usize, precision: Precision) -> Vec<HpReal> {
        let gamma = HpReal::euler_gamma(precision);
        let mut out = Vec::with_capacity(len);
        let mut h = Rational::new();
        for k in 0..len as u64 {
            let v = match self {
                CoefficientFamily::Lower => {
                    if k > 0 {
                        h += Rational::from((1, k));
                    }
                    HpReal::from_rational(&h, precision) - &gamma
                }
                CoefficientFamily::Upper => {
                    if k == 0 {
                        HpReal::zero(precision)
                    } else {
                        HpReal::from_u64(k, precision).ln() + HpReal::from_rational(&Rational::from((1, k)), precision)
                    }
                }
                CoefficientFamily::Canonical => HpReal::from_u64(k + 1, precision).ln(),
            };
            out.push(v);
        }
        out
    }
}

impl fmt::Display for CoefficientFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoefficientFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lower" => Ok(CoefficientFamily::Lower),
            "upper" => Ok(CoefficientFamily::Upper),
            "canonical" => Ok(CoefficientFamily::Canonical),
            other => Err(Error::Parse(format!("unknown coefficient family {other:?}"))),
        }
    }
}

/// A truncated series value with a proven error bound.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: ErrorBounded,
    /// Index of the last term summed.
    pub terms: usize,
}

/// `H_n` as used by the series: exact for `n <= 10^4`, otherwise
/// [`harmonic_hp`].
pub fn harmonic_for_series(n: &Integer, precision: Precision) -> Result<ErrorBounded> {
    if *n >= 1 && *n <= 10_000 {
        let exact = harmonic_exact(n.to_u64().expect("small"))?;
        let value = HpReal::from_rational(&exact, precision);
        let err = value.ulp_bound();
        return Ok(ErrorBounded::new(value, err));
    }
    harmonic_hp(n, precision)
}

/// `A(n) = sum_{k>=0} a_k H_n^k / k!` for a coefficient family.
pub fn a_series(n: &Integer, family: CoefficientFamily, precision: Precision) -> Result<SeriesValue> {
    if *n < 1 {
        return Err(Error::Domain(format!("A(n) needs n >= 1, got {n}")));
    }
    let h = harmonic_for_series(n, precision.with_extra(10))?;
    a_series_at(&h, family, precision)
}

fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

/// Tail bound `sum_{k>K} k h^k / k! <= h * (h^K / K!) / (1 - h/(K+1))`.
pub fn tail_bound(h: &HpReal, big_k: usize) -> HpReal {
    let p = h.bits();
    let mut term = HpReal::from_float(rug::Float::with_val(p, 1));
    for k in 1..=big_k as i64 {
        term = (&term * h).div_i64(k);
    }
    let k1 = HpReal::from_float(rug::Float::with_val(p, big_k as u64 + 1));
    let one = HpReal::from_float(rug::Float::with_val(p, 1));
    let ratio = one - h / &k1;
    assert!(ratio.is_positive(), "K too small for the geometric tail bound");
    // round the bound upwards by a relative 2^-(p-8)
    let bound = h * &term / ratio;
    &bound + &bound.ulp_bound().mul_i64(256)
}

/// Same as [`a_series`] at a given `H` with its error bound.
///
/// Picks the smallest `K >= 2 e H` whose tail bound (with `|a_k| <= k`) is
/// below `10^(-P/2)`. The reported error adds the tail, rounding, and the
/// effect of the uncertainty `delta` of `H`, at most `delta (1 + H) e^H`.
pub fn a_series_at(h: &ErrorBounded, family: CoefficientFamily, precision: Precision) -> Result<SeriesValue> {
    if !h.value().is_positive() {
        return Err(Error::Domain(format!("H = {} must be positive", h.value())));
    }
    let work = precision.with_extra(10);
    let h_up = h.upper().with_precision(work);
    let hf = h_up.to_f64();
    let target = -(precision.decimal_digits() as f64 / 2.0) * std::f64::consts::LN_10;
    let mut big_k = (2.0 * std::f64::consts::E * hf).ceil().max(1.0) as usize;
    loop {
        let log_tail = hf.ln() + big_k as f64 * hf.ln() - ln_factorial(big_k) - (1.0 - hf / (big_k as f64 + 1.0)).ln();
        if log_tail < target - 1.0 {
            break;
        }
        big_k += 1;
    }
    let bound = HpReal::pow10(-((precision.decimal_digits() / 2) as i32), work);
    let mut tail = tail_bound(&h_up, big_k);
    while tail.as_float() >= bound.as_float() {
        big_k += 1;
        tail = tail_bound(&h_up, big_k);
    }
    let coeffs = family.coefficients(big_k, work);
    let x = h.value().with_precision(work);
    let mut power = HpReal::one(work);
    let mut sum = coeffs[0].clone();
    for k in 1..=big_k {
        power = (&power * &x).div_i64(k as i64);
        sum = sum + &coeffs[k] * &power;
    }
    // sum_k max(k, 1) H^k / k! <= (1 + H) e^H bounds every partial sum and
    // the derivative in H
    let envelope = (HpReal::one(work) + &h_up) * h_up.exp();
    let rounding = envelope.ulp_bound().mul_i64(8 * (big_k as i64 + 2));
    let propagated = &envelope * h.abs_error();
    let value = sum.with_precision(precision);
    let err = tail + rounding + propagated + value.ulp_bound();
    Ok(SeriesValue {
        value: ErrorBounded::new(value, err.with_precision(precision)),
        terms: big_k,
    })
}

/// `e^(H_n) (log H_n + E_1(H_n))`, the closed form of the lower family.
pub fn a_lower_closed(n: &Integer, precision: Precision) -> Result<HpReal> {
    if *n < 1 {
        return Err(Error::Domain(format!("A(n) needs n >= 1, got {n}")));
    }
    let work = precision.with_extra(10);
    let h = harmonic_for_series(n, work)?;
    a_lower_closed_at(h.value(), precision)
}

pub fn a_lower_closed_at(h: &HpReal, precision: Precision) -> Result<HpReal> {
    let work = precision.with_extra(10);
    let h = h.with_precision(work);
    let value = h.exp() * (h.ln() + exp_integral_e1(&h, work)?);
    Ok(value.with_precision(precision))
}
