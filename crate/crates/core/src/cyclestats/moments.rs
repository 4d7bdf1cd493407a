use rug::Integer;

use super::distribution::build;
use crate::combinatorics::{complete_bell, stirling_second};
use crate::error::{check_range, Error, Result};
use crate::numeric::{HpReal, Linear, Mode, Precision, Scalar};

/// Largest moment order.
pub const MAX_ORDER: u32 = 12;
/// Largest truncation order of the asymptotic expansions.
pub const MAX_EXPANSION: u32 = 8;

/// `kappa_m(C_n) = sum_l (-1)^(l-1) (l-1)! S(m, l) p_l(n)`.
pub fn cumulant<M: Mode>(n: u64, m: u32, mode: &M) -> Result<M::Value> {
    check_range("m", m, 1, MAX_ORDER)?;
    let mut acc = mode.zero();
    for l in 1..=m {
        let coeff = Integer::from(Integer::factorial(l - 1)) * stirling_second(m as usize, l as usize)?;
        let term = mode.power_sum(n, l)?.mul(&mode.integer(&coeff));
        acc = if l % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}

/// `mu_m = E[(C_n - H_n)^m] = B_m(0, kappa_2, ..., kappa_m)`.
pub fn central_moment<M: Mode>(n: u64, m: u32, mode: &M) -> Result<M::Value> {
    Ok(moment_set(n, m, mode)?.central(m).clone())
}

/// Cumulants and central moments of `C_n` up to a common order.
#[derive(Clone, Debug)]
pub struct MomentSet<M: Mode> {
    pub n: u64,
    cumulants: Vec<M::Value>,
    central: Vec<M::Value>,
}

impl<M: Mode> MomentSet<M> {
    /// `kappa_m`, `1 <= m <= order`.
    pub fn cumulant(&self, m: u32) -> &M::Value {
        &self.cumulants[m as usize - 1]
    }

    /// `mu_m`, `1 <= m <= order`.
    pub fn central(&self, m: u32) -> &M::Value {
        &self.central[m as usize - 1]
    }

    pub fn order(&self) -> u32 {
        self.cumulants.len() as u32
    }
}

pub fn moment_set<M: Mode>(n: u64, order: u32, mode: &M) -> Result<MomentSet<M>> {
    check_range("m", order, 1, MAX_ORDER)?;
    let cumulants = (1..=order).map(|m| cumulant(n, m, mode)).collect::<Result<Vec<_>>>()?;
    let mut z = cumulants.clone();
    z[0] = mode.zero();
    let central = (1..=order as usize).map(|m| complete_bell(&z[..m], mode)).collect();
    Ok(MomentSet { n, cumulants, central })
}

/// `E_j` over `C_n`: `E[(C - 1) log C]` for `j = 1`, `E[log(C + j - 1)]`
/// for `j >= 2`. Exact mode yields a combination of logarithms.
pub fn log_moment<M: Mode>(n: u64, j: u64, mode: &M) -> Result<M::Log> {
    check_range("n", n, 1, M::MAX_N as u64 + 1)?;
    if j == 0 {
        return Err(Error::Range {
            what: "j",
            value: "0".into(),
            range: "[1, inf)".into(),
        });
    }
    let dist = build(n, mode);
    Ok(weighted_log(&dist, j))
}

pub(crate) fn weighted_log<M: Mode>(dist: &super::CycleDistribution<M>, j: u64) -> M::Log {
    if j == 1 {
        dist.expect_weighted_log(0, |k| k as i64 - 1)
    } else {
        dist.expect_weighted_log(j - 1, |_| 1)
    }
}

/// [`log_moment`] evaluated in high precision with ten guard digits.
pub fn exact_log_moment(n: u64, j: u64, precision: Precision) -> Result<HpReal> {
    check_range("n", n, 1, Precision::MAX_N as u64)?;
    let work = precision.with_extra(10);
    Ok(log_moment(n, j, &work)?.with_precision(precision))
}

/// `E[log(C_n + a)]` from the exact distribution (`a = 0` gives `E[log C_n]`).
pub fn exact_expected_log(n: u64, a: u64, precision: Precision) -> Result<HpReal> {
    check_range("n", n, 1, Precision::MAX_N as u64)?;
    let work = precision.with_extra(10);
    let dist = build(n, &work);
    Ok(dist.expect_weighted_log(a, |_| 1).evaluate(precision))
}

/// `E[C_n log C_n]` from the exact distribution.
pub fn exact_c_log_c(n: u64, precision: Precision) -> Result<HpReal> {
    check_range("n", n, 1, Precision::MAX_N as u64)?;
    let work = precision.with_extra(10);
    let dist = build(n, &work);
    Ok(dist.expect_weighted_log(0, |k| k as i64).evaluate(precision))
}

/// Truncated expansion
/// `log(H_n + a) + sum_{m=2}^{M} (-1)^(m-1)/m * mu_m / (H_n + a)^m`.
///
/// A formal series: no error bound is claimed.
pub fn asymptotic_log_moment(n: u64, a: &HpReal, order: u32, precision: Precision) -> Result<HpReal> {
    check_range("M", order, 1, MAX_EXPANSION)?;
    if a.is_negative() {
        return Err(Error::Domain(format!("shift a = {a} is negative")));
    }
    let work = precision.with_extra(10);
    let moments = moment_set(n, order, &work)?;
    let base = moments.cumulant(1) + &a.with_precision(work);
    let mut acc = base.ln();
    for m in 2..=order {
        let term = moments.central(m) / base.powi(m as i32);
        let term = term.div_i64(m as i64);
        acc = if m % 2 == 0 { acc - term } else { acc + term };
    }
    Ok(acc.with_precision(precision))
}

/// Truncated expansion
/// `H_n log H_n - sum_{m=2}^{M} (-1)^(m-1)/(m(m-1)) * mu_m / H_n^(m-1)`.
pub fn asymptotic_c_log_c(n: u64, order: u32, precision: Precision) -> Result<HpReal> {
    check_range("M", order, 1, MAX_EXPANSION)?;
    let work = precision.with_extra(10);
    let moments = moment_set(n, order, &work)?;
    let h = moments.cumulant(1).clone();
    let mut acc = &h * h.ln();
    for m in 2..=order {
        let term = (moments.central(m) / h.powi(m as i32 - 1)).div_i64((m * (m - 1)) as i64);
        // subtracting (-1)^(m-1) term
        acc = if m % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(acc.with_precision(precision))
}
