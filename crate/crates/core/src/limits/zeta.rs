use std::sync::{OnceLock, RwLock};

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::numeric::{ErrorBounded, HpReal, Precision};

/// Bernoulli number `B_m` (with `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> Rational {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(vec![Rational::from(1)]));
    if let Some(b) = table.read().expect("bernoulli table poisoned").get(m) {
        return b.clone();
    }
    let mut guard = table.write().expect("bernoulli table poisoned");
    while guard.len() <= m {
        // sum_{k=0}^{j} C(j+1, k) B_k = 0
        let j = guard.len();
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in guard.iter().enumerate() {
            acc += Rational::from(b * &binom);
            binom *= (j + 1 - k) as u64;
            binom /= (k + 1) as u64;
        }
        guard.push(-acc / Integer::from(j + 1));
    }
    guard[m].clone()
}

/// `zeta(k)` for integer `k >= 2`, with a proven error bound.
///
/// Sums `n^-k` for `n < N` and adds the Euler–Maclaurin tail at `N`. For
/// real `k` the remainder after `M` correction terms is bounded by the first
/// omitted term.
pub fn zeta_int_bounded(k: u32, precision: Precision) -> Result<ErrorBounded> {
    if k < 2 {
        return Err(Error::Domain(format!("zeta({k}) needs k >= 2")));
    }
    let work = precision.with_extra(10);
    let big_n = u64::from(precision.decimal_digits()) + 10;
    let eps = HpReal::pow10(-(precision.decimal_digits() as i32) - 5, work);
    let s = i64::from(k);

    let mut acc = HpReal::zero(work);
    for n in (1..big_n).rev() {
        acc = acc + HpReal::from_u64(n, work).powi(-(k as i32));
    }
    let nf = HpReal::from_u64(big_n, work);
    let n_pow = nf.powi(-(k as i32));
    acc = acc + (&n_pow * &nf).div_i64(s - 1) + n_pow.div_i64(2);

    // T_j = B_2j / (2j)! * s (s+1) ... (s+2j-2) * N^(-s-2j+1)
    let inv_n2 = (&nf * &nf).recip();
    let mut power = n_pow.div_i64(big_n as i64);
    let mut coeff = Rational::from(s); // rising / (2j)! for j = 1, before B_2j
    coeff /= 2;
    let mut j = 1usize;
    let remainder = loop {
        let term = HpReal::from_rational(&(&coeff * bernoulli(2 * j)), work) * &power;
        if term.abs().as_float() < eps.as_float() {
            break term.abs();
        }
        if j > 4 * big_n as usize {
            return Err(Error::Domain(format!("zeta({k}) correction series did not settle")));
        }
        acc = acc + term;
        // advance to j + 1: multiply by (s+2j-1)(s+2j) / ((2j+1)(2j+2))
        let jj = 2 * j as i64;
        coeff *= Integer::from((s + jj - 1) * (s + jj));
        coeff /= Integer::from((jj + 1) * (jj + 2));
        power = &power * &inv_n2;
        j += 1;
    };
    let rounding = acc.ulp_bound().mul_i64(2 * (big_n + j as u64) as i64 + 8);
    let value = acc.with_precision(precision);
    let err = remainder + rounding + value.ulp_bound();
    Ok(ErrorBounded::new(value, err.with_precision(precision)))
}

/// `zeta(k)` for integer `k >= 2`, accurate to `10^-P`.
pub fn zeta_int(k: u32, precision: Precision) -> Result<HpReal> {
    zeta_int_bounded(k, precision).map(|z| z.value().clone())
}
