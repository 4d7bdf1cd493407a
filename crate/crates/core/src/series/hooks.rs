use rug::Integer;

use crate::combinatorics::Partition;
use crate::cyclestats::{build_distribution, weighted_log};
use crate::error::{check_range, Result};
use crate::numeric::linalg::expand_last_row;
use crate::numeric::{HpReal, Linear, Mode, Precision, Scalar};
use crate::symfunc::{
    e_ij, elementary_table, harmonic_points, m221_expansion, monomial_bruteforce, newton_rows, ElementaryTable,
};

/// Largest hook arm accepted by the determinant and moment routes.
pub const MAX_R: usize = 12;
/// Largest `n` for the brute-force routes.
pub const BRUTE_MAX_N: usize = 10;
/// Largest `r` for [`ar_direct`] and [`a_by_assembly`].
pub const AR_MAX_R: usize = 8;

fn factorial<M: Mode>(r: usize, mode: &M) -> M::Value {
    mode.integer(&Integer::from(Integer::factorial(r as u32)))
}

fn check_n<M: Mode>(n: u64) -> Result<()> {
    check_range("n", n, 1, (M::MAX_N as u64).min(10_000))
}

fn add_log<M: Mode>(acc: M::Log, k: u64, coeff: &M::Value, mode: &M) -> M::Log {
    if coeff.is_zero() || k <= 1 {
        return acc;
    }
    acc.plus(&mode.log_int(k).scale(coeff))
}

/// `A_1(n) = sum_{m=1}^n log(m+1) e_m(n)`.
pub fn a1<M: Mode>(n: u64, mode: &M) -> Result<M::Log> {
    check_n::<M>(n)?;
    let e = elementary_table(n, n as usize, mode)?;
    let mut acc = mode.log_zero();
    for m in 1..=n as usize {
        acc = add_log(acc, m as u64 + 1, e.get(m)?, mode);
    }
    Ok(acc)
}

/// `(n + 1) E[log C_{n+1}]`, the probabilistic form of [`a1`].
pub fn a1_by_moment<M: Mode>(n: u64, mode: &M) -> Result<M::Log> {
    check_n::<M>(n)?;
    let dist = build_distribution(n + 1, mode);
    Ok(dist.expect_weighted_log(0, |_| 1).scale(&mode.int(n as i64 + 1)))
}

/// The row `(S_1^(r), ..., S_r^(r))` from a table with `mmax >= n + r - 1`:
/// `S_1 = sum_m log(m+r) (m+r-1) e_{m+r-1}` and
/// `S_j = sum_m log(m+r) e_{m+r-j}` for `j >= 2`, with `m = 1..n`.
pub fn s_row<M: Mode>(r: usize, e: &ElementaryTable<M>) -> Result<Vec<M::Log>> {
    check_range("r", r, 2, MAX_R)?;
    let n = e.n() as usize;
    e.require(n + r - 1)?;
    let mode = e.mode();
    let mut row = vec![mode.log_zero(); r];
    for m in 1..=n {
        let k = (m + r) as u64;
        let first = e.e((m + r - 1) as i64).mul_int((m + r - 1) as i64);
        row[0] = add_log(std::mem::replace(&mut row[0], mode.log_zero()), k, &first, mode);
        for j in 2..=r {
            let v = e.e(m as i64 + r as i64 - j as i64);
            row[j - 1] = add_log(std::mem::replace(&mut row[j - 1], mode.log_zero()), k, &v, mode);
        }
    }
    Ok(row)
}

/// A single `S_j^(r)(n)`.
pub fn s_sum<M: Mode>(r: usize, j: usize, n: u64, mode: &M) -> Result<M::Log> {
    check_range("r", r, 2, MAX_R)?;
    check_range("j", j, 1, r)?;
    check_n::<M>(n)?;
    let e = elementary_table(n, n as usize + r, mode)?;
    Ok(s_row(r, &e)?.swap_remove(j - 1))
}

/// The correction row `(Delta_1, ..., Delta_r)`:
/// `Delta_1 = -sum_{t=1}^r log t (t-1) e_{t-1}` and
/// `Delta_j = -sum_{t=1}^{r-j+1} log(t+j-1) e_{t-1}`.
pub fn delta_row<M: Mode>(r: usize, e: &ElementaryTable<M>) -> Result<Vec<M::Log>> {
    check_range("r", r, 2, MAX_R)?;
    e.require(r)?;
    let mode = e.mode();
    let mut row = Vec::with_capacity(r);
    let mut first = mode.log_zero();
    for t in 1..=r {
        first = add_log(first, t as u64, &e.e(t as i64 - 1).mul_int(t as i64 - 1), mode);
    }
    row.push(first.scale(&mode.int(-1)));
    for j in 2..=r {
        let mut acc = mode.log_zero();
        for t in 1..=r - j + 1 {
            acc = add_log(acc, (t + j - 1) as u64, &e.e(t as i64 - 1), mode);
        }
        row.push(acc.scale(&mode.int(-1)));
    }
    Ok(row)
}

/// The determinant with Newton rows over the `Delta` row; it vanishes.
pub fn delta_determinant<M: Mode>(r: usize, n: u64, mode: &M) -> Result<M::Log> {
    check_n::<M>(n)?;
    let e = elementary_table(n, n as usize + r, mode)?;
    Ok(expand_last_row(&newton_rows(&e, r), &delta_row(r, &e)?))
}

/// `A~_r(n)` by the determinant with Newton rows over the `S` row, over `r!`.
pub fn atilde_det<M: Mode>(r: usize, n: u64, mode: &M) -> Result<M::Log> {
    check_range("r", r, 2, MAX_R)?;
    check_n::<M>(n)?;
    let e = elementary_table(n, n as usize + r, mode)?;
    let det = expand_last_row(&newton_rows(&e, r), &s_row(r, &e)?);
    Ok(det.scale(&mode.one().div(&factorial(r, mode))))
}

/// `E_j` taken over `C_{n+1}`.
pub fn e_moment<M: Mode>(j: u64, n: u64, mode: &M) -> Result<M::Log> {
    check_n::<M>(n)?;
    check_range("j", j, 1, MAX_R as u64)?;
    Ok(weighted_log(&build_distribution(n + 1, mode), j))
}

/// `A~_r(n) = (n+1)/r! sum_{j=1}^r (-1)^(r+j) p_{j-1}(n) E_j` with the
/// `E_j` over `C_{n+1}` and `p_0 = 1`.
pub fn atilde_moment<M: Mode>(r: usize, n: u64, mode: &M) -> Result<M::Log> {
    check_range("r", r, 2, MAX_R)?;
    check_n::<M>(n)?;
    let dist = build_distribution(n + 1, mode);
    let mut acc = mode.log_zero();
    for j in 1..=r {
        let p = if j == 1 {
            mode.one()
        } else {
            mode.power_sum(n, j as u32 - 1)?
        };
        let coeff = if (r + j) % 2 == 0 { p } else { p.neg() };
        acc = acc.plus(&weighted_log(&dist, j as u64).scale(&coeff));
    }
    let scale = mode.int(n as i64 + 1).div(&factorial(r, mode));
    Ok(acc.scale(&scale))
}

/// `A~_r(n) = 1/r! sum_{l=0}^{n-1} log(l+r+1) m_[r,1^l](1, 1/2, ..., 1/n)`
/// with brute-force monomials.
pub fn atilde_direct<M: Mode>(r: usize, n: u64, mode: &M) -> Result<M::Log> {
    check_range("r", r, 1, 10)?;
    check_range("n", n, 1, BRUTE_MAX_N as u64)?;
    let x = harmonic_points(n as usize, mode);
    let mut acc = mode.log_zero();
    for l in 0..n as usize {
        let m = monomial_bruteforce(&Partition::hook(r as u32, l as u32), &x, mode)?;
        acc = add_log(acc, (l + r + 1) as u64, &m, mode);
    }
    Ok(acc.scale(&mode.one().div(&factorial(r, mode))))
}

/// `R_3(n) = 1/4 sum_{l=0}^{n-2} log(l+5) m_[2,2,1^l]`, the non-hook part of
/// `A_3(n)`, with the monomials from their `e`-expansion.
pub fn r3<M: Mode>(n: u64, mode: &M) -> Result<M::Log> {
    check_range("n", n, 2, (M::MAX_N as u64).min(10_000))?;
    let e = elementary_table(n, n as usize + 2, mode)?;
    let mut acc = mode.log_zero();
    for l in 0..=(n as usize - 2) {
        acc = add_log(acc, (l + 5) as u64, &m221_expansion(l, &e)?, mode);
    }
    Ok(acc.scale(&mode.ratio(1, 4)))
}

/// `A_r(n) = sum_{i=1}^n log(i+r) E_{i,i+r-1}(n)`: every partition with
/// `|mu| - l(mu) = r - 1`, weighted by `log(l(mu) + r) / prod mu_t!`.
pub fn ar_direct<M: Mode>(r: usize, n: u64, mode: &M) -> Result<M::Log> {
    check_range("r", r, 1, AR_MAX_R)?;
    check_range("n", n, 1, BRUTE_MAX_N as u64)?;
    let x = harmonic_points(n as usize, mode);
    let mut acc = mode.log_zero();
    for i in 1..=n as usize {
        let v = e_ij(i, (i + r - 1) as u32, &x, mode)?;
        acc = add_log(acc, (i + r) as u64, &v, mode);
    }
    Ok(acc)
}

/// `sum_{r=1}^{rmax} A_r(n)`, which tends to the canonical `A(n)`.
pub fn a_by_assembly<M: Mode>(n: u64, rmax: usize, mode: &M) -> Result<M::Log> {
    check_range("n", n, 1, 8)?;
    check_range("rmax", rmax, 1, AR_MAX_R)?;
    let mut acc = mode.log_zero();
    for r in 1..=rmax {
        acc = acc.plus(&ar_direct(r, n, mode)?);
    }
    Ok(acc)
}

/// Upper bound on `A(n) - sum_{r<=rmax} A_r(n)` for the canonical family:
/// the missing partitions have weight `k > rmax`, so the gap is at most
/// `sum_{k>rmax} log(k+1) H_n^k / k!`.
pub fn assembly_tail_bound(n: u64, rmax: usize, precision: Precision) -> Result<HpReal> {
    check_range("n", n, 1, 8)?;
    let work = precision.with_extra(10);
    let h = HpReal::from_rational(&crate::numeric::harmonic_exact(n)?, work);
    let big_k = 80usize;
    let mut term = HpReal::one(work);
    let mut acc = HpReal::zero(work);
    for k in 1..=big_k {
        term = (&term * &h).div_i64(k as i64);
        if k > rmax {
            acc = acc + HpReal::from_u64(k as u64 + 1, work).ln() * &term;
        }
    }
    // log(k+1) <= k past K
    let bound = acc + super::family::tail_bound(&h, big_k);
    Ok((&bound + &bound.ulp_bound().mul_i64(64)).with_precision(precision))
}
