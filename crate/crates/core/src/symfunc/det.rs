use super::ElementaryTable;
use crate::error::{check_range, Result};
use crate::numeric::linalg::determinant;
use crate::numeric::{Mode, Scalar};

/// Row `i` (1-based) of the Newton matrix, of width `width`:
/// `(i e_i, e_{i-1}, e_{i-2}, ..., e_{i-width+1})` with `e_0 = 1`, `e_{<0} = 0`.
pub fn newton_row<M: Mode>(e: &ElementaryTable<M>, i: usize, width: usize) -> Vec<M::Value> {
    let i = i as i64;
    let mut row = Vec::with_capacity(width);
    row.push(e.e(i).mul_int(i));
    for c in 2..=width as i64 {
        row.push(e.e(i - c + 1));
    }
    row
}

/// The first `r - 1` Newton rows of an `r x r` matrix.
pub fn newton_rows<M: Mode>(e: &ElementaryTable<M>, r: usize) -> Vec<Vec<M::Value>> {
    (1..r).map(|i| newton_row(e, i, r)).collect()
}

/// `p_k` as the `k x k` Newton determinant in the `e_i`.
pub fn newton_p_det<M: Mode>(e: &ElementaryTable<M>, k: usize) -> Result<M::Value> {
    check_range("k", k, 1, e.mmax())?;
    let rows: Vec<Vec<M::Value>> = (1..=k).map(|i| newton_row(e, i, k)).collect();
    Ok(determinant(&rows))
}

/// The last row `((l+r) e_{l+r}, e_{l+r-1}, ..., e_{l+1})` of the hook determinant.
pub fn hook_row<M: Mode>(e: &ElementaryTable<M>, r: usize, l: usize) -> Vec<M::Value> {
    newton_row(e, l + r, r)
}

/// `m_[r, 1^l]` as an `r x r` determinant: `r - 1` Newton rows over
/// [`hook_row`]. Requires `r >= 2`; for `r = 1` the value is `e_{l+1}`.
pub fn hook_monomial_det<M: Mode>(r: usize, l: usize, e: &ElementaryTable<M>) -> Result<M::Value> {
    check_range("r", r, 2, e.mmax())?;
    e.require(l + r)?;
    let mut rows = newton_rows(e, r);
    rows.push(hook_row(e, r, l));
    Ok(determinant(&rows))
}

/// `e_{l+2} e_2 - (l+2) e_{l+3} e_1 + (l+1)(l+4)/2 e_{l+4}`, which equals
/// `m_[2, 2, 1^l]`.
pub fn m221_expansion<M: Mode>(l: usize, e: &ElementaryTable<M>) -> Result<M::Value> {
    e.require(l + 4)?;
    let li = l as i64;
    let a = e.e(li + 2).mul(&e.e(2));
    let b = e.e(li + 3).mul(&e.e(1)).mul_int(li + 2);
    let c = e.e(li + 4).mul_int((li + 1) * (li + 4)).div_int(2);
    Ok(a.sub(&b).add(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Partition;
    use crate::numeric::Exact;
    use crate::symfunc::{elementary_table, harmonic_points, monomial_bruteforce, power_sum};
    use rug::Rational;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn newton_examples() {
        let e3 = elementary_table(3, 6, &Exact).unwrap();
        assert_eq!(newton_p_det(&e3, 2).unwrap(), q(49, 36));
        assert_eq!(newton_p_det(&e3, 1).unwrap(), q(11, 6));
        let e4 = elementary_table(4, 6, &Exact).unwrap();
        assert_eq!(newton_p_det(&e4, 3).unwrap(), power_sum(4, 3, &Exact).unwrap());
        assert!(newton_p_det(&e4, 7).is_err());
        assert!(newton_p_det(&e4, 0).is_err());
    }

    #[test]
    fn hook_examples() {
        let e3 = elementary_table(3, 6, &Exact).unwrap();
        assert_eq!(hook_monomial_det(2, 0, &e3).unwrap(), power_sum(3, 2, &Exact).unwrap());
        let e4 = elementary_table(4, 6, &Exact).unwrap();
        let x4 = harmonic_points(4, &Exact);
        let mu = Partition::hook(2, 1);
        assert_eq!(
            hook_monomial_det(2, 1, &e4).unwrap(),
            monomial_bruteforce(&mu, &x4, &Exact).unwrap()
        );
        let lhs = Rational::from(e4.get(1).unwrap() * e4.get(2).unwrap()) - Rational::from(3 * e4.get(3).unwrap());
        assert_eq!(hook_monomial_det(2, 1, &e4).unwrap(), lhs);
        let e6 = elementary_table(6, 8, &Exact).unwrap();
        let x6 = harmonic_points(6, &Exact);
        assert_eq!(
            hook_monomial_det(3, 2, &e6).unwrap(),
            monomial_bruteforce(&Partition::hook(3, 2), &x6, &Exact).unwrap()
        );
        assert!(hook_monomial_det(1, 0, &e6).is_err());
        assert!(hook_monomial_det(3, 6, &e6).is_err());
    }

    #[test]
    fn m221_examples() {
        let e3 = elementary_table(3, 6, &Exact).unwrap();
        assert_eq!(m221_expansion(0, &e3).unwrap(), q(7, 18));
        let e5 = elementary_table(5, 8, &Exact).unwrap();
        let x5 = harmonic_points(5, &Exact);
        let mu = Partition::new(vec![2, 2, 1]).unwrap();
        assert_eq!(
            m221_expansion(1, &e5).unwrap(),
            monomial_bruteforce(&mu, &x5, &Exact).unwrap()
        );
        // [2,2,1,1] needs four variables
        assert_eq!(m221_expansion(2, &e3).unwrap(), q(0, 1));
        assert!(m221_expansion(5, &e3).is_err());
    }
}
