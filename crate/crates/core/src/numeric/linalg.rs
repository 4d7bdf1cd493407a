//! Small dense determinants.

use super::scalar::{Linear, Scalar};

/// Determinant by Gaussian elimination with partial pivoting.
///
/// Panics if the matrix is empty or not square.
pub fn determinant<S: Scalar>(matrix: &[Vec<S>]) -> S {
    let n = matrix.len();
    assert!(n > 0, "empty matrix");
    assert!(matrix.iter().all(|row| row.len() == n), "matrix not square");
    let mut a: Vec<Vec<S>> = matrix.to_vec();
    let mut det: Option<S> = None;
    let mut negate = false;
    for col in 0..n {
        let pivot = (col..n).filter(|&r| !a[r][col].is_zero()).max_by(|&x, &y| {
            a[x][col]
                .magnitude()
                .partial_cmp(&a[y][col].magnitude())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let Some(pivot) = pivot else {
            return a[0][0].sub(&a[0][0]);
        };
        if pivot != col {
            a.swap(pivot, col);
            negate = !negate;
        }
        let p = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].div(&p);
            let (upper, lower) = a.split_at_mut(r);
            for (x, above) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *x = x.sub(&factor.mul(above));
            }
        }
        det = Some(match det {
            None => p,
            Some(d) => d.mul(&p),
        });
    }
    let det = det.expect("n > 0");
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Determinant of a matrix whose last row lives in a module over the scalars.
///
/// `upper` holds the first `r - 1` rows (each of length `r`); the result is
/// the cofactor expansion along `last`.
pub fn expand_last_row<S: Scalar, L: Linear<S>>(upper: &[Vec<S>], last: &[L]) -> L {
    let r = last.len();
    assert!(r > 0, "empty row");
    assert_eq!(upper.len(), r - 1, "expected r - 1 upper rows");
    assert!(upper.iter().all(|row| row.len() == r), "ragged upper rows");
    if r == 1 {
        return last[0].clone();
    }
    let mut acc: Option<L> = None;
    for (j, entry) in last.iter().enumerate() {
        let minor: Vec<Vec<S>> = upper
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut cofactor = determinant(&minor);
        if (r - 1 + j) % 2 == 1 {
            cofactor = cofactor.neg();
        }
        let term = entry.scale(&cofactor);
        acc = Some(match acc {
            None => term,
            Some(a) => a.plus(&term),
        });
    }
    acc.expect("r > 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{HpReal, LogCombination, Precision, Tolerance};
    use rug::Rational;

    fn q(a: i64) -> Rational {
        Rational::from(a)
    }

    #[test]
    fn known_determinants() {
        let m = vec![vec![q(2), q(1)], vec![q(7), q(4)]];
        assert_eq!(determinant(&m), q(1));
        let m = vec![vec![q(0), q(1), q(2)], vec![q(1), q(0), q(3)], vec![q(4), q(-3), q(8)]];
        assert_eq!(determinant(&m), q(-2));
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(determinant(&singular), q(0));
    }

    #[test]
    fn hp_determinant_with_pivoting() {
        let p = Precision::digits(30);
        let h = |x: f64| HpReal::from_f64(x, p);
        let m = vec![vec![h(1e-20), h(1.0)], vec![h(1.0), h(1.0)]];
        let d = determinant(&m);
        let expected = h(1e-20) - h(1.0);
        assert!(d.approx_eq(&expected, &Tolerance::absolute_pow10(-28, p)));
    }

    #[test]
    fn last_row_expansion_agrees_with_full_determinant() {
        let upper = vec![vec![q(3), q(1), q(0)], vec![q(5), q(3), q(1)]];
        let last = [q(2), q(-1), q(7)];
        let mut full = upper.clone();
        full.push(last.to_vec());
        assert_eq!(expand_last_row(&upper, &last), determinant(&full));
    }

    #[test]
    fn last_row_of_logs() {
        // det [[1, 2], [log 2, log 8]] = log 8 - 2 log 2 = log 2
        let upper = vec![vec![q(1), q(2)]];
        let last = [LogCombination::log_of(2), LogCombination::log_of(8)];
        assert_eq!(expand_last_row(&upper, &last), LogCombination::log_of(2));
    }
}
