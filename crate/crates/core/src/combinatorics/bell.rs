use rug::Integer;

use crate::numeric::{Mode, Scalar};

/// Complete Bell polynomial `B_m(z_1, ..., z_m)` with `m = z.len()`.
///
/// Uses `B_{k+1} = sum_{i=0}^{k} C(k, i) B_{k-i} z_{i+1}` with `B_0 = 1`.
pub fn complete_bell<M: Mode>(z: &[M::Value], mode: &M) -> M::Value {
    let m = z.len();
    let mut b: Vec<M::Value> = Vec::with_capacity(m + 1);
    b.push(mode.one());
    for k in 0..m {
        let mut next = mode.zero();
        for i in 0..=k {
            if z[i].is_zero() {
                continue;
            }
            let binom = Integer::from(Integer::binomial_u(k as u32, i as u32));
            let term = b[k - i].mul(&z[i]).mul(&mode.integer(&binom));
            next = next.add(&term);
        }
        b.push(next);
    }
    b.pop().expect("B_0 present")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::stirling_second;
    use crate::numeric::Exact;
    use rug::Rational;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn central_moment_polynomials() {
        // rational test points for kappa_2..kappa_6
        let k = [q(0, 1), q(3, 7), q(-2, 5), q(11, 3), q(5, 2), q(-7, 4)];
        let (k2, k3, k4, k5, k6) = (&k[1], &k[2], &k[3], &k[4], &k[5]);
        let b4 = complete_bell(&k[..4], &Exact);
        assert_eq!(b4, (k4 + (3 * Rational::from(k2 * k2))));
        let b5 = complete_bell(&k[..5], &Exact);
        assert_eq!(b5, (k5 + (10 * Rational::from(k3 * k2))));
        let b6 = complete_bell(&k, &Exact);
        let expected = k6.clone()
            + (15 * Rational::from(k4 * k2))
            + (10 * Rational::from(k3 * k3))
            + (15 * Rational::from(k2 * k2) * k2.clone());
        assert_eq!(b6, expected);
        assert_eq!(complete_bell(&k[..1], &Exact), q(0, 1));
        assert_eq!(complete_bell(&k[..2], &Exact), k2.clone());
        assert_eq!(complete_bell(&k[..3], &Exact), k3.clone());
    }

    #[test]
    fn zero_arguments() {
        assert_eq!(complete_bell::<Exact>(&[], &Exact), q(1, 1));
        for m in 1..=12 {
            assert_eq!(complete_bell(&vec![q(0, 1); m], &Exact), q(0, 1));
        }
    }

    #[test]
    fn bell_numbers_match_stirling_row_sums() {
        for m in 0..=12usize {
            let bell = complete_bell(&vec![q(1, 1); m], &Exact);
            let row: Integer = (0..=m).map(|l| stirling_second(m, l).unwrap()).sum();
            assert_eq!(bell, Rational::from(row), "m = {m}");
        }
    }
}
