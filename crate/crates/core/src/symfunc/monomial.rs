use rug::Integer;

use crate::combinatorics::{partitions_of, LengthConstraint, Partition};
use crate::error::{check_range, Result};
use crate::numeric::{Mode, Scalar};

/// Largest number of variables for brute-force monomials.
pub const BRUTE_MAX_VARS: usize = 12;
/// Largest partition weight for brute-force monomials.
pub const BRUTE_MAX_WEIGHT: u32 = 20;

/// `m_mu(x)` summed over all distinct placements of the parts of `mu` onto
/// the variables. Each distinct part value picks its own index set, so the
/// cost is a product of binomials rather than `n!`.
pub fn monomial_bruteforce<M: Mode>(mu: &Partition, x: &[M::Value], mode: &M) -> Result<M::Value> {
    check_range("variables", x.len(), 1, BRUTE_MAX_VARS)?;
    check_range("weight", mu.weight(), 0, BRUTE_MAX_WEIGHT)?;
    if mu.len() > x.len() {
        return Ok(mode.zero());
    }
    let groups = mu.multiplicities();
    // powers[i][k] = x_i^k
    let max_part = mu.parts().first().copied().unwrap_or(0) as usize;
    let powers: Vec<Vec<M::Value>> = x
        .iter()
        .map(|xi| {
            let mut row = vec![mode.one()];
            for k in 1..=max_part {
                row.push(row[k - 1].mul(xi));
            }
            row
        })
        .collect();
    Ok(place(&groups, 0, 0, &powers, mode.one(), mode))
}

fn place<M: Mode>(
    groups: &[(u32, usize)],
    g: usize,
    used: u32,
    powers: &[Vec<M::Value>],
    acc: M::Value,
    mode: &M,
) -> M::Value {
    let Some(&(part, mult)) = groups.get(g) else {
        return acc;
    };
    let mut total = mode.zero();
    let mut chosen = Vec::with_capacity(mult);
    choose(
        groups,
        g,
        part as usize,
        mult,
        0,
        used,
        &mut chosen,
        powers,
        &acc,
        mode,
        &mut total,
    );
    total
}

#[allow(clippy::too_many_arguments)]
fn choose<M: Mode>(
    groups: &[(u32, usize)],
    g: usize,
    part: usize,
    mult: usize,
    start: usize,
    used: u32,
    chosen: &mut Vec<usize>,
    powers: &[Vec<M::Value>],
    acc: &M::Value,
    mode: &M,
    total: &mut M::Value,
) {
    if chosen.len() == mult {
        let mut value = acc.clone();
        let mut mask = used;
        for &i in chosen.iter() {
            value = value.mul(&powers[i][part]);
            mask |= 1 << i;
        }
        let sub = place(groups, g + 1, mask, powers, value, mode);
        *total = total.add(&sub);
        return;
    }
    let n = powers.len();
    for i in start..n {
        if used & (1 << i) != 0 {
            continue;
        }
        chosen.push(i);
        choose(groups, g, part, mult, i + 1, used, chosen, powers, acc, mode, total);
        chosen.pop();
    }
}

fn part_factorials<M: Mode>(mu: &Partition, mode: &M) -> M::Value {
    let mut den = Integer::from(1);
    for &p in mu.parts() {
        den *= Integer::from(Integer::factorial(p));
    }
    mode.integer(&den)
}

/// `E_{i,j}(x) = sum over mu |- j with i parts of m_mu(x) / (mu_1! ... mu_i!)`.
pub fn e_ij<M: Mode>(i: usize, j: u32, x: &[M::Value], mode: &M) -> Result<M::Value> {
    let mut acc = mode.zero();
    for mu in partitions_of(j, LengthConstraint::Exactly(i))? {
        let m = monomial_bruteforce(&mu, x, mode)?;
        acc = acc.add(&m.div(&part_factorials(&mu, mode)));
    }
    Ok(acc)
}

/// Partial sum `sum_{j=0}^{J} sum_{mu |- j} m_mu(x) / prod mu_t!` at
/// `x_i = 1/i`, a truncation of `exp(x_1 + ... + x_n)`.
pub fn exp_expansion_partial<M: Mode>(n: usize, big_j: u32, mode: &M) -> Result<M::Value> {
    check_range("n", n, 1, 6)?;
    check_range("J", big_j, 0, 30)?;
    let x = super::harmonic_points(n, mode);
    let mut acc = mode.one();
    for j in 1..=big_j {
        for mu in partitions_of(j, LengthConstraint::AtMost(n))? {
            let m = monomial_place_unbounded(&mu, &x, mode);
            acc = acc.add(&m.div(&part_factorials(&mu, mode)));
        }
    }
    Ok(acc)
}

// Same enumeration without the weight cap (weights up to 30 only arise here,
// with at most 6 variables).
fn monomial_place_unbounded<M: Mode>(mu: &Partition, x: &[M::Value], mode: &M) -> M::Value {
    if mu.len() > x.len() {
        return mode.zero();
    }
    let max_part = mu.parts().first().copied().unwrap_or(0) as usize;
    let powers: Vec<Vec<M::Value>> = x
        .iter()
        .map(|xi| {
            let mut row = vec![mode.one()];
            for k in 1..=max_part {
                row.push(row[k - 1].mul(xi));
            }
            row
        })
        .collect();
    place(&mu.multiplicities(), 0, 0, &powers, mode.one(), mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Exact;
    use rug::Rational;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Sum over all exponent vectors that are rearrangements of `mu`.
    fn monomial_by_permutations(mu: &[u32], x: &[Rational]) -> Rational {
        let n = x.len();
        if mu.len() > n {
            return Rational::new();
        }
        let mut padded = mu.to_vec();
        padded.resize(n, 0);
        let mut seen = std::collections::BTreeSet::new();
        let mut idx: Vec<usize> = (0..n).collect();
        // all permutations of positions, deduplicated by exponent vector
        fn heap(k: usize, idx: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == 1 {
                out.push(idx.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, idx, out);
                if k % 2 == 0 {
                    idx.swap(i, k - 1);
                } else {
                    idx.swap(0, k - 1);
                }
            }
        }
        let mut perms = Vec::new();
        heap(n, &mut idx, &mut perms);
        let mut total = Rational::new();
        for p in perms {
            let alpha: Vec<u32> = p.iter().map(|&i| padded[i]).collect();
            if seen.insert(alpha.clone()) {
                let mut term = Rational::from(1);
                for (xi, &a) in x.iter().zip(&alpha) {
                    for _ in 0..a {
                        term *= xi;
                    }
                }
                total += term;
            }
        }
        total
    }

    #[test]
    fn examples() {
        let x2: Vec<Rational> = vec![q(1, 1), q(1, 2)];
        assert_eq!(monomial_bruteforce(&part(&[2, 1]), &x2, &Exact).unwrap(), q(3, 4));
        let x3: Vec<Rational> = vec![q(1, 1), q(1, 2), q(1, 3)];
        assert_eq!(monomial_bruteforce(&part(&[2, 2]), &x3, &Exact).unwrap(), q(7, 18));
        assert_eq!(monomial_bruteforce(&part(&[1]), &x3, &Exact).unwrap(), q(11, 6));
        assert_eq!(monomial_bruteforce(&part(&[1, 1, 1, 1]), &x3, &Exact).unwrap(), q(0, 1));
        assert_eq!(monomial_bruteforce(&Partition::empty(), &x3, &Exact).unwrap(), q(1, 1));
        assert!(monomial_bruteforce(&part(&[21]), &x3, &Exact).is_err());
    }

    #[test]
    fn matches_permutation_enumeration() {
        let x: Vec<Rational> = (1..=5).map(|i| q(1, i)).collect();
        for j in 0..=7 {
            for mu in partitions_of(j, LengthConstraint::Any).unwrap() {
                assert_eq!(
                    monomial_bruteforce(&mu, &x, &Exact).unwrap(),
                    monomial_by_permutations(mu.parts(), &x),
                    "{mu}"
                );
            }
        }
    }

    #[test]
    fn grouped_sums_are_powers_of_h() {
        for n in 1..=6usize {
            let x: Vec<Rational> = (1..=n as i64).map(|i| q(1, i)).collect();
            let h: Rational = x.iter().sum();
            let mut power = Rational::from(1);
            for j in 0..=10u32 {
                let mut grouped = Rational::new();
                for i in 0..=j as usize {
                    grouped += e_ij(i, j, &x, &Exact).unwrap();
                }
                let fact = Rational::from(Integer::from(Integer::factorial(j)));
                assert_eq!(grouped, Rational::from(&power / &fact), "n = {n}, j = {j}");
                power *= &h;
            }
        }
    }

    #[test]
    fn exp_partial_sums() {
        assert_eq!(exp_expansion_partial(3, 0, &Exact).unwrap(), q(1, 1));
        let e1 = exp_expansion_partial(1, 5, &Exact).unwrap();
        assert_eq!(e1, q(120 + 120 + 60 + 20 + 5 + 1, 120));
        assert!(exp_expansion_partial(7, 3, &Exact).is_err());
        assert!(exp_expansion_partial(3, 31, &Exact).is_err());
    }
}
