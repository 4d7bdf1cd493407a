//! Exhaustive checks over fixed ranges.

use robin_young::divisors::{ca_chain, factorize_u64, is_prime_u64, sigma, sigma_table};
use robin_young::exec::{self, Strategy};
use robin_young::numeric::{harmonic_exact, HarmonicSweep, Precision};
use robin_young::series::{a_series_at, CoefficientFamily};
use robin_young::thresholds::pair_prefix_sums;

#[test]
fn prefix_sums_end_at_sigma() {
    let sig = sigma_table(100_001);
    let bad: Vec<u64> = exec::map_range(Strategy::Parallel, 2, 100_001, |n| {
        let f = factorize_u64(n).unwrap();
        if f.is_perfect_square() {
            return None;
        }
        let table = pair_prefix_sums(&f).unwrap();
        if table.rows.len() < 2 {
            return None;
        }
        let increasing = table.rows.windows(2).all(|w| w[0].cumulative < w[1].cumulative);
        (!increasing || table.total() != sig[n as usize]).then_some(n)
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn ca_chain_steps_by_primes() {
    let chain = ca_chain(60).unwrap().entries;
    for w in chain.windows(2) {
        assert!(w[0].divides(&w[1]));
        let ratio = w[1].value() / w[0].value();
        assert!(is_prime_u64(ratio.to_u64().unwrap()), "{ratio}");
        // sigma(n)/n strictly increases: sigma(a) b < sigma(b) a
        let lhs = sigma(&w[0]) * w[1].value();
        let rhs = sigma(&w[1]) * w[0].value();
        assert!(lhs < rhs, "{} -> {}", w[0].value(), w[1].value());
    }
}

#[test]
fn harmonic_consecutive_differences() {
    let mut prev = harmonic_exact(1).unwrap();
    for n in 2..=1000u64 {
        let cur = harmonic_exact(n).unwrap();
        assert_eq!(rug::Rational::from(&cur - &prev), rug::Rational::from((1, n)));
        prev = cur;
    }
}

#[test]
fn coefficient_families_are_ordered() {
    let p = Precision::digits(40);
    let hs: Vec<_> = HarmonicSweep::new(p.with_extra(10))
        .take(5040)
        .map(|(_, h)| h)
        .collect();
    let bad: Vec<usize> = exec::map(Strategy::Parallel, &hs, |h| {
        let v = |f| a_series_at(h, f, p).unwrap().value;
        let (lo, mid, hi) = (
            v(CoefficientFamily::Lower),
            v(CoefficientFamily::Canonical),
            v(CoefficientFamily::Upper),
        );
        lo.upper().as_float() <= mid.lower().as_float() && mid.upper().as_float() <= hi.lower().as_float()
    })
    .into_iter()
    .enumerate()
    .filter(|(_, ok)| !ok)
    .map(|(i, _)| i + 1)
    .collect();
    assert!(bad.is_empty(), "{bad:?}");
}
