//! Randomized checks of algebraic and monotonicity properties.

use proptest::prelude::*;
use rug::{Integer, Rational};

use robin_young::combinatorics::{complete_bell, Partition};
use robin_young::cyclestats::{cumulant, cycle_distribution, sample_cycle_count};
use robin_young::divisors::{factorize_u64, sigma};
use robin_young::exec::Strategy as Exec;
use robin_young::harness::{exit_code, CampaignReport, Record, Verdict};
use robin_young::numeric::{harmonic_hp, ErrorBounded, Exact, HpReal, Precision};
use robin_young::symfunc::{elementary_table, harmonic_points, hook_monomial_det, monomial_bruteforce};
use robin_young::thresholds::{d_threshold, pair_prefix_sums, Convention};

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000).prop_map(|(a, b)| Rational::from((a, b)))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(Rational::from(&a + &b) + &c, a.clone() + Rational::from(&b + &c));
        prop_assert_eq!(Rational::from(&a * &b) * &c, a.clone() * Rational::from(&b * &c));
        prop_assert_eq!(Rational::from(&a + &b), Rational::from(&b + &a));
        prop_assert_eq!(Rational::from(&a * &b), Rational::from(&b * &a));
        let distributed = &a * Rational::from(&b + &c);
        prop_assert_eq!(distributed, Rational::from(&a * &b) + Rational::from(&a * &c));
    }

    #[test]
    fn sigma_is_multiplicative(m in 1u64..1_000_000, n in 1u64..1_000_000) {
        prop_assume!(gcd(m, n) == 1);
        let mn = factorize_u64(m * n).unwrap();
        let product = sigma(&factorize_u64(m).unwrap()) * sigma(&factorize_u64(n).unwrap());
        prop_assert_eq!(sigma(&mn), product);
    }

    #[test]
    fn harmonic_between_logs(n in 1u64..=100_000) {
        let p = Precision::digits(30);
        let h = harmonic_hp(&Integer::from(n), p).unwrap();
        let log_n = HpReal::from_u64(n, p).ln();
        let upper = HpReal::from_u64(n + 1, p).ln() + HpReal::euler_gamma(p);
        prop_assert!(log_n.as_float() < h.lower().as_float());
        prop_assert!(h.upper().as_float() < upper.as_float());
    }

    #[test]
    fn d_threshold_monotone_in_target(n in 2u64..200_000, t1 in 0.0f64..1e6, t2 in 0.0f64..1e6) {
        // pair tables are only defined for non-squares
        let root = (n as f64).sqrt() as u64;
        prop_assume!(root * root != n);
        let table = pair_prefix_sums(&factorize_u64(n).unwrap()).unwrap();
        let p = Precision::digits(30);
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        for conv in [Convention::Exclusive, Convention::Inclusive] {
            let a = d_threshold(&table, &ErrorBounded::exact(HpReal::from_f64(lo, p)), conv);
            let b = d_threshold(&table, &ErrorBounded::exact(HpReal::from_f64(hi, p)), conv);
            prop_assert!(a.d_value <= b.d_value, "n={} {} -> {}, {} -> {}", n, lo, a.d_value, hi, b.d_value);
        }
    }

    #[test]
    fn hook_determinant_matches_brute_force(n in 1u64..=8, r in 2usize..=5, l in 0usize..=5) {
        let e = elementary_table(n, n as usize + 12, &Exact).unwrap();
        let x = harmonic_points(n as usize, &Exact);
        let brute = monomial_bruteforce(&Partition::hook(r as u32, l as u32), &x, &Exact).unwrap();
        prop_assert_eq!(hook_monomial_det(r, l, &e).unwrap(), brute);
    }

    #[test]
    fn cumulant_two_is_the_variance(n in 1u64..=40) {
        let dist = cycle_distribution(n, &Exact).unwrap();
        let mean = dist.raw_moment(1);
        let var = dist.moment_about(&mean, 2);
        prop_assert_eq!(cumulant(n, 2, &Exact).unwrap(), var);
    }

    #[test]
    fn exit_code_contract(verdicts in prop::collection::vec(0u8..4, 0..12)) {
        let mut report = CampaignReport::new("prop", Precision::digits(20));
        for (i, v) in verdicts.iter().enumerate() {
            let verdict = [Verdict::Pass, Verdict::ExpectedMismatch, Verdict::Fail, Verdict::Indeterminate][*v as usize];
            report.push(Record::new(format!("{i}"), verdict));
        }
        let report = report.finish();
        // a definite failure outranks an undecided comparison
        let expected = if verdicts.contains(&2) { 2 } else if verdicts.contains(&3) { 3 } else { 0 };
        prop_assert_eq!(exit_code(&[report]), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sampler_ignores_strategy(n in 1u64..5000, trials in 1u64..20_000, seed in any::<u64>()) {
        let a = sample_cycle_count(n, trials, seed, Exec::Sequential).unwrap();
        let b = sample_cycle_count(n, trials, seed, Exec::Parallel).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn complete_bell_of_zeros() {
    for m in 0..=12usize {
        let z = vec![Rational::new(); m];
        let expected = if m == 0 { Rational::from(1) } else { Rational::new() };
        assert_eq!(complete_bell(&z, &Exact), expected, "m={m}");
    }
}
