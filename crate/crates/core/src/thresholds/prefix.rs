use std::fmt;
use std::str::FromStr;

use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::divisors::{divisors_below_sqrt, FactoredInteger};
use crate::error::{Error, Result};
use crate::numeric::{ErrorBounded, HpReal, Tri};

/// Which prefix sum a divisor must keep below the target.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `d` qualifies when the pairs of the divisors strictly below `d` sum to
    /// at most the target.
    #[default]
    Exclusive,
    /// `d` qualifies when the pairs up to and including `d` do.
    Inclusive,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Exclusive => "exclusive",
            Convention::Inclusive => "inclusive",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exclusive" => Ok(Convention::Exclusive),
            "inclusive" => Ok(Convention::Inclusive),
            other => Err(Error::Parse(format!("unknown convention {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRow {
    pub divisor: Integer,
    /// `d + n/d`.
    pub pair: Integer,
    /// Sum of the pairs of every divisor up to and including this one.
    pub cumulative: Integer,
}

/// Pairs `d + n/d` over the divisors `d < sqrt(n)` with running sums.
#[derive(Clone, Debug)]
pub struct PairPrefixTable {
    pub n: FactoredInteger,
    pub rows: Vec<PairRow>,
}

pub fn pair_prefix_sums(n: &FactoredInteger) -> Result<PairPrefixTable> {
    let divisors = divisors_below_sqrt(n)?;
    let value = n.value();
    let mut cumulative = Integer::new();
    let rows = divisors
        .into_iter()
        .map(|d| {
            let pair = Integer::from(&value / &d) + &d;
            cumulative += &pair;
            PairRow {
                divisor: d,
                pair,
                cumulative: cumulative.clone(),
            }
        })
        .collect();
    Ok(PairPrefixTable { n: n.clone(), rows })
}

impl PairPrefixTable {
    /// Sum of the pairs strictly before row `i`.
    pub fn before(&self, i: usize) -> Integer {
        match i {
            0 => Integer::new(),
            _ => self.rows[i - 1].cumulative.clone(),
        }
    }

    /// The sum compared against the target for row `i`.
    pub fn qualifying_sum(&self, i: usize, convention: Convention) -> Integer {
        match convention {
            Convention::Exclusive => self.before(i),
            Convention::Inclusive => self.rows[i].cumulative.clone(),
        }
    }

    pub fn index_of(&self, divisor: &Integer) -> Option<usize> {
        self.rows.binary_search_by(|row| row.divisor.cmp(divisor)).ok()
    }

    /// `sigma(n)`, the last running sum.
    pub fn total(&self) -> Integer {
        self.rows.last().map(|r| r.cumulative.clone()).unwrap_or_default()
    }
}

/// Outcome of a threshold search.
#[derive(Clone, Debug)]
pub struct ThresholdResult {
    pub n: FactoredInteger,
    pub target: ErrorBounded,
    pub convention: Convention,
    /// Largest qualifying divisor, or 0 when none qualifies.
    pub d_value: Integer,
    /// The sum that made `d_value` qualify (0 when `d_value` is 0).
    pub qualifying: Integer,
    /// The sum of the first divisor past `d_value`, if any.
    pub next: Option<Integer>,
    /// `target - qualifying`.
    pub margin: HpReal,
    /// Whether both boundary comparisons were decided despite the target's
    /// error bound.
    pub decided: bool,
}

impl ThresholdResult {
    /// Smallest relative distance `|target - s| / |target|` over the two
    /// sums that bracket the target.
    pub fn relative_gap(&self) -> HpReal {
        let t = self.target.value();
        let p = t.bits();
        let mut gap = (t - HpReal::from_float(rug::Float::with_val(p, &self.qualifying))).abs();
        if let Some(next) = &self.next {
            let g = (HpReal::from_float(rug::Float::with_val(p, next)) - t).abs();
            if g.as_float() < gap.as_float() {
                gap = g;
            }
        }
        gap / t.abs()
    }

    /// Relative change of the target needed for the search to return
    /// `claimed` instead, or `None` when `claimed` can never be returned.
    pub fn shift_to(&self, table: &PairPrefixTable, claimed: &Integer) -> Option<HpReal> {
        let t = self.target.value();
        let p = t.bits();
        let as_hp = |v: &Integer| HpReal::from_float(rug::Float::with_val(p, v));
        if *claimed == self.d_value {
            return Some(HpReal::from_float(rug::Float::with_val(p, 0)));
        }
        // the sum that must cross the target for `claimed` to be returned
        let boundary = if *claimed == 0 {
            table.qualifying_sum(0, self.convention)
        } else {
            let i = table.index_of(claimed)?;
            if *claimed < self.d_value {
                table.qualifying_sum(i + 1, self.convention)
            } else {
                table.qualifying_sum(i, self.convention)
            }
        };
        Some((as_hp(&boundary) - t).abs() / t.abs())
    }
}

/// Largest divisor `d < sqrt(n)` whose prefix sum stays at or below
/// `target`, under `convention`.
pub fn d_threshold(table: &PairPrefixTable, target: &ErrorBounded, convention: Convention) -> ThresholdResult {
    let t = target.value();
    let p = t.bits();
    let as_eb = |v: &Integer| ErrorBounded::exact(HpReal::from_float(rug::Float::with_val(p, v)));
    // sums are increasing, so the qualifying rows form a prefix
    let count = table.rows.len();
    let mut lo = 0usize;
    let mut hi = count;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let s = HpReal::from_float(rug::Float::with_val(p, &table.qualifying_sum(mid, convention)));
        if s.as_float() <= t.as_float() {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let chosen = lo; // rows before `chosen` qualify
    let (d_value, qualifying) = match chosen {
        0 => (Integer::new(), Integer::new()),
        i => (
            table.rows[i - 1].divisor.clone(),
            table.qualifying_sum(i - 1, convention),
        ),
    };
    let next = (chosen < count).then(|| table.qualifying_sum(chosen, convention));
    let mut decided = true;
    if chosen > 0 {
        decided &= as_eb(&qualifying).le(target) == Tri::Holds;
    }
    if let Some(next) = &next {
        decided &= as_eb(next).le(target) == Tri::Violated;
    }
    let margin = t - HpReal::from_float(rug::Float::with_val(p, &qualifying));
    ThresholdResult {
        n: table.n.clone(),
        target: target.clone(),
        convention,
        d_value,
        qualifying,
        next,
        margin,
        decided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::factorize_u64;
    use crate::numeric::Precision;

    fn table(n: u64) -> PairPrefixTable {
        pair_prefix_sums(&factorize_u64(n).unwrap()).unwrap()
    }

    fn target(x: f64) -> ErrorBounded {
        ErrorBounded::exact(HpReal::from_f64(x, Precision::digits(30)))
    }

    // all divisors by trial division, independent of the factored enumeration
    fn naive_pairs(n: u64) -> Vec<(u64, u64)> {
        (1..)
            .take_while(|d| d * d < n)
            .filter(|d| n % d == 0)
            .map(|d| (d, d + n / d))
            .collect()
    }

    #[test]
    fn pairs_of_120_and_6() {
        let t = table(120);
        let pairs: Vec<u64> = t.rows.iter().map(|r| r.pair.to_u64().unwrap()).collect();
        let cum: Vec<u64> = t.rows.iter().map(|r| r.cumulative.to_u64().unwrap()).collect();
        assert_eq!(pairs, [121, 62, 43, 34, 29, 26, 23, 22]);
        assert_eq!(cum, [121, 183, 226, 260, 289, 315, 338, 360]);
        let t = table(6);
        let cum: Vec<u64> = t.rows.iter().map(|r| r.cumulative.to_u64().unwrap()).collect();
        assert_eq!(cum, [7, 12]);
        assert!(pair_prefix_sums(&factorize_u64(36).unwrap()).is_err());
        assert!(pair_prefix_sums(&FactoredInteger::one()).is_err());
    }

    #[test]
    fn matches_trial_division() {
        for n in 2..2000u64 {
            let f = factorize_u64(n).unwrap();
            if f.is_perfect_square() {
                continue;
            }
            let t = pair_prefix_sums(&f).unwrap();
            let naive = naive_pairs(n);
            assert_eq!(t.rows.len(), naive.len());
            for (row, (d, pair)) in t.rows.iter().zip(naive) {
                assert_eq!(row.divisor, d);
                assert_eq!(row.pair, pair);
            }
            assert_eq!(t.total(), crate::divisors::sigma(&f));
        }
    }

    #[test]
    fn conventions_at_120() {
        let t = table(120);
        let target = target(187.93);
        let ex = d_threshold(&t, &target, Convention::Exclusive);
        assert_eq!(ex.d_value, 3);
        assert_eq!(ex.qualifying, 183);
        assert_eq!(ex.next, Some(Integer::from(226)));
        assert!(ex.decided);
        assert!((ex.margin.to_f64() - 4.93).abs() < 1e-9);
        let inc = d_threshold(&t, &target, Convention::Inclusive);
        assert_eq!(inc.d_value, 2);
        assert_eq!(inc.qualifying, 183);
    }

    #[test]
    fn negative_target_gives_zero() {
        let t = table(2);
        let r = d_threshold(&t, &target(-0.7), Convention::Exclusive);
        assert_eq!(r.d_value, 0);
        assert_eq!(r.next, Some(Integer::new()));
        assert!(r.decided);
        // the empty sum qualifies for any nonnegative target
        assert_eq!(d_threshold(&t, &target(0.0), Convention::Exclusive).d_value, 1);
        assert_eq!(d_threshold(&t, &target(1e9), Convention::Exclusive).d_value, 1);
        assert_eq!(d_threshold(&t, &target(2.5), Convention::Inclusive).d_value, 0);
    }

    #[test]
    fn ties_and_undecided() {
        let t = table(120);
        // exactly on a sum: <= admits it
        assert_eq!(d_threshold(&t, &target(226.0), Convention::Exclusive).d_value, 4);
        let p = Precision::digits(30);
        let fuzzy = ErrorBounded::new(HpReal::from_i64(226, p), HpReal::from_f64(0.5, p));
        let r = d_threshold(&t, &fuzzy, Convention::Exclusive);
        assert!(!r.decided);
    }

    #[test]
    fn shift_to_other_claims() {
        let t = table(360);
        let r = d_threshold(&t, &target(957.2), Convention::Exclusive);
        assert_eq!(r.d_value, 9);
        let shift = r.shift_to(&t, &Integer::from(8)).unwrap();
        assert!((shift.to_f64() - 1.2 / 957.2).abs() < 1e-9);
        assert!(r.shift_to(&t, &Integer::from(7)).is_none());
        assert!(r.shift_to(&t, &Integer::from(9)).unwrap().is_zero());
        assert!((r.relative_gap().to_f64() - 1.2 / 957.2).abs() < 1e-9);
    }
}
