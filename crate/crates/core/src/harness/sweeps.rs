//! Sweeps over `n`: sigma against `A(n)`, the appendix bound, and the Robin
//! and Lagarias inequalities.

use rug::Integer;

use super::report::{CampaignReport, Diagnostic, Record, Verdict};
use crate::divisors::{ca_chain, sigma, sigma_table};
use crate::error::{check_range, Result};
use crate::exec::{self, Strategy};
use crate::numeric::{harmonic_hp, ErrorBounded, HarmonicSweep, HpReal, Precision, Tri};
use crate::series::{a_series_at, exp_integral_e1, exp_integral_ei, CoefficientFamily};
use crate::thresholds::nloglogn_target;

/// Largest `n` accepted by the sweeps.
pub const MAX_SWEEP: u64 = 100_000;

pub(crate) fn relative_margin(lhs: &HpReal, rhs: &HpReal) -> f64 {
    ((rhs - lhs) / rhs.abs()).to_f64()
}

fn harmonic_values(nmax: u64, precision: Precision) -> Vec<ErrorBounded> {
    HarmonicSweep::new(precision)
        .take(nmax as usize)
        .map(|(_, h)| h)
        .collect()
}

/// `sigma(n) <= A(n)` for `1 <= n <= nmax` under each coefficient family.
pub fn campaign_sigma_vs_a(
    nmax: u64,
    families: &[CoefficientFamily],
    precision: Precision,
    strategy: Strategy,
) -> Result<CampaignReport> {
    check_range("nmax", nmax, 1, MAX_SWEEP)?;
    let names: Vec<&str> = families.iter().map(|f| f.name()).collect();
    let mut report = CampaignReport::new("sigma-vs-a", precision)
        .param("nmax", nmax)
        .param("families", names.join(","));
    let sig = sigma_table(nmax + 1);
    let h = harmonic_values(nmax, precision.with_extra(10));
    let ns: Vec<u64> = (1..=nmax).collect();
    for &family in families {
        let rows = exec::map(strategy, &ns, |&n| -> Result<Record> {
            let a = a_series_at(&h[n as usize - 1], family, precision)?.value;
            let s = ErrorBounded::exact(HpReal::from_u64(sig[n as usize], precision));
            let verdict = Verdict::from_tri(s.le(&a));
            Ok(Record::new(format!("n={n} family={}", family.name()), verdict)
                .with("n", n)
                .with("sigma", sig[n as usize])
                .with("a", a.value().to_sig(20))
                .with("a_error", a.abs_error().to_sig(3))
                .margin(relative_margin(s.value(), a.value())))
        });
        for r in rows {
            report.push(r?);
        }
    }
    Ok(report.finish())
}

// Grid points k / 10 for k in lo..=hi.
fn grid(lo: u32, hi: u32, precision: Precision) -> Vec<HpReal> {
    (lo..=hi)
        .map(|k| HpReal::from_i64(i64::from(k), precision).div_i64(10))
        .collect()
}

struct GridOutcome {
    points: usize,
    verdict: Verdict,
    worst: Option<(String, f64)>,
}

fn fold_grid(outcomes: Vec<(String, Tri, f64)>) -> GridOutcome {
    let points = outcomes.len();
    let mut verdict = Verdict::Pass;
    let mut worst: Option<(String, f64)> = None;
    for (label, tri, margin) in outcomes {
        match (tri, verdict) {
            (Tri::Violated, _) => verdict = Verdict::Fail,
            (Tri::Undecided, Verdict::Pass) => verdict = Verdict::Indeterminate,
            _ => {}
        }
        if worst.as_ref().map_or(true, |(_, w)| margin < *w) {
            worst = Some((label, margin));
        }
    }
    GridOutcome { points, verdict, worst }
}

fn grid_record(name: &str, outcome: GridOutcome) -> Record {
    let mut r = Record::new(name, outcome.verdict).with("points", outcome.points);
    if let Some((label, m)) = outcome.worst {
        r = r.with("worst_point", label).margin(m);
    }
    r
}

// A value accurate to about 10^(5-P) relative, as an interval.
fn loose(value: HpReal, precision: Precision) -> ErrorBounded {
    let err = value.abs() * HpReal::pow10(5 - precision.decimal_digits() as i32, precision);
    ErrorBounded::new(value, err)
}

/// `e^x E_1(x) <= 1/x` for `x = 0.1, 0.2, ..., 50`.
/// Failure points that the lower family is known to have.
pub const LOWER_FAMILY_FAILURES: [u64; 4] = [1, 2, 4, 6];

/// Runs the lower-family sweep and passes when its failure set contains
/// [`LOWER_FAMILY_FAILURES`] with nothing indeterminate.
pub fn lower_family_record(nmax: u64, precision: Precision, strategy: Strategy) -> Result<Record> {
    let sweep = campaign_sigma_vs_a(nmax, &[CoefficientFamily::Lower], precision, strategy)?;
    let failed: Vec<u64> = sweep
        .records(Verdict::Fail)
        .filter_map(|r| r.values.get("n").and_then(|n| n.parse().ok()))
        .collect();
    let ok = sweep.summary.indeterminate == 0 && LOWER_FAMILY_FAILURES.iter().all(|n| failed.contains(n));
    let listed: Vec<String> = failed.iter().map(u64::to_string).collect();
    Ok(
        Record::new(format!("lower family fails for n <= {nmax}"), Verdict::from_bool(ok))
            .with("failures", listed.join(" "))
            .with("indeterminate", sweep.summary.indeterminate),
    )
}

pub fn lemma_e1_grid(precision: Precision, strategy: Strategy) -> Result<Record> {
    let xs = grid(1, 500, precision);
    let outcomes = exec::map(strategy, &xs, |x| -> Result<(String, Tri, f64)> {
        let lhs = loose(x.exp() * exp_integral_e1(x, precision)?, precision);
        let rhs = ErrorBounded::exact(x.recip());
        Ok((
            format!("x={}", x.to_fixed(1)),
            lhs.le(&rhs),
            relative_margin(lhs.value(), rhs.value()),
        ))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(grid_record("lemma e^x E1(x) <= 1/x", fold_grid(outcomes)))
}

/// `Ei(x) <= 2 e^x / x` for `x = 2.1, 2.2, ..., 50`.
pub fn lemma_ei_grid(precision: Precision, strategy: Strategy) -> Result<Record> {
    let xs = grid(21, 500, precision);
    let outcomes = exec::map(strategy, &xs, |x| -> Result<(String, Tri, f64)> {
        let lhs = loose(exp_integral_ei(x, precision)?, precision);
        let rhs = loose((x.exp() / x).mul_i64(2), precision);
        Ok((
            format!("x={}", x.to_fixed(1)),
            lhs.le(&rhs),
            relative_margin(lhs.value(), rhs.value()),
        ))
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(grid_record("lemma Ei(x) <= 2e^x/x (x > 2)", fold_grid(outcomes)))
}

/// `log n < H_n < log(n+1) + gamma` for `1 <= n <= nmax`.
pub fn lemma_harmonic_bounds(nmax: u64, precision: Precision) -> Result<Record> {
    check_range("nmax", nmax, 1, MAX_SWEEP)?;
    let work = precision.with_extra(10);
    let gamma = HpReal::euler_gamma(work);
    let mut outcomes = Vec::with_capacity(nmax as usize);
    let mut log_next = HpReal::zero(work);
    for (n, h) in HarmonicSweep::new(work).take(nmax as usize) {
        let log_n = log_next;
        log_next = HpReal::from_u64(n + 1, work).ln();
        let lower = loose(log_n, work);
        let upper = loose(&log_next + &gamma, work);
        let below = lower.lt(&h);
        let above = h.lt(&upper);
        let tri = match (below, above) {
            (Tri::Violated, _) | (_, Tri::Violated) => Tri::Violated,
            (Tri::Holds, Tri::Holds) => Tri::Holds,
            _ => Tri::Undecided,
        };
        let m = relative_margin(lower.value(), h.value()).min(relative_margin(h.value(), upper.value()));
        outcomes.push((format!("n={n}"), tri, m));
    }
    Ok(grid_record("lemma log n < H_n < log(n+1) + gamma", fold_grid(outcomes)))
}

/// `A_upper(n) <= e^(H_n) log H_n + 2 e^gamma (n+1) / log n` for
/// `2 <= n <= nmax`, plus the three lemma grids behind it.
pub fn campaign_appendix(nmax: u64, precision: Precision, strategy: Strategy) -> Result<CampaignReport> {
    check_range("nmax", nmax, 2, MAX_SWEEP)?;
    let mut report = CampaignReport::new("appendix", precision).param("nmax", nmax);
    let work = precision.with_extra(10);
    let h = harmonic_values(nmax, work);
    let e_gamma = HpReal::euler_gamma(work).exp();
    let ns: Vec<u64> = (2..=nmax).collect();
    let rows = exec::map(strategy, &ns, |&n| -> Result<Record> {
        let hn = &h[n as usize - 1];
        let lhs = a_series_at(hn, CoefficientFamily::Upper, precision)?.value;
        let x = hn.value().with_precision(work);
        let first = x.exp() * x.ln();
        let second = (&e_gamma * HpReal::from_u64(n + 1, work)).mul_i64(2) / HpReal::from_u64(n, work).ln();
        let rhs = &first + &second;
        // d/dH (e^H log H) = e^H (log H + 1/H), with H >= 1.5
        let h_up = hn.upper().with_precision(work);
        let slope = h_up.exp() * (h_up.ln() + hn.lower().with_precision(work).recip());
        let err = slope * hn.abs_error() + rhs.ulp_bound().mul_i64(16);
        let rhs = ErrorBounded::new(rhs.with_precision(precision), err.with_precision(precision));
        Ok(Record::new(format!("n={n}"), Verdict::from_tri(lhs.le(&rhs)))
            .with("lhs", lhs.value().to_sig(15))
            .with("rhs", rhs.value().to_sig(15))
            .margin(relative_margin(lhs.value(), rhs.value())))
    });
    for r in rows {
        report.push(r?);
    }
    report.push(lemma_e1_grid(precision, strategy)?);
    report.push(lemma_ei_grid(precision, strategy)?);
    report.push(lemma_harmonic_bounds(MAX_SWEEP, precision)?);
    Ok(report.finish())
}

/// Robin's inequality `sigma(n) < e^gamma n log log n` over the colossally
/// abundant numbers above 5040, and the Lagarias inequality
/// `sigma(n) <= H_n + e^(H_n) log H_n` for `n <= nmax` and over the chain.
pub fn campaign_robin_lagarias(
    chain_len: usize,
    nmax: u64,
    precision: Precision,
    strategy: Strategy,
) -> Result<CampaignReport> {
    check_range("nmax", nmax, 1, MAX_SWEEP)?;
    let mut report = CampaignReport::new("robin-lagarias", precision)
        .param("chain", chain_len)
        .param("nmax", nmax);
    let work = precision.with_extra(10);
    let chain = ca_chain(chain_len)?.entries;
    let e_gamma = ErrorBounded::exact(HpReal::euler_gamma(work).exp())
        .widen(&HpReal::pow10(-(work.decimal_digits() as i32), work));
    let one = rug::Rational::from(1);

    let mut ratios = Vec::new();
    for n in &chain {
        let value = n.value();
        let s = sigma(n);
        if value > 5040 {
            let bound = e_gamma.mul(&nloglogn_target(n, &one, work)?);
            let lhs = ErrorBounded::from_integer(&s, work);
            report.push(
                Record::new(format!("robin n={value}"), Verdict::from_tri(lhs.lt(&bound)))
                    .with("sigma", &s)
                    .margin(relative_margin(lhs.value(), bound.value())),
            );
            ratios.push((value.clone(), (lhs.value() / bound.value()).to_f64()));
        }
        let h = harmonic_hp(&value, work)?;
        report.push(lagarias_record(&format!("lagarias ca n={value}"), &s, &h, precision));
    }

    let sig = sigma_table(nmax + 1);
    let hs = harmonic_values(nmax, work);
    let ns: Vec<u64> = (1..=nmax).collect();
    let rows = exec::map(strategy, &ns, |&n| {
        let s = Integer::from(sig[n as usize]);
        if n == 1 {
            // H_1 = 1 and log 1 = 0, so both sides equal 1 exactly
            return Record::new("lagarias n=1", Verdict::Pass).with("sigma", 1).margin(0.0);
        }
        lagarias_record(&format!("lagarias n={n}"), &s, &hs[n as usize - 1], precision)
    });
    for r in rows {
        report.push(r);
    }

    // sigma(n) / (e^gamma n log log n) along the chain; not monotone in general
    let drops: Vec<String> = ratios
        .windows(2)
        .filter(|w| w[1].1 < w[0].1)
        .map(|w| w[1].0.to_string())
        .collect();
    report.diagnose(
        Diagnostic::new("robin ratio along the chain")
            .with("entries", ratios.len())
            .with("decreases", drops.len())
            .with("decreases_at", drops.join(" ")),
    );
    Ok(report.finish())
}

fn lagarias_record(label: &str, s: &Integer, h: &ErrorBounded, precision: Precision) -> Record {
    let work = h.value().bits();
    let x = h.value().clone();
    let rhs = &x + &(x.exp() * x.ln());
    let h_up = h.upper();
    // d/dH (H + e^H log H) = 1 + e^H (log H + 1/H)
    let slope = HpReal::from_float(rug::Float::with_val(work, 1)) + h_up.exp() * (h_up.ln().abs() + h.lower().recip());
    let err = slope * h.abs_error() + rhs.ulp_bound().mul_i64(16);
    let rhs = ErrorBounded::new(rhs, err);
    let lhs = ErrorBounded::exact(HpReal::from_float(rug::Float::with_val(work, s)));
    Record::new(label, Verdict::from_tri(lhs.le(&rhs)))
        .with("sigma", s)
        .with("rhs", rhs.value().with_precision(precision).to_sig(15))
        .margin(relative_margin(lhs.value(), rhs.value()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p40() -> Precision {
        Precision::digits(40)
    }

    #[test]
    fn lower_family_fails_small_n() {
        let r = campaign_sigma_vs_a(60, &CoefficientFamily::ALL, p40(), Strategy::Parallel).unwrap();
        let failed: Vec<&str> = r.records(Verdict::Fail).map(|x| x.item.as_str()).collect();
        for n in [1, 2, 4, 6, 12, 24, 60] {
            assert!(failed.contains(&format!("n={n} family=lower").as_str()), "{n}");
        }
        assert!(failed.iter().all(|f| f.ends_with("lower")), "{failed:?}");
        assert_eq!(r.summary.indeterminate, 0);
        let rec = lower_family_record(60, p40(), Strategy::Parallel).unwrap();
        assert_eq!(rec.verdict, Verdict::Pass);
        assert_eq!(rec.values["failures"], "1 2 4 6 12 24 60");
    }

    #[test]
    fn appendix_small() {
        let r = campaign_appendix(50, p40(), Strategy::Parallel).unwrap();
        assert_eq!(r.summary.fail, 0);
        assert_eq!(r.summary.indeterminate, 0);
        let two = &r.items[0];
        assert_eq!(two.item, "n=2");
        let lhs: f64 = two.values["lhs"].parse().unwrap();
        let rhs: f64 = two.values["rhs"].parse().unwrap();
        assert!((lhs - 4.15).abs() < 0.01 && (rhs - 17.2).abs() < 0.1, "{lhs} {rhs}");
    }

    #[test]
    fn robin_and_lagarias_hold() {
        let r = campaign_robin_lagarias(20, 200, p40(), Strategy::Parallel).unwrap();
        assert_eq!(r.summary.fail, 0);
        assert_eq!(r.summary.indeterminate, 0);
        assert_eq!(
            r.records(Verdict::Pass).filter(|x| x.item.starts_with("robin")).count(),
            12
        );
    }

    #[test]
    fn harmonic_lemma() {
        let r = lemma_harmonic_bounds(1000, p40()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.values["points"], "1000");
    }
}
