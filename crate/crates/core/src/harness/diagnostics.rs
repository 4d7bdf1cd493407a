//! Exploratory quantities that are reported but never asserted.

use super::report::{CampaignReport, Diagnostic};
use crate::error::Result;
use crate::exec::{self, Strategy};
use crate::numeric::{render_significant, HpReal, Linear, Precision};
use crate::series::{a1, atilde_det, e_moment, r3};

/// `R_3(n) / A~_3(n)` for `2 <= n <= nmax`.
pub fn r3_ratios(nmax: u64, precision: Precision, strategy: Strategy) -> Result<Vec<(u64, HpReal)>> {
    exec::map_range(strategy, 2, nmax + 1, |n| -> Result<(u64, HpReal)> {
        let r = r3(n, &precision)?;
        let a = atilde_det(3, n, &precision)?;
        Ok((n, r.evaluate(precision) / a.evaluate(precision)))
    })
    .into_iter()
    .collect()
}

/// Sample points of the growth and trend diagnostics.
pub const TREND_POINTS: [u64; 3] = [100, 1000, 10_000];

fn log_loglog(n: u64, precision: Precision) -> (HpReal, HpReal) {
    let ln = HpReal::from_u64(n, precision).ln();
    let lnln = ln.ln();
    (ln, lnln)
}

/// `E_1(n) - log n loglog n - (gamma - 1) loglog n` at the trend points.
pub fn e1_growth(precision: Precision, strategy: Strategy) -> Result<Diagnostic> {
    let values = exec::map(strategy, &TREND_POINTS, |&n| -> Result<(u64, HpReal)> {
        let e1 = e_moment(1, n, &precision)?.evaluate(precision);
        let (ln, lnln) = log_loglog(n, precision);
        let gamma = HpReal::euler_gamma(precision);
        let rest = e1 - &ln * &lnln - (gamma - HpReal::one(precision)) * &lnln;
        Ok((n, rest))
    });
    let mut d = Diagnostic::new("E_1 growth remainder");
    for v in values {
        let (n, rest) = v?;
        d = d.with(&format!("n={n}"), render_significant(&rest, 12));
    }
    Ok(d)
}

/// `A~_r(n) / (n loglog n)` for `r = 1, 2` at the trend points, with the
/// limits for comparison.
pub fn limit_trend(precision: Precision, strategy: Strategy) -> Result<Vec<Diagnostic>> {
    let mut out = Vec::new();
    for r in [1usize, 2] {
        let values = exec::map(strategy, &TREND_POINTS, |&n| -> Result<(u64, HpReal)> {
            let a = if r == 1 {
                a1(n, &precision)?
            } else {
                atilde_det(r, n, &precision)?
            };
            let (_, lnln) = log_loglog(n, precision);
            Ok((n, a.evaluate(precision) / (HpReal::from_u64(n, precision) * lnln)))
        });
        let limit = crate::limits::rho(r as u32, precision)?;
        let mut d = Diagnostic::new(format!("A~_{r}(n) / (n loglog n)")).with("limit", render_significant(&limit, 12));
        let mut prev: Option<HpReal> = None;
        let mut monotone = true;
        for v in values {
            let (n, ratio) = v?;
            let gap = (&ratio - &limit).abs();
            if let Some(p) = &prev {
                monotone &= gap.as_float() < p.as_float();
            }
            d = d.with(&format!("n={n}"), render_significant(&ratio, 12));
            prev = Some(gap);
        }
        out.push(d.with("approaching", monotone));
    }
    Ok(out)
}

pub fn campaign_diagnostics(r3_nmax: u64, precision: Precision, strategy: Strategy) -> Result<CampaignReport> {
    let mut report = CampaignReport::new("diagnostics", precision).param("r3_nmax", r3_nmax);
    let mut d = Diagnostic::new("R_3(n) / A~_3(n)");
    for (n, ratio) in r3_ratios(r3_nmax, precision, strategy)? {
        d = d.with(&format!("n={n}"), render_significant(&ratio, 12));
    }
    report.diagnose(d);
    report.diagnose(e1_growth(precision, strategy)?);
    for t in limit_trend(precision, strategy)? {
        report.diagnose(t);
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r3_ratio_is_positive() {
        let p = Precision::digits(30);
        let ratios = r3_ratios(10, p, Strategy::Parallel).unwrap();
        assert_eq!(ratios.len(), 9);
        for (n, r) in ratios {
            assert!(r.is_positive() && r.is_finite(), "n={n}: {r}");
        }
    }
}
