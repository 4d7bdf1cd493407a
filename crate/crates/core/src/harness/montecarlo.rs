//! Sampled cycle counts against the exact mean and variance.

use super::report::{CampaignReport, Record, Verdict};
use crate::cyclestats::{cumulant, sample_cycle_count, CycleSample};
use crate::error::Result;
use crate::exec::{self, Strategy};
use crate::numeric::{Exact, Precision};

/// Width of the acceptance band in standard errors.
pub const SIGMA_BAND: f64 = 4.0;

/// `|mean - H_n| <= 4 sqrt(kappa_2 / trials)` for one sample.
pub fn mean_record(sample: &CycleSample) -> Result<Record> {
    let h = cumulant(sample.n, 1, &Exact)?.to_f64();
    let kappa2 = cumulant(sample.n, 2, &Exact)?.to_f64();
    let band = SIGMA_BAND * (kappa2 / sample.trials as f64).sqrt();
    let gap = (sample.mean - h).abs();
    Ok(Record::new(
        format!("mean n={} trials={}", sample.n, sample.trials),
        Verdict::from_bool(gap <= band),
    )
    .with("mean", sample.mean)
    .with("harmonic", h)
    .with("band", band)
    .with("variance", sample.variance)
    .with("kappa2", kappa2)
    .margin((band - gap) / band))
}

/// Samples `n` and checks the mean, then resamples sequentially and with one
/// and several workers and checks that all summaries are identical.
pub fn campaign_montecarlo(n: u64, trials: u64, seed: u64, strategy: Strategy) -> Result<CampaignReport> {
    let mut report = CampaignReport::new("montecarlo", Precision::digits(17))
        .param("n", n)
        .param("trials", trials)
        .param("seed", seed);
    let sample = sample_cycle_count(n, trials, seed, strategy)?;
    report.push(mean_record(&sample)?);

    let sequential = sample_cycle_count(n, trials, seed, Strategy::Sequential)?;
    let one = exec::with_workers(1, || sample_cycle_count(n, trials, seed, Strategy::Parallel))?;
    let four = exec::with_workers(4, || sample_cycle_count(n, trials, seed, Strategy::Parallel))?;
    let same = [&sequential, &one, &four].iter().all(|s| **s == sample);
    report.push(
        Record::new(format!("reproducible n={n} seed={seed}"), Verdict::from_bool(same))
            .with("runs", 4)
            .with("workers", "sequential,1,4,default"),
    );
    Ok(report.finish())
}
