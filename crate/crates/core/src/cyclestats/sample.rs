use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{check_range, Result};
use crate::exec::{self, Strategy};

/// Largest `n` and trial count accepted by the sampler.
pub const MAX_SAMPLE: u64 = 10_000_000;
/// Trials drawn from one generator stream.
pub const BLOCK_TRIALS: u64 = 4096;

/// Empirical summary of sampled cycle counts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleSample {
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    /// Unbiased sample variance (0 for a single trial).
    pub variance: f64,
    pub histogram: BTreeMap<u64, u64>,
}

impl CycleSample {
    /// CSV with columns `k,count`.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("k,count\n");
        for (k, c) in &self.histogram {
            out.push_str(&format!("{k},{c}\n"));
        }
        out
    }
}

/// One draw of `C_n = sum_{i=1}^n B_i` with independent `B_i ~ Bernoulli(1/i)`.
///
/// Rather than flipping every coin, jumps straight to the next success: after
/// index `i - 1` no coin in `i..=j` succeeds with probability `(i-1)/j`, so
/// the next success sits at `max(i, ceil((i-1)/U))` for `U` uniform on (0, 1].
pub fn draw_cycle_count<R: Rng>(n: u64, rng: &mut R) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut count = 1; // B_1 = 1
    let mut i = 2u64;
    while i <= n {
        let u = 1.0 - rng.gen::<f64>();
        let jump = ((i - 1) as f64 / u).ceil();
        if jump > n as f64 {
            break;
        }
        let j = (jump as u64).max(i);
        count += 1;
        i = j + 1;
    }
    count
}

/// Samples `trials` cycle counts of `S_n`.
///
/// Trials are split into fixed blocks of [`BLOCK_TRIALS`]; block `b` uses
/// ChaCha8 seeded with `seed` on stream `b`. The result does not depend on
/// the strategy or the number of workers.
pub fn sample_cycle_count(n: u64, trials: u64, seed: u64, strategy: Strategy) -> Result<CycleSample> {
    check_range("n", n, 1, MAX_SAMPLE)?;
    check_range("trials", trials, 1, MAX_SAMPLE)?;
    let blocks = trials.div_ceil(BLOCK_TRIALS);
    let parts: Vec<BTreeMap<u64, u64>> = exec::map_range(strategy, 0, blocks, |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b);
        let count = BLOCK_TRIALS.min(trials - b * BLOCK_TRIALS);
        let mut hist = BTreeMap::new();
        for _ in 0..count {
            *hist.entry(draw_cycle_count(n, &mut rng)).or_insert(0) += 1;
        }
        hist
    });
    let mut histogram = BTreeMap::new();
    for part in parts {
        for (k, c) in part {
            *histogram.entry(k).or_insert(0u64) += c;
        }
    }
    let (mut s1, mut s2) = (0u128, 0u128);
    for (&k, &c) in &histogram {
        s1 += k as u128 * c as u128;
        s2 += (k as u128) * (k as u128) * c as u128;
    }
    let t = trials as f64;
    let mean = s1 as f64 / t;
    let variance = if trials > 1 {
        // sum (k - mean)^2 = s2 - s1^2 / t
        let centred = s2 as f64 - (s1 as f64) * (s1 as f64) / t;
        (centred / (t - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(CycleSample {
        n,
        trials,
        seed,
        mean,
        variance,
        histogram,
    })
}
