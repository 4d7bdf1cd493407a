use crate::error::{check_range, Error, Result};
use crate::numeric::{Mode, Scalar};

/// Values `e_0(n), ..., e_mmax(n)` of the elementary symmetric polynomials at
/// `x_i = 1/i`, `i = 1..n`.
///
/// In high-precision mode entries past the mode's truncation index of `H_n`
/// are stored as zero; each of them is below `H_n^m / m! < 10^(-2P)`.
#[derive(Clone, Debug)]
pub struct ElementaryTable<M: Mode> {
    n: u64,
    values: Vec<M::Value>,
    truncated_at: Option<usize>,
    mode: M,
}

impl<M: Mode> ElementaryTable<M> {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mmax(&self) -> usize {
        self.values.len() - 1
    }

    pub fn mode(&self) -> &M {
        &self.mode
    }

    /// First index stored as zero because of truncation, if any.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    /// `e_m(n)`.
    pub fn get(&self, m: usize) -> Result<&M::Value> {
        self.values.get(m).ok_or_else(|| Error::Range {
            what: "m",
            value: m.to_string(),
            range: format!("[0, {}]", self.mmax()),
        })
    }

    /// `e_m(n)` with `e_m = 0` for negative `m`. Panics past `mmax`.
    pub fn e(&self, m: i64) -> M::Value {
        if m < 0 {
            self.mode.zero()
        } else {
            self.values[m as usize].clone()
        }
    }

    pub fn values(&self) -> &[M::Value] {
        &self.values
    }

    /// Checks that index `m` is available.
    pub(crate) fn require(&self, m: usize) -> Result<()> {
        check_range("index", m, 0, self.mmax())
    }
}

fn check_n<M: Mode>(n: u64) -> Result<()> {
    check_range("n", n, 0, M::MAX_N as u64)
}

fn cutoff<M: Mode>(n: u64, mode: &M) -> Option<usize> {
    // ln(n) + 1 bounds H_n
    let h = if n == 0 { 0.0 } else { (n as f64).ln() + 1.0 };
    mode.truncation_index(h)
}

/// Builds the table by `e_m(i) = e_m(i-1) + e_{m-1}(i-1) / i`.
pub fn elementary_table<M: Mode>(n: u64, mmax: usize, mode: &M) -> Result<ElementaryTable<M>> {
    check_n::<M>(n)?;
    let mut sweep = ElementarySweep::with_horizon(mmax, n, mode);
    let mut table = sweep.next().expect("sweep is infinite");
    while table.n < n {
        table = sweep.next().expect("sweep is infinite");
    }
    Ok(table)
}

/// Tables for `n = 0, 1, 2, ...` built incrementally.
#[derive(Clone, Debug)]
pub struct ElementarySweep<M: Mode> {
    next_n: u64,
    horizon: u64,
    values: Vec<M::Value>,
    truncated_at: Option<usize>,
    mode: M,
}

impl<M: Mode> ElementarySweep<M> {
    /// Sweeps up to the mode's `MAX_N`.
    pub fn new(mmax: usize, mode: &M) -> Self {
        Self::with_horizon(mmax, M::MAX_N as u64, mode)
    }

    /// Sweeps up to `horizon`; the truncation index is fixed from it.
    pub fn with_horizon(mmax: usize, horizon: u64, mode: &M) -> Self {
        let horizon = horizon.min(M::MAX_N as u64);
        let mut values = vec![mode.zero(); mmax + 1];
        values[0] = mode.one();
        let truncated_at = cutoff::<M>(horizon, mode).filter(|&t| t <= mmax);
        ElementarySweep {
            next_n: 0,
            horizon,
            values,
            truncated_at,
            mode: *mode,
        }
    }
}

impl<M: Mode> Iterator for ElementarySweep<M> {
    type Item = ElementaryTable<M>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next_n;
        if n > self.horizon {
            return None;
        }
        if n > 0 {
            let top = (n as usize)
                .min(self.mmax())
                .min(self.truncated_at.unwrap_or(usize::MAX) - 1);
            for m in (1..=top).rev() {
                let add = self.values[m - 1].div_int(n as i64);
                self.values[m] = self.values[m].add(&add);
            }
        }
        self.next_n += 1;
        Some(ElementaryTable {
            n,
            values: self.values.clone(),
            truncated_at: self.truncated_at,
            mode: self.mode,
        })
    }
}

impl<M: Mode> ElementarySweep<M> {
    fn mmax(&self) -> usize {
        self.values.len() - 1
    }
}

/// `p_k(n) = sum_{i=1}^n i^(-k)`.
pub fn power_sum<M: Mode>(n: u64, k: u32, mode: &M) -> Result<M::Value> {
    mode.power_sum(n, k)
}

/// The points `x_i = 1/i`, `i = 1..n`.
pub fn harmonic_points<M: Mode>(n: usize, mode: &M) -> Vec<M::Value> {
    (1..=n as i64).map(|i| mode.ratio(1, i)).collect()
}
