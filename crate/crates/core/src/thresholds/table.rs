use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use super::prefix::{d_threshold, pair_prefix_sums, Convention, ThresholdResult};
use crate::divisors::{ca_chain, FactoredInteger};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::numeric::{render_significant, ErrorBounded, HpReal, Precision};
use crate::series::{a1, atilde_det, MAX_R};

/// Largest `n` for which [`TargetMode::ExactA`] targets are computed.
pub const EXACT_TARGET_MAX_N: u64 = 10_000;

/// How the threshold targets are formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetMode {
    /// `factor * n log log n` per column.
    #[default]
    #[serde(rename = "nloglogn")]
    NLogLogN,
    /// Column `c` uses `A_1(n) + A~_2(n) + ... + A~_c(n)`; the factors only
    /// fix the number of columns.
    #[serde(rename = "exactA")]
    ExactA,
}

impl fmt::Display for TargetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TargetMode::NLogLogN => "nloglogn",
            TargetMode::ExactA => "exactA",
        })
    }
}

impl FromStr for TargetMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nloglogn" => Ok(TargetMode::NLogLogN),
            "exacta" => Ok(TargetMode::ExactA),
            _ => Err(Error::Parse(format!("unknown target {s:?}"))),
        }
    }
}

/// Parses `1`, `1.5`, `3/2` or `-0.25` into an exact rational.
pub fn parse_factor(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("bad factor {text:?}"));
    if let Some((num, den)) = t.split_once('/') {
        let num: Integer = num.trim().parse().map_err(|_| bad())?;
        let den: Integer = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::from((num, den)));
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: Integer = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
    let value = Rational::from((digits, scale));
    Ok(if negative { -value } else { value })
}

/// `log n = sum a_p log p`, from the factorization.
pub fn log_of_factored(n: &FactoredInteger, precision: Precision) -> HpReal {
    let work = precision.with_extra(10);
    let mut acc = HpReal::zero(work);
    for (p, a) in n.factors() {
        acc = acc + HpReal::from_u64(p, work).ln().mul_i64(i64::from(a));
    }
    acc.with_precision(precision)
}

/// `gamma * log n`.
pub fn gamma_log(n: &FactoredInteger, precision: Precision) -> HpReal {
    let work = precision.with_extra(10);
    (HpReal::euler_gamma(work) * log_of_factored(n, work)).with_precision(precision)
}

/// `factor * n * log log n` with an error bound.
pub fn nloglogn_target(n: &FactoredInteger, factor: &Rational, precision: Precision) -> Result<ErrorBounded> {
    if n.is_one() {
        return Err(Error::Domain("log log 1 is undefined".into()));
    }
    let work = precision.with_extra(10);
    let terms = n.factors().count() as i64;
    let log_n = log_of_factored(n, work);
    // each log p and each partial sum rounds once
    let err_log = log_n.ulp_bound().mul_i64(2 * terms + 2);
    let loglog = log_n.ln();
    let err_loglog = (&err_log / &log_n).mul_i64(2) + loglog.ulp_bound();
    let scale = HpReal::from_integer(&n.value(), work) * HpReal::from_rational(factor, work);
    let value = &scale * &loglog;
    let err = scale.abs() * err_loglog + value.ulp_bound().mul_i64(4);
    let value_p = value.with_precision(precision);
    let err = (err + value_p.ulp_bound()).with_precision(precision);
    Ok(ErrorBounded::new(value_p, err))
}

/// `A_1(n), A_1(n) + A~_2(n), ...` for `columns` columns.
///
/// The error bound is a relative `10^(5-P)`, the agreement level of the
/// determinant and moment routes.
pub fn exact_a_target(n: u64, columns: usize, precision: Precision) -> Result<Vec<ErrorBounded>> {
    crate::error::check_range("n", n, 2, EXACT_TARGET_MAX_N)?;
    crate::error::check_range("columns", columns, 1, MAX_R)?;
    let work = precision.with_extra(10);
    let rel = HpReal::pow10(5 - precision.decimal_digits() as i32, precision);
    let mut acc = a1(n, &work)?;
    let mut out = Vec::with_capacity(columns);
    for c in 1..=columns {
        if c >= 2 {
            acc = acc + atilde_det(c, n, &work)?;
        }
        let value = acc.with_precision(precision);
        let err = value.abs() * &rel;
        out.push(ErrorBounded::new(value, err));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct DRow {
    pub n: FactoredInteger,
    pub gamma_log_n: HpReal,
    /// One result per column.
    pub thresholds: Vec<ThresholdResult>,
}

/// Threshold columns over the colossally abundant chain.
#[derive(Clone, Debug)]
pub struct DTable {
    pub rows: Vec<DRow>,
    pub factors: Vec<Rational>,
    pub convention: Convention,
    pub target: TargetMode,
    pub precision: Precision,
}

pub fn d_table(
    count: usize,
    factors: &[Rational],
    convention: Convention,
    target: TargetMode,
    precision: Precision,
    strategy: Strategy,
) -> Result<DTable> {
    crate::error::check_range("columns", factors.len(), 1, MAX_R)?;
    let chain = ca_chain(count)?.entries;
    if target == TargetMode::ExactA {
        if let Some(n) = chain.iter().find(|n| n.value() > EXACT_TARGET_MAX_N) {
            return Err(Error::Range {
                what: "n",
                value: n.value().to_string(),
                range: format!("[2, {EXACT_TARGET_MAX_N}] for exact targets"),
            });
        }
    }
    let rows = exec::map(strategy, &chain, |n| -> Result<DRow> {
        let table = pair_prefix_sums(n)?;
        let targets = match target {
            TargetMode::NLogLogN => factors
                .iter()
                .map(|f| nloglogn_target(n, f, precision))
                .collect::<Result<Vec<_>>>()?,
            TargetMode::ExactA => {
                let small = n.value().to_u64().expect("checked above");
                exact_a_target(small, factors.len(), precision)?
            }
        };
        let thresholds = targets.iter().map(|t| d_threshold(&table, t, convention)).collect();
        Ok(DRow {
            n: n.clone(),
            gamma_log_n: gamma_log(n, precision),
            thresholds,
        })
    });
    Ok(DTable {
        rows: rows.into_iter().collect::<Result<_>>()?,
        factors: factors.to_vec(),
        convention,
        target,
        precision,
    })
}

/// Significant digits of the `gamma log n` column.
const GAMMA_LOG_DIGITS: u32 = 15;

impl DTable {
    fn header(&self) -> Vec<String> {
        let mut cols = vec!["n".to_string()];
        for i in 0..self.factors.len() {
            cols.push(format!("d{}", i + 1));
            if i == 0 {
                cols.push("gamma_log_n".into());
            }
        }
        cols
    }

    /// Cells in column order `n, d1, gamma_log_n, d2, ...`.
    pub fn cells(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| {
                let mut cells = vec![row.n.value().to_string()];
                for (i, t) in row.thresholds.iter().enumerate() {
                    cells.push(t.d_value.to_string());
                    if i == 0 {
                        cells.push(render_significant(&row.gamma_log_n, GAMMA_LOG_DIGITS));
                    }
                }
                cells
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for cells in self.cells() {
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Right-aligned columns.
    pub fn to_text(&self) -> String {
        let header = self.header();
        let cells = self.cells();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].len())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |row: &[String]| {
            row.iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = line(&header);
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }
}
