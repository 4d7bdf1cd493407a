//! Published reference tables shipped in `data/`.

use crate::error::{Error, Result};

const RHO_TABLE: &str = include_str!("../../data/rho_table.txt");
const CA_TABLE: &str = include_str!("../../data/ca_table.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRho {
    pub r: u32,
    pub rho: String,
    pub partial: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCaRow {
    pub n: String,
    pub d1: u64,
    pub gamma_log_n: String,
    pub d2: u64,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        (!line.is_empty() && !line.starts_with('#')).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn field<T: std::str::FromStr>(cols: &[&str], i: usize, line: usize) -> Result<T> {
    cols.get(i)
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| Error::Parse(format!("reference table line {line}, column {}", i + 1)))
}

pub fn parse_rho_table(text: &str) -> Result<Vec<GoldenRho>> {
    data_lines(text)
        .map(|(line, cols)| {
            if cols.len() != 3 {
                return Err(Error::Parse(format!("reference table line {line}: expected 3 columns")));
            }
            Ok(GoldenRho {
                r: field(&cols, 0, line)?,
                rho: cols[1].into(),
                partial: cols[2].into(),
            })
        })
        .collect()
}

pub fn parse_ca_table(text: &str) -> Result<Vec<GoldenCaRow>> {
    data_lines(text)
        .map(|(line, cols)| {
            if cols.len() != 4 {
                return Err(Error::Parse(format!("reference table line {line}: expected 4 columns")));
            }
            Ok(GoldenCaRow {
                n: cols[0].into(),
                d1: field(&cols, 1, line)?,
                gamma_log_n: cols[2].into(),
                d2: field(&cols, 3, line)?,
            })
        })
        .collect()
}

/// The published `(r, rho_r, S_r)` rows.
pub fn rho_reference() -> Vec<GoldenRho> {
    parse_rho_table(RHO_TABLE).expect("bundled table parses")
}

/// The published `(n, d1, gamma log n, d2)` rows.
pub fn ca_reference() -> Vec<GoldenCaRow> {
    parse_ca_table(CA_TABLE).expect("bundled table parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables() {
        let rho = rho_reference();
        assert_eq!(rho.len(), 10);
        assert_eq!(rho[9].partial, "1.635904170848599");
        let ca = ca_reference();
        assert_eq!(ca.len(), 30);
        assert_eq!(
            ca[7],
            GoldenCaRow {
                n: "5040".into(),
                d1: 5,
                gamma_log_n: "4.92085668342023".into(),
                d2: 16
            }
        );
        assert_eq!(ca[29].n, "35468006523084668025340848000");
    }

    #[test]
    fn malformed_rows() {
        assert!(parse_rho_table("1 2").is_err());
        assert!(parse_ca_table("# c\n2 x 0.4 0").is_err());
        assert!(parse_ca_table("\n# only comments\n").unwrap().is_empty());
    }
}
