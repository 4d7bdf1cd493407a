use rug::Integer;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::zeta::zeta_int;
use crate::error::{check_range, Error, Result};
use crate::numeric::{render_decimal, HpReal, Precision};

/// Largest `r` tabulated by [`rho_table`].
pub const MAX_RHO_R: u32 = 50;

/// `rho_r`: the limit of `A~_r(n) / (n log log n)`.
///
/// `rho_1 = 1`; for `r >= 2`,
/// `rho_r = ((-1)^r + sum_{j=3}^r (-1)^(r+j) zeta(j-1)) / r!`.
pub fn rho(r: u32, precision: Precision) -> Result<HpReal> {
    if r == 0 {
        return Err(Error::Domain("rho_r needs r >= 1".into()));
    }
    if r == 1 {
        return Ok(HpReal::one(precision));
    }
    // the alternating sum loses up to log10(r) digits to cancellation
    let work = precision.with_extra(10 + r.ilog10());
    let sign = |e: u32| if e % 2 == 0 { 1 } else { -1 };
    let mut acc = HpReal::from_i64(sign(r), work);
    for j in 3..=r {
        let z = zeta_int(j - 1, work)?;
        acc = acc + z.mul_i64(sign(r + j));
    }
    let fact = HpReal::from_integer(&Integer::from(Integer::factorial(r)), work);
    Ok((acc / fact).with_precision(precision))
}

#[derive(Clone, Debug)]
pub struct RhoRow {
    pub r: u32,
    pub rho: HpReal,
    /// `S_r = rho_1 + ... + rho_r`.
    pub partial: HpReal,
}

#[derive(Clone, Debug)]
pub struct RhoTable {
    pub rows: Vec<RhoRow>,
    pub precision: Precision,
}

pub fn rho_table(rmax: u32, precision: Precision) -> Result<RhoTable> {
    check_range("rmax", rmax, 1, MAX_RHO_R)?;
    let work = precision.with_extra(5);
    let values = crate::exec::map_range(crate::exec::Strategy::default(), 1, u64::from(rmax) + 1, |r| {
        rho(r as u32, work)
    });
    let mut rows = Vec::with_capacity(rmax as usize);
    let mut partial = HpReal::zero(work);
    for (i, value) in values.into_iter().enumerate() {
        let value = value?;
        partial = &partial + &value;
        rows.push(RhoRow {
            r: i as u32 + 1,
            rho: value.with_precision(precision),
            partial: partial.with_precision(precision),
        });
    }
    Ok(RhoTable { rows, precision })
}

/// Decimal places used for exported tables.
const TABLE_DECIMALS: u32 = 15;

impl RhoTable {
    pub fn row(&self, r: u32) -> Option<&RhoRow> {
        self.rows.get(r.checked_sub(1)? as usize)
    }

    /// `(r, rho_r, S_r)` rendered as in the exported tables.
    pub fn rendered(&self) -> Vec<(u32, String, String)> {
        self.rows
            .iter()
            .map(|row| {
                (
                    row.r,
                    render_decimal(&row.rho, TABLE_DECIMALS),
                    render_decimal(&row.partial, TABLE_DECIMALS),
                )
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,rho,s\n");
        for (r, rho, s) in self.rendered() {
            out.push_str(&format!("{r},{rho},{s}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let rows = self.rendered();
        let w_rho = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(5);
        let w_s = rows.iter().map(|r| r.2.len()).max().unwrap_or(0).max(3);
        let mut out = format!("{:>3}  {:<w_rho$}  {:<w_s$}\n", "r", "rho_r", "S_r");
        for (r, rho, s) in rows {
            out.push_str(&format!("{r:>3}  {rho:<w_rho$}  {s:<w_s$}\n"));
        }
        out
    }
}

impl Serialize for RhoTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Row {
            r: u32,
            rho: String,
            s: String,
        }
        let rows: Vec<Row> = self
            .rendered()
            .into_iter()
            .map(|(r, rho, s)| Row { r, rho, s })
            .collect();
        let mut st = serializer.serialize_struct("RhoTable", 2)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Tolerance;
    use rug::Float;

    fn p40() -> Precision {
        Precision::digits(40)
    }

    #[test]
    fn small_rows() {
        let p = p40();
        assert_eq!(render_decimal(&rho(1, p).unwrap(), 15), "1");
        assert_eq!(render_decimal(&rho(2, p).unwrap(), 15), "0.5");
        assert_eq!(render_decimal(&rho(3, p).unwrap(), 15), "0.107489011141371");
        assert_eq!(render_decimal(&rho(5, p).unwrap(), 15), "0.004376669978331");
        assert!(rho(0, p).is_err());
    }

    #[test]
    fn rho_three_is_zeta_two_minus_one_over_six() {
        let p = p40();
        let pi = HpReal::pi(p);
        let expected = ((&pi * &pi).div_i64(6) - HpReal::one(p)).div_i64(6);
        assert!(rho(3, p)
            .unwrap()
            .approx_eq(&expected, &Tolerance::absolute_pow10(-38, p)));
    }

    #[test]
    fn consecutive_rows_telescope_to_zeta() {
        // r! rho_r + (r-1)! rho_(r-1) = zeta(r-1) for r >= 3, with MPFR's zeta
        // as the reference at doubled precision
        let p = p40();
        let q = Precision::digits(80);
        for r in 3..=30u32 {
            let a = rho(r, q).unwrap() * HpReal::from_integer(&Integer::from(Integer::factorial(r)), q);
            let b = rho(r - 1, q).unwrap() * HpReal::from_integer(&Integer::from(Integer::factorial(r - 1)), q);
            let lhs = a + b;
            let oracle = HpReal::from_float(Float::with_val(q.bits(), Float::zeta_u(r - 1)));
            assert!(lhs.approx_eq(&oracle, &Tolerance::absolute_pow10(-70, q)), "r = {r}");
            // and the P-digit evaluation matches the doubled one
            let low = rho(r, p).unwrap();
            assert!(
                low.approx_eq(&rho(r, q).unwrap(), &Tolerance::relative_pow10(-38, p)),
                "r = {r}"
            );
        }
    }

    #[test]
    fn table_invariants() {
        let p = p40();
        let table = rho_table(MAX_RHO_R, p).unwrap();
        assert_eq!(table.rows.len(), 50);
        let e_gamma = HpReal::euler_gamma(p).exp();
        let bound = HpReal::from_i64(2, p);
        let mut fact = Integer::from(1);
        // S_r strictly increases exactly when every rho_r is positive; the
        // rounded partial sums stall once rho_r drops below their ulp
        for w in table.rows.windows(2) {
            assert!(w[1].rho.is_positive(), "r = {}", w[1].r);
            assert!(w[1].partial.as_float() >= w[0].partial.as_float());
        }
        for row in &table.rows {
            assert!(row.partial.as_float() < e_gamma.as_float());
            fact *= row.r;
            let scaled = &row.rho * HpReal::from_integer(&fact, p);
            assert!(scaled.abs().as_float() <= bound.as_float(), "r = {}", row.r);
            if row.r >= 5 {
                // |S_r - S_(r-1)| = rho_r < 1/(r-1)!
                let inv = HpReal::from_integer(&Integer::from(&fact / row.r), p).recip();
                assert!(row.rho.abs().as_float() < inv.as_float(), "r = {}", row.r);
            }
        }
        let gap = &e_gamma - &table.rows[49].partial;
        assert!(gap.as_float() > &0.145);
    }

    #[test]
    fn rendering() {
        let table = rho_table(10, p40()).unwrap();
        let rendered = table.rendered();
        assert_eq!(rendered[0], (1, "1".into(), "1".into()));
        assert_eq!(rendered[1], (2, "0.5".into(), "1.5".into()));
        assert_eq!(rendered[3].2, "1.630702462654345");
        // independently computed at 40 digits (these rows differ from some
        // published values past the tenth decimal)
        assert_eq!(rendered[7].1, "0.000012468590604");
        assert_eq!(rendered[9].2, "1.63590417377964");
        let csv = table.to_csv();
        assert!(csv.starts_with("r,rho,s\n1,1,1\n2,0.5,1.5\n"));
        let json: serde_json::Value = serde_json::from_str(&table.to_json().unwrap()).unwrap();
        assert_eq!(json["rows"][4]["rho"], "0.004376669978331");
        assert!(table.to_text().lines().count() == 11);
        assert!(rho_table(0, p40()).is_err());
        assert!(rho_table(51, p40()).is_err());
    }
}
