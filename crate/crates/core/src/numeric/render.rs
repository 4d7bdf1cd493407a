//! Decimal renderings used by exported tables.

use super::HpReal;

/// Fixed-point rendering with `decimals` places and trailing zeros removed
/// (`0.5`, `1`, `0.004376669978331`).
pub fn render_decimal(x: &HpReal, decimals: u32) -> String {
    let s = x.to_fixed(decimals);
    if !s.contains('.') {
        return s;
    }
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

/// Fixed-point rendering with `digits` significant digits, trailing zeros
/// kept (`4.52076127271870`).
pub fn render_significant(x: &HpReal, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let magnitude = x.abs().as_float().clone().log10().floor().to_f64() as i64 + 1;
    let decimals = (i64::from(digits) - magnitude).max(0) as u32;
    x.to_fixed(decimals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Precision;

    #[test]
    fn renderings() {
        let p = Precision::digits(30);
        let h = |s: &str| HpReal::parse(s, p).unwrap();
        assert_eq!(render_decimal(&h("0.5"), 15), "0.5");
        assert_eq!(render_decimal(&h("1"), 15), "1");
        assert_eq!(render_decimal(&h("-1e-20"), 15), "0");
        assert_eq!(render_decimal(&h("0.0043766699783314"), 15), "0.004376669978331");
        assert_eq!(render_significant(&h("4.520761272718699"), 15), "4.52076127271870");
        assert_eq!(render_significant(&h("0.4000954107015316"), 15), "0.400095410701532");
        assert_eq!(render_significant(&h("37.94525076023456"), 15), "37.9452507602346");
        assert_eq!(render_significant(&h("-2.5"), 3), "-2.50");
        assert_eq!(render_significant(&h("123456"), 3), "123456");
    }
}
