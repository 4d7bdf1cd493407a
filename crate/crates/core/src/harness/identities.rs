//! Identity suites: exact oracle equalities and high-precision agreements.

use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};

use super::report::{CampaignReport, Record, Verdict};
use super::sweeps::relative_margin;
use crate::combinatorics::{
    complete_bell, partitions_of, stirling_first_unsigned, stirling_second, LengthConstraint, Partition,
};
use crate::cyclestats::{
    asymptotic_c_log_c, asymptotic_log_moment, build_distribution, exact_c_log_c, exact_expected_log, moment_set,
};
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::numeric::{harmonic_exact, Exact, HpReal, Linear, Precision, Scalar};
use crate::series::{
    a1, a1_by_moment, a_by_assembly, a_lower_closed, a_series, assembly_tail_bound, atilde_det, atilde_direct,
    atilde_moment, delta_determinant, exp_integral_e1, CoefficientFamily,
};
use crate::symfunc::{
    e_ij, elementary_table, exp_expansion_partial, harmonic_points, hook_monomial_det, m221_expansion,
    monomial_bruteforce, newton_p_det, power_sum,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentitySuite {
    All,
    Symfunc,
    Series,
    Cyclestats,
}

impl IdentitySuite {
    fn includes(self, other: IdentitySuite) -> bool {
        self == IdentitySuite::All || self == other
    }
}

impl fmt::Display for IdentitySuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentitySuite::All => "all",
            IdentitySuite::Symfunc => "symfunc",
            IdentitySuite::Series => "series",
            IdentitySuite::Cyclestats => "cyclestats",
        })
    }
}

impl FromStr for IdentitySuite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(IdentitySuite::All),
            "symfunc" => Ok(IdentitySuite::Symfunc),
            "series" => Ok(IdentitySuite::Series),
            "cyclestats" => Ok(IdentitySuite::Cyclestats),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

/// Sizes of the identity grids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityScale {
    /// `e_m(n) n! = c(n+1, m+1)` and the probabilistic identity, `n <= this`.
    pub elementary_n: u64,
    /// Cumulant and central-moment checks, `n <= this`.
    pub moment_n: u64,
    pub moment_order: u32,
    /// Exact route equivalence, `n <= this` (at most 10).
    pub route_exact_n: u64,
    pub route_exact_r: usize,
    /// Determinant against moment route in high precision.
    pub route_hp_n: u64,
    pub route_hp_r: usize,
    /// Zero-determinant check, `n <= this`.
    pub zero_det_n: u64,
    /// `A_1(n) = (n+1) E[log C_(n+1)]`, `n <= this`.
    pub a1_n: u64,
}

impl Default for IdentityScale {
    fn default() -> Self {
        IdentityScale {
            elementary_n: 60,
            moment_n: 40,
            moment_order: 6,
            route_exact_n: 10,
            route_exact_r: 5,
            route_hp_n: 200,
            route_hp_r: 8,
            zero_det_n: 50,
            a1_n: 1000,
        }
    }
}

impl IdentityScale {
    /// A reduced grid for quick runs.
    pub fn quick() -> Self {
        IdentityScale {
            elementary_n: 20,
            moment_n: 12,
            moment_order: 6,
            route_exact_n: 5,
            route_exact_r: 4,
            route_hp_n: 30,
            route_hp_r: 5,
            zero_det_n: 12,
            a1_n: 60,
        }
    }
}

/// Outcome counter for an exact identity.
struct Exactly {
    name: String,
    cases: usize,
    first_mismatch: Option<String>,
    mismatches: usize,
}

impl Exactly {
    fn new(name: &str) -> Self {
        Exactly {
            name: name.into(),
            cases: 0,
            first_mismatch: None,
            mismatches: 0,
        }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.mismatches += 1;
            if self.first_mismatch.is_none() {
                self.first_mismatch = Some(case());
            }
        }
    }

    fn record(self) -> Record {
        let mut r = Record::new(self.name, Verdict::from_bool(self.mismatches == 0))
            .with("cases", self.cases)
            .with("mismatches", self.mismatches)
            .with("tolerance", 0);
        if let Some(c) = self.first_mismatch {
            r = r.with("first_mismatch", c);
        }
        r
    }
}

/// Worst deviation against a tolerance.
struct Within {
    name: String,
    tolerance: f64,
    cases: usize,
    worst: f64,
    worst_case: String,
}

impl Within {
    fn new(name: &str, tolerance: f64) -> Self {
        Within {
            name: name.into(),
            tolerance,
            cases: 0,
            worst: 0.0,
            worst_case: String::new(),
        }
    }

    fn check(&mut self, deviation: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        // NaN counts as the worst possible deviation
        if deviation.is_nan() || deviation > self.worst {
            self.worst = deviation;
            self.worst_case = case();
        }
    }

    fn record(self) -> Record {
        let ok = self.worst <= self.tolerance;
        let mut r = Record::new(self.name, Verdict::from_bool(ok))
            .with("cases", self.cases)
            .with("worst_deviation", format!("{:.3e}", self.worst))
            .with("tolerance", format!("{:.0e}", self.tolerance))
            .margin((self.tolerance - self.worst) / self.tolerance);
        if !self.worst_case.is_empty() {
            r = r.with("worst_case", self.worst_case);
        }
        r
    }
}

fn rel_dev(a: &HpReal, b: &HpReal) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale.is_zero() {
        return 0.0;
    }
    ((a - b).abs() / scale).to_f64()
}

fn abs_dev(a: &HpReal, b: &HpReal) -> f64 {
    (a - b).abs().to_f64()
}

fn q(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn symfunc_records(scale: &IdentityScale) -> Result<Vec<Record>> {
    let mut out = Vec::new();

    let mut stirling = Exactly::new("e_m(n) n! = c(n+1, m+1)");
    for n in 0..=scale.elementary_n {
        let e = elementary_table(n, n as usize, &Exact)?;
        let fact = factorial(n as u32);
        for m in 0..=n as usize {
            let lhs = Rational::from(e.get(m)? * &fact);
            let rhs = Rational::from(stirling_first_unsigned(n as usize + 1, m + 1)?);
            stirling.check(lhs == rhs, || format!("n={n} m={m}"));
        }
    }
    out.push(stirling.record());

    let mut newton = Exactly::new("Newton determinant p_k = power sum");
    for n in 1..=12u64 {
        let e = elementary_table(n, 8, &Exact)?;
        for k in 1..=8usize {
            let ok = newton_p_det(&e, k)? == power_sum(n, k as u32, &Exact)?;
            newton.check(ok, || format!("n={n} k={k}"));
        }
    }
    out.push(newton.record());

    let mut hooks = Exactly::new("hook determinant = brute-force m_[r,1^l]");
    for n in 1..=10u64 {
        let e = elementary_table(n, n as usize + 12, &Exact)?;
        let x = harmonic_points(n as usize, &Exact);
        for r in 2..=5usize {
            for l in 0..=5usize {
                let det = hook_monomial_det(r, l, &e)?;
                let brute = monomial_bruteforce(&Partition::hook(r as u32, l as u32), &x, &Exact)?;
                hooks.check(det == brute, || format!("n={n} r={r} l={l}"));
            }
        }
    }
    out.push(hooks.record());

    let mut m221 = Exactly::new("m_[2,2,1^l] expansion = brute force");
    for n in 1..=12u64 {
        let e = elementary_table(n, n as usize + 12, &Exact)?;
        let x = harmonic_points(n as usize, &Exact);
        for l in 0..=8u32 {
            let mut parts = vec![2, 2];
            parts.extend(std::iter::repeat(1).take(l as usize));
            let brute = monomial_bruteforce(&Partition::new(parts)?, &x, &Exact)?;
            m221.check(m221_expansion(l as usize, &e)? == brute, || format!("n={n} l={l}"));
        }
    }
    out.push(m221.record());

    let mut grouped = Exactly::new("sum over partitions of j of m_mu / prod mu! = H^j / j!");
    for n in 1..=6usize {
        let x = harmonic_points(n, &Exact);
        let h: Rational = x.iter().sum();
        let mut power = q(1, 1);
        for j in 0..=10u32 {
            let mut lhs = Rational::new();
            for i in 0..=j as usize {
                lhs += e_ij(i, j, &x, &Exact)?;
            }
            let rhs = Rational::from(&power / factorial(j));
            grouped.check(lhs == rhs, || format!("n={n} j={j}"));
            power *= &h;
        }
    }
    out.push(grouped.record());

    let p = Precision::digits(40);
    let mut exp_partial = Exactly::new("|exp partial sum - e^H| <= H^31/31! e^H");
    for n in 1..=6usize {
        let h = HpReal::from_rational(&harmonic_exact(n as u64)?, p);
        let partial = exp_expansion_partial(n, 30, &Exact)?.to_hp(p);
        let gap = (h.exp() - partial).abs();
        let bound = h.powi(31) / HpReal::from_integer(&factorial(31), p) * h.exp();
        exp_partial.check(gap.as_float() <= bound.as_float(), || format!("n={n}"));
    }
    out.push(exp_partial.record());
    Ok(out)
}

pub fn cyclestats_records(scale: &IdentityScale, precision: Precision) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let order = scale.moment_order;

    let mut cumulants = Exactly::new("cumulant formula = moment recursion");
    let mut central = Exactly::new("Bell central moments = direct central moments");
    for n in 1..=scale.moment_n {
        let dist = build_distribution(n, &Exact);
        let raw: Vec<Rational> = (0..=order).map(|m| dist.raw_moment(m)).collect();
        // kappa_m = mu'_m - sum_{j=1}^{m-1} C(m-1, j-1) kappa_j mu'_(m-j)
        let mut kappa: Vec<Rational> = vec![Rational::new()];
        for m in 1..=order as usize {
            let mut k = raw[m].clone();
            for j in 1..m {
                let binom = Integer::from(Integer::binomial_u(m as u32 - 1, j as u32 - 1));
                k -= Rational::from(&kappa[j] * &raw[m - j]) * binom;
            }
            kappa.push(k);
        }
        let set = moment_set(n, order, &Exact)?;
        let h = harmonic_exact(n)?;
        for m in 1..=order {
            cumulants.check(*set.cumulant(m) == kappa[m as usize], || format!("n={n} m={m}"));
            central.check(*set.central(m) == dist.moment_about(&h, m), || format!("n={n} m={m}"));
        }
    }
    out.push(cumulants.record());
    out.push(central.record());

    let mut prob = Exactly::new("(n+1) P(C_(n+1) = m+1) = e_m(n)");
    for n in 0..=scale.elementary_n {
        let e = elementary_table(n, n as usize, &Exact)?;
        let dist = build_distribution(n + 1, &Exact);
        for m in 0..=n as usize {
            let lhs = dist.prob(m + 1) * Integer::from(n + 1);
            prob.check(lhs == *e.get(m)?, || format!("n={n} m={m}"));
        }
    }
    out.push(prob.record());

    let mut mean = Exactly::new("E[C_n] = H_n");
    for n in 1..=200u64 {
        let dist = build_distribution(n, &Exact);
        mean.check(dist.raw_moment(1) == harmonic_exact(n)?, || format!("n={n}"));
    }
    out.push(mean.record());

    let mut stirling_rows = Exactly::new("sum_k c(n, k) = n!");
    for n in 1..=20usize {
        let mut sum = Integer::new();
        for k in 0..=n {
            sum += stirling_first_unsigned(n, k)?;
        }
        stirling_rows.check(sum == factorial(n as u32), || format!("n={n}"));
    }
    out.push(stirling_rows.record());

    let mut bell = Exactly::new("sum_l S(m, l) = B_m(1, ..., 1)");
    for m in 0..=12usize {
        let mut sum = Integer::new();
        for l in 0..=m {
            sum += stirling_second(m, l)?;
        }
        let ones = vec![q(1, 1); m];
        bell.check(sum == complete_bell(&ones, &Exact), || format!("m={m}"));
    }
    out.push(bell.record());

    let mut partitions = Exactly::new("partition counts = pentagonal recurrence");
    let mut pent = vec![Integer::from(1)];
    for j in 1..=40i64 {
        let mut acc = Integer::new();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > j {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += Integer::from(&pent[(j - g1) as usize] * sign);
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= j {
                acc += Integer::from(&pent[(j - g2) as usize] * sign);
            }
        }
        pent.push(acc);
        let count = partitions_of(j as u32, LengthConstraint::Any)?.len();
        partitions.check(pent[j as usize] == count, || format!("j={j}"));
    }
    out.push(partitions.record());

    // formal expansion: the truncation error at M = 4 shrinks with n
    let small = (&asymptotic_log_moment(100, &HpReal::zero(precision), 4, precision)?
        - &exact_expected_log(100, 0, precision)?)
        .abs();
    let large = (&asymptotic_log_moment(10_000, &HpReal::zero(precision), 4, precision)?
        - &exact_expected_log(10_000, 0, precision)?)
        .abs();
    let c_small = (&asymptotic_c_log_c(100, 4, precision)? - &exact_c_log_c(100, precision)?).abs();
    let c_large = (&asymptotic_c_log_c(1000, 4, precision)? - &exact_c_log_c(1000, precision)?).abs();
    out.push(
        Record::new(
            "C log C expansion error shrinks from n=100 to n=1000",
            Verdict::from_bool(c_large.as_float() < c_small.as_float()),
        )
        .with("error_n100", c_small.to_sig(6))
        .with("error_n1000", c_large.to_sig(6)),
    );
    out.push(
        Record::new(
            "log-moment expansion error shrinks from n=100 to n=10000",
            Verdict::from_bool(large.as_float() < small.as_float()),
        )
        .with("error_n100", small.to_sig(6))
        .with("error_n10000", large.to_sig(6)),
    );
    Ok(out)
}

/// `sum_{k=0}^{200} c_k x^k / k!`.
fn taylor(coeffs: impl Fn(usize) -> HpReal, x: &HpReal, precision: Precision) -> HpReal {
    let mut power = HpReal::one(precision);
    let mut acc = coeffs(0);
    for k in 1..=200usize {
        power = (&power * x).div_i64(k as i64);
        acc = acc + coeffs(k) * &power;
    }
    acc
}

pub fn series_records(scale: &IdentityScale, precision: Precision, strategy: Strategy) -> Result<Vec<Record>> {
    let mut out = Vec::new();

    // generating identities at P >= 50
    let gp = Precision::digits(precision.decimal_digits().max(50));
    let work = gp.with_extra(40);
    let gamma = HpReal::euler_gamma(work);
    let mut h_k = vec![HpReal::zero(work)];
    for k in 1..=200i64 {
        let next = &h_k[k as usize - 1] + &HpReal::one(work).div_i64(k);
        h_k.push(next);
    }
    let mut eq1 = Within::new("sum (H_k - gamma) x^k/k! = e^x (log x + E1(x))", 1e-20);
    let mut hgf = Within::new("sum H_k x^k/k! = e^x (log x + gamma + E1(x))", 1e-20);
    for x in ["0.5", "1", "5", "9.2"] {
        let xv = HpReal::parse(x, work)?;
        let e1 = exp_integral_e1(&xv, work)?;
        let closed = xv.exp() * (xv.ln() + &e1);
        let lhs = taylor(|k| &h_k[k] - &gamma, &xv, work);
        eq1.check(abs_dev(&lhs, &closed), || format!("x={x}"));
        let closed_h = xv.exp() * (xv.ln() + &gamma + &e1);
        let lhs_h = taylor(|k| h_k[k].clone(), &xv, work);
        hgf.check(abs_dev(&lhs_h, &closed_h), || format!("x={x}"));
    }
    out.push(eq1.record());
    out.push(hgf.record());

    let mut lower = Exactly::new("a_series(lower) = closed form within error bounds");
    for n in [1u64, 10, 100, 5040] {
        let n_big = Integer::from(n);
        let s = a_series(&n_big, CoefficientFamily::Lower, precision)?.value;
        let closed = a_lower_closed(&n_big, precision)?;
        let slack = s.abs_error() + &HpReal::pow10(5 - precision.decimal_digits() as i32, precision) * closed.abs();
        lower.check((s.value() - &closed).abs().as_float() <= slack.as_float(), || {
            format!("n={n}")
        });
    }
    out.push(lower.record());

    let mut routes = Exactly::new("hook sums: determinant = direct route exactly");
    let mut cases = Vec::new();
    for r in 2..=scale.route_exact_r {
        for n in 1..=scale.route_exact_n {
            cases.push((r, n));
        }
    }
    let exact = exec::map(strategy, &cases, |&(r, n)| -> Result<bool> {
        Ok(atilde_det(r, n, &Exact)? == atilde_direct(r, n, &Exact)?)
    });
    for ((r, n), res) in cases.iter().zip(exact) {
        routes.check(res?, || format!("r={r} n={n}"));
    }
    out.push(routes.record());

    let tol = 10f64.powi(5 - precision.decimal_digits() as i32);
    let mut direct_hp = Within::new("hook sums: moment route (hp) vs exact determinant", tol);
    let exact_vs_moment = exec::map(strategy, &cases, |&(r, n)| -> Result<f64> {
        let exact = atilde_det(r, n, &Exact)?.evaluate(precision);
        Ok(rel_dev(&atilde_moment(r, n, &precision)?, &exact))
    });
    for ((r, n), d) in cases.iter().zip(exact_vs_moment) {
        direct_hp.check(d?, || format!("r={r} n={n}"));
    }
    out.push(direct_hp.record());

    let mut hp = Within::new("hook sums: determinant vs moment route (hp)", tol);
    let mut hp_cases = Vec::new();
    for r in 2..=scale.route_hp_r {
        for n in 1..=scale.route_hp_n {
            hp_cases.push((r, n));
        }
    }
    let devs = exec::map(strategy, &hp_cases, |&(r, n)| -> Result<f64> {
        let det = atilde_det(r, n, &precision)?;
        let mom = atilde_moment(r, n, &precision)?;
        Ok(rel_dev(&det, &mom))
    });
    for ((r, n), d) in hp_cases.iter().zip(devs) {
        hp.check(d?, || format!("r={r} n={n}"));
    }
    out.push(hp.record());

    let mut zero = Within::new("delta-row determinant vanishes (relative to the S-row one)", tol);
    let mut z_cases = Vec::new();
    for r in 2..=6usize {
        for n in 1..=scale.zero_det_n {
            z_cases.push((r, n));
        }
    }
    let devs = exec::map(strategy, &z_cases, |&(r, n)| -> Result<f64> {
        let delta = delta_determinant(r, n, &precision)?;
        let reference = atilde_det(r, n, &precision)?.abs();
        Ok((delta.abs() / reference.max(HpReal::one(precision))).to_f64())
    });
    for ((r, n), d) in z_cases.iter().zip(devs) {
        zero.check(d?, || format!("r={r} n={n}"));
    }
    out.push(zero.record());

    let mut assembly = Exactly::new("assembled A_r sums match the canonical series within the tail bound");
    let mut worst: Option<f64> = None;
    for n in 1..=6u64 {
        let assembled = a_by_assembly(n, 8, &Exact)?.evaluate(precision);
        let series = a_series(&Integer::from(n), CoefficientFamily::Canonical, precision)?.value;
        let bound = assembly_tail_bound(n, 8, precision)? + series.abs_error();
        let gap = (series.value() - &assembled).abs();
        let m = relative_margin(&gap, &bound);
        worst = Some(worst.map_or(m, |w| w.min(m)));
        assembly.check(gap.as_float() <= bound.as_float(), || format!("n={n}"));
    }
    let mut rec = assembly.record();
    if let Some(m) = worst {
        rec = rec.margin(m);
    }
    out.push(rec);

    let mut a1_check = Within::new(
        "A_1(n) = (n+1) E[log C_(n+1)]",
        10f64.powi(3 - precision.decimal_digits() as i32),
    );
    let ns: Vec<u64> = (1..=scale.a1_n).collect();
    let devs = exec::map(strategy, &ns, |&n| -> Result<f64> {
        Ok(rel_dev(&a1(n, &precision)?, &a1_by_moment(n, &precision)?))
    });
    for (n, d) in ns.iter().zip(devs) {
        a1_check.check(d?, || format!("n={n}"));
    }
    out.push(a1_check.record());
    Ok(out)
}

pub fn campaign_identities(
    suite: IdentitySuite,
    scale: &IdentityScale,
    precision: Precision,
    strategy: Strategy,
) -> Result<CampaignReport> {
    let mut report = CampaignReport::new("identities", precision).param("suite", suite);
    let mut records = Vec::new();
    if suite.includes(IdentitySuite::Symfunc) {
        records.extend(symfunc_records(scale)?);
    }
    if suite.includes(IdentitySuite::Cyclestats) {
        records.extend(cyclestats_records(scale, precision)?);
    }
    if suite.includes(IdentitySuite::Series) {
        records.extend(series_records(scale, precision, strategy)?);
    }
    for r in records {
        report.push(r);
    }
    Ok(report.finish())
}
