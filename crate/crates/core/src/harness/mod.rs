//! Verification campaigns, golden tables and reports.

mod config;
mod diagnostics;
mod golden;
mod identities;
mod montecarlo;
mod report;
mod sweeps;
mod tables;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub use config::{Config, CONFIG_ENV, MIN_PRECISION};
pub use diagnostics::{campaign_diagnostics, e1_growth, limit_trend, r3_ratios, TREND_POINTS};
pub use golden::{ca_reference, parse_ca_table, parse_rho_table, rho_reference, GoldenCaRow, GoldenRho};
pub use identities::{
    campaign_identities, cyclestats_records, series_records, symfunc_records, IdentityScale, IdentitySuite,
};
pub use montecarlo::{campaign_montecarlo, mean_record, SIGMA_BAND};
pub use report::{exit_code, CampaignReport, Diagnostic, Record, Summary, Verdict};
pub use sweeps::{
    campaign_appendix, campaign_robin_lagarias, campaign_sigma_vs_a, lemma_e1_grid, lemma_ei_grid,
    lemma_harmonic_bounds, lower_family_record, LOWER_FAMILY_FAILURES, MAX_SWEEP,
};
pub use tables::{
    ca_records, campaign_tables, highly_abundant_findings, rho_limit_records, rho_records, D1_APPROX_TOLERANCE,
    GAMMA_LOG_TOLERANCE, HA_SCAN_BOUND, MISMATCH_MARGIN,
};

use crate::error::Result;
use crate::exec::{self, Strategy};
use crate::numeric::Precision;
use crate::series::CoefficientFamily;

/// Range of the `n` sweeps run by [`verify_all`].
pub const VERIFY_SWEEP_MAX: u64 = 5040;
/// Length of the colossally abundant chain checked against Robin's bound.
pub const VERIFY_CHAIN_LEN: usize = 60;
pub const VERIFY_SAMPLE_N: u64 = 1000;
pub const VERIFY_SAMPLE_TRIALS: u64 = 100_000;

/// Every campaign with its reports in a fixed order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyAllReport {
    pub version: String,
    pub precision: Precision,
    pub seed: u64,
    pub reports: Vec<CampaignReport>,
}

impl VerifyAllReport {
    pub fn exit_code(&self) -> i32 {
        exit_code(&self.reports)
    }

    /// Pretty JSON; identical for identical configurations.
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// Writes the JSON report into `dir`, returning its path.
    pub fn write_to(&self, dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join("verify-all.json");
        std::fs::write(&path, self.to_json()?)?;
        Ok(path)
    }
}

/// Runs every campaign with the config's precision, seed and worker count.
pub fn verify_all(config: &Config) -> Result<VerifyAllReport> {
    config.validate()?;
    let p = config.precision;
    let s = Strategy::Parallel;
    let reports = exec::with_workers(config.workers, || -> Result<Vec<CampaignReport>> {
        let mut out = Vec::new();
        log::info!("tables");
        out.push(campaign_tables(p, s)?);
        log::info!("sigma vs A");
        // the lower family is expected to fail; only its failure set is checked
        let mut sigma = campaign_sigma_vs_a(
            VERIFY_SWEEP_MAX,
            &[CoefficientFamily::Canonical, CoefficientFamily::Upper],
            p,
            s,
        )?;
        sigma.push(lower_family_record(VERIFY_SWEEP_MAX, p, s)?);
        out.push(sigma.finish());
        log::info!("appendix");
        out.push(campaign_appendix(VERIFY_SWEEP_MAX, p, s)?);
        log::info!("robin / lagarias");
        out.push(campaign_robin_lagarias(VERIFY_CHAIN_LEN, VERIFY_SWEEP_MAX, p, s)?);
        log::info!("identities");
        out.push(campaign_identities(
            IdentitySuite::All,
            &IdentityScale::default(),
            p,
            s,
        )?);
        log::info!("monte carlo");
        out.push(campaign_montecarlo(
            VERIFY_SAMPLE_N,
            VERIFY_SAMPLE_TRIALS,
            config.seed,
            s,
        )?);
        log::info!("diagnostics");
        out.push(campaign_diagnostics(10, p, s)?);
        Ok(out)
    })?;
    Ok(VerifyAllReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        precision: p,
        seed: config.seed,
        reports,
    })
}
