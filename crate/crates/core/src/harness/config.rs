use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Precision;

/// Environment variable naming a config file.
pub const CONFIG_ENV: &str = "ROBIN_YOUNG_CONFIG";
/// Smallest precision accepted for campaigns.
pub const MIN_PRECISION: u32 = 15;

/// Campaign settings.
///
/// Read from a flat `key = value` file:
///
/// ```text
/// # lines starting with '#' are ignored
/// precision = 40
/// out_dir = reports
/// workers = 4
/// seed = 42
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub precision: Precision,
    pub out_dir: PathBuf,
    pub workers: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: Precision::DEFAULT,
            out_dir: PathBuf::from("out"),
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 42,
        }
    }
}

impl Config {
    /// Parses config text; keys left out keep their defaults.
    pub fn parse(text: &str) -> Result<Config> {
        let mut config = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("config line {}: {msg}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "precision" => {
                    let digits: u32 = value.parse().map_err(|_| bad("precision must be an integer"))?;
                    config.precision = Precision::digits(digits.max(1));
                }
                "out_dir" => config.out_dir = PathBuf::from(value),
                "workers" => config.workers = value.parse().map_err(|_| bad("workers must be an integer"))?,
                "seed" => config.seed = value.parse().map_err(|_| bad("seed must be an integer"))?,
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)?;
        Config::parse(&text)
    }

    /// Loads the file named by `ROBIN_YOUNG_CONFIG`, or the defaults when the
    /// variable is unset.
    pub fn from_env() -> Result<Config> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Config::load(Path::new(&path)),
            _ => Ok(Config::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision.decimal_digits() < MIN_PRECISION {
            return Err(Error::Parse(format!(
                "precision {} is below the minimum of {MIN_PRECISION}",
                self.precision
            )));
        }
        if self.workers == 0 {
            return Err(Error::Parse("workers must be at least 1".into()));
        }
        Ok(())
    }
}
