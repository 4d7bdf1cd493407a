use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the supported range {range}")]
    Range {
        what: &'static str,
        value: String,
        range: String,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("factorization too hard: {0}")]
    FactorizationTooHard(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_range<T>(what: &'static str, value: T, lo: T, hi: T) -> Result<()>
where
    T: PartialOrd + std::fmt::Display,
{
    if value < lo || value > hi {
        return Err(Error::Range {
            what,
            value: value.to_string(),
            range: format!("[{lo}, {hi}]"),
        });
    }
    Ok(())
}
