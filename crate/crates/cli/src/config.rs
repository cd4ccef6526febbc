use std::fmt;
use std::str::FromStr;

use polyperm_core::arith::{check_prime, big_pow};
use polyperm_core::fgroup::DEFAULT_BUDGET;
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Core(#[from] polyperm_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for anything the caller can fix by changing the request.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?}; expected json, csv or text")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// Deliberate defects for exercising the harness itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// `beta(p, k)` claims one more than the truth for `k >= 2`.
    CorruptBeta,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "corrupt-beta" => Ok(Fault::CorruptBeta),
            other => Err(format!("unknown fault {other:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u32,
    pub n_max: u32,
    pub budget: u64,
    pub seed: u64,
    pub format: Format,
    pub checks: Vec<String>,
    pub fault: Option<Fault>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            n_max: 2,
            budget: DEFAULT_BUDGET,
            seed: 0,
            format: Format::Json,
            checks: Vec::new(),
            fault: None,
        }
    }
}

impl RunConfig {
    pub fn new(p: u32, n_max: u32) -> Self {
        RunConfig { p, n_max, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        check_prime(self.p).map_err(|e| CliError::Usage(e.to_string()))?;
        if self.n_max == 0 {
            return Err(CliError::Usage("level must be at least 1".into()));
        }
        if BigUint::from(self.budget) < big_pow(self.p, self.n_max as u64) {
            return Err(CliError::Usage(format!(
                "budget {} is smaller than the modulus {}^{}",
                self.budget, self.p, self.n_max
            )));
        }
        if let Some(unknown) = self.checks.iter().find(|c| !crate::verify::CHECK_NAMES.contains(&c.as_str())) {
            return Err(CliError::Usage(format!(
                "unknown check {unknown:?}; known checks: {}",
                crate::verify::CHECK_NAMES.join(", ")
            )));
        }
        Ok(())
    }
}
