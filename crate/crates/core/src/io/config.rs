use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mc::{McConfig, DEFAULT_SEED};
use crate::tol::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidParameter(format!("unknown format {s:?} (expected csv or json)"))),
        }
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, samples: 100_000, tolerances: Tolerances::default(), out: None, format: Format::Csv }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.seed == 0 {
            return Err(Error::InvalidParameter("seed must be positive".into()));
        }
        if self.samples == 0 {
            return Err(Error::InvalidParameter("sample count must be positive".into()));
        }
        Ok(())
    }

    /// Applies `key=value` tolerance overrides.
    pub fn apply_overrides<S: AsRef<str>>(&mut self, overrides: &[S]) -> Result<()> {
        for o in overrides {
            let o = o.as_ref();
            let (key, value) = o
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("tolerance override {o:?} is not key=value")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("tolerance {key} has a non-numeric value {value:?}")))?;
            self.tolerances.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn mc(&self) -> McConfig {
        McConfig::new(self.samples, self.seed)
    }
}
