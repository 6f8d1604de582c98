use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thermoforms::experiment::{GasSpec, PathSpec};

use crate::CliError;

/// A single JSON run description. Every field is optional so that one file
/// can drive any subcommand; flags override whatever is set here.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub gas: Option<GasSpec<f64>>,
    pub path: Option<PathSpec<f64>>,
    pub bound: Option<i64>,
    pub budget: Option<i64>,
    pub tol: Option<f64>,
    pub max_condition: Option<f64>,
    pub records: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    pub fn gas(&self) -> Result<GasSpec<f64>, CliError> {
        let gas = self.gas.ok_or_else(|| CliError::Usage("config has no `gas` section".into()))?;
        gas.check().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(gas)
    }

    pub fn path(&self) -> Result<&PathSpec<f64>, CliError> {
        self.path.as_ref().ok_or_else(|| CliError::Usage("config has no `path` section".into()))
    }
}

/// Flag value if given, else the config value, else `default`.
pub fn pick<T: Copy>(flag: Option<T>, config: Option<T>, default: T) -> T {
    flag.or(config).unwrap_or(default)
}

pub fn nonnegative(name: &str, value: i64) -> Result<u32, CliError> {
    u32::try_from(value).map_err(|_| CliError::Usage(format!("--{name} must be a nonnegative integer, got {value}")))
}

pub fn positive_real(name: &str, value: f64) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::Usage(format!("--{name} must be a positive number, got {value}")))
    }
}
