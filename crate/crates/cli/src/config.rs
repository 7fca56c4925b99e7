use std::path::Path;

use nahilb_lattice::Limits;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Name of the environment variable that overrides the size guard.
pub const MAX_POINTS_ENV: &str = "NAHILB_MAX_POINTS";

/// Optional defaults read from a JSON file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub dims: Option<Vec<usize>>,
    #[serde(default)]
    pub max_points: Option<usize>,
    #[serde(default)]
    pub max_enumeration_points: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Guards from the config, then the environment override; the point
    /// limit never exceeds [`Limits::HARD_CAP`].
    pub fn limits(&self, env_override: Option<&str>) -> Result<Limits, CliError> {
        let mut limits = Limits::default();
        if let Some(m) = self.max_points {
            limits = Limits::with_max_points(m);
        }
        if let Some(text) = env_override {
            let m: usize = text
                .trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("{MAX_POINTS_ENV} must be a non-negative integer, got {text:?}")))?;
            limits = Limits {
                max_enumeration_points: limits.max_enumeration_points,
                ..Limits::with_max_points(m)
            };
        }
        if let Some(m) = self.max_enumeration_points {
            limits.max_enumeration_points = m.min(limits.max_points);
        }
        Ok(limits)
    }
}
