//! Scenario file loading.
//!
//! Scenario files are TOML. Field names match [`ScenarioConfig`] exactly;
//! see `scenarios/dhaka_2025.toml` for a fully populated example.

use std::io;
use std::path::{Path, PathBuf};

use adaptstream_core::sim::{ConfigIssue, ScenarioConfig};
use thiserror::Error;

/// The bundled reference scenario, verbatim.
pub const DEFAULT_SCENARIO: &str = include_str!("../scenarios/dhaka_2025.toml");

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("scenario file not found: {}", .0.display())]
    Missing(PathBuf),
    #[error("cannot read {}: {source}", path.display())]
    Unreadable {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed scenario {origin}: {message}")]
    Malformed { origin: String, message: String },
    #[error("invalid scenario {origin}:\n{}", render_issues(.issues))]
    Invalid {
        origin: String,
        issues: Vec<ConfigIssue>,
    },
}

fn render_issues(issues: &[ConfigIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  - {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Values that replace scenario fields before validation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub slots: Option<u32>,
}

impl Overrides {
    pub fn apply(&self, config: &mut ScenarioConfig) {
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(slots) = self.slots {
            config.slots = slots;
        }
    }
}

/// Parses, overrides, then validates TOML scenario text.
pub fn parse_str(text: &str, origin: &str, overrides: Overrides) -> Result<ScenarioConfig, ConfigError> {
    let mut config: ScenarioConfig = toml::from_str(text).map_err(|e| ConfigError::Malformed {
        origin: origin.to_owned(),
        message: e.to_string(),
    })?;
    overrides.apply(&mut config);
    config.validate().map_err(|issues| ConfigError::Invalid {
        origin: origin.to_owned(),
        issues,
    })?;
    Ok(config)
}

pub fn parse_config(path: &Path, overrides: Overrides) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| {
        if source.kind() == io::ErrorKind::NotFound {
            ConfigError::Missing(path.to_owned())
        } else {
            ConfigError::Unreadable {
                path: path.to_owned(),
                source,
            }
        }
    })?;
    parse_str(&text, &path.display().to_string(), overrides)
}

pub fn default_scenario(overrides: Overrides) -> Result<ScenarioConfig, ConfigError> {
    parse_str(DEFAULT_SCENARIO, "<bundled default>", overrides)
}

/// Serializes a scenario back to TOML.
pub fn to_toml(config: &ScenarioConfig) -> String {
    toml::to_string_pretty(config).expect("scenario config always serializes")
}
