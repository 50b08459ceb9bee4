use std::path::Path;
use std::time::Duration;

use thiserror::Error;

use super::record::BenchConfig;
use crate::planner::PlannerConfig;

/// Angle limits of the published comparison.
pub const STANDARD_ANGLES: [f64; 3] = [20.0, 25.0, 30.0];

/// LIAN-20, eLIAN-20-10 and eLIAN-20-5 with `k = 0.5` and `w = 2` for every
/// angle in [`STANDARD_ANGLES`], each capped at `time_cap`.
pub fn standard_configs(time_cap: Option<Duration>) -> Vec<BenchConfig> {
    STANDARD_ANGLES
        .iter()
        .flat_map(|&a| {
            [
                PlannerConfig::lian(20.0, a),
                PlannerConfig::elian(20.0, 10.0, a),
                PlannerConfig::elian(20.0, 5.0, a),
            ]
        })
        .map(|c| BenchConfig::new(c.with_weight(2.0).with_k(0.5).with_time_cap(time_cap)))
        .collect()
}

#[derive(Debug, Error)]
pub enum ConfigFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: config {label:?}: {source}")]
    Invalid {
        path: String,
        label: String,
        source: crate::planner::ConfigError,
    },
}

/// Reads a JSON array of [`BenchConfig`] objects, for example
///
/// ```json
/// [{"label": "eLIAN-20-5", "mode": "elian", "delta_max": 20, "delta_min": 5,
///   "k": 0.5, "alpha_max": 25, "weight": 2, "time_cap": 30, "success_streak": 2}]
/// ```
pub fn load_configs(path: &Path) -> Result<Vec<BenchConfig>, ConfigFileError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigFileError::Io {
        path: p.clone(),
        source,
    })?;
    parse_configs(&text).map_err(|e| match e {
        ConfigFileError::Json { source, .. } => ConfigFileError::Json { path: p, source },
        ConfigFileError::Invalid { label, source, .. } => ConfigFileError::Invalid {
            path: p,
            label,
            source,
        },
        other => other,
    })
}

pub fn parse_configs(text: &str) -> Result<Vec<BenchConfig>, ConfigFileError> {
    let configs: Vec<BenchConfig> =
        serde_json::from_str(text).map_err(|source| ConfigFileError::Json {
            path: String::new(),
            source,
        })?;
    for c in &configs {
        c.config
            .validate()
            .map_err(|source| ConfigFileError::Invalid {
                path: String::new(),
                label: c.label.clone(),
                source,
            })?;
    }
    Ok(configs)
}
