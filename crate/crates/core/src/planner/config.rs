use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Degrees;

/// Relative slack used when deciding whether `Δ_max·kⁱ` is still inside the
/// allowed range.
const LEVEL_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Fixed segment length.
    Lian,
    /// Segment length adapts within `[delta_min, delta_max]`.
    Elian,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Lian => "lian",
            Mode::Elian => "elian",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("delta_max must be positive and finite, got {0}")]
    DeltaMax(f64),
    #[error("delta_min must be in (0, delta_max], got {min} with delta_max {max}")]
    DeltaMin { min: f64, max: f64 },
    #[error("LIAN needs delta_min == delta_max, got {min} and {max}")]
    LianRange { min: f64, max: f64 },
    #[error("k must lie in (0, 1), got {0}")]
    Factor(f64),
    #[error("heuristic weight must be >= 1, got {0}")]
    Weight(f64),
    #[error("success streak must be >= 1")]
    Streak,
}

/// Every tunable of a single search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannerConfig {
    pub mode: Mode,
    pub delta_max: f64,
    pub delta_min: f64,
    /// Multiplicative Δ decrement on an empty successor set.
    pub k: f64,
    pub alpha_max: Degrees,
    /// Weight `w` in `f = g + w·h`.
    pub weight: f64,
    #[serde(default, with = "duration_secs")]
    pub time_cap: Option<Duration>,
    /// Consecutive successful expansions at one Δ before Δ is raised.
    pub success_streak: u32,
}

impl PlannerConfig {
    /// Fixed-Δ planner with `k = 0.5`, `w = 1` and no time cap.
    pub fn lian(delta: f64, alpha_max_deg: f64) -> Self {
        PlannerConfig {
            mode: Mode::Lian,
            delta_max: delta,
            delta_min: delta,
            k: 0.5,
            alpha_max: Degrees::new(alpha_max_deg),
            weight: 1.0,
            time_cap: None,
            success_streak: 2,
        }
    }

    /// Adaptive-Δ planner with `k = 0.5`, `w = 1` and no time cap.
    pub fn elian(delta_max: f64, delta_min: f64, alpha_max_deg: f64) -> Self {
        PlannerConfig {
            mode: Mode::Elian,
            delta_min,
            ..Self::lian(delta_max, alpha_max_deg)
        }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = k;
        self
    }

    pub fn with_time_cap(mut self, cap: Option<Duration>) -> Self {
        self.time_cap = cap;
        self
    }

    pub fn with_success_streak(mut self, streak: u32) -> Self {
        self.success_streak = streak;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.delta_max.is_finite() && self.delta_max > 0.0) {
            return Err(ConfigError::DeltaMax(self.delta_max));
        }
        if !(self.delta_min > 0.0 && self.delta_min <= self.delta_max) {
            return Err(ConfigError::DeltaMin {
                min: self.delta_min,
                max: self.delta_max,
            });
        }
        if self.mode == Mode::Lian && self.delta_min != self.delta_max {
            return Err(ConfigError::LianRange {
                min: self.delta_min,
                max: self.delta_max,
            });
        }
        if !(self.k > 0.0 && self.k < 1.0) {
            return Err(ConfigError::Factor(self.k));
        }
        if !(self.weight.is_finite() && self.weight >= 1.0) {
            return Err(ConfigError::Weight(self.weight));
        }
        if self.success_streak == 0 {
            return Err(ConfigError::Streak);
        }
        Ok(())
    }

    /// The admissible Δ values `Δ_max·kⁱ ≥ Δ_min`, largest first. LIAN has a
    /// single level.
    pub fn delta_levels(&self) -> Vec<f64> {
        let mut levels = vec![self.delta_max];
        if self.mode == Mode::Lian {
            return levels;
        }
        let floor = self.delta_min * (1.0 - LEVEL_EPS);
        loop {
            let next = levels[levels.len() - 1] * self.k;
            if next < floor {
                break;
            }
            levels.push(next);
        }
        levels
    }

    /// Short name such as `LIAN-20` or `eLIAN-20-5`.
    pub fn label(&self) -> String {
        match self.mode {
            Mode::Lian => format!("LIAN-{}", self.delta_max),
            Mode::Elian => format!("eLIAN-{}-{}", self.delta_max, self.delta_min),
        }
    }
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(d) => s.serialize_some(&d.as_secs_f64()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        let secs = Option::<f64>::deserialize(d)?;
        secs.map(|s| {
            Duration::try_from_secs_f64(s).map_err(|e| serde::de::Error::custom(e.to_string()))
        })
        .transpose()
    }
}
