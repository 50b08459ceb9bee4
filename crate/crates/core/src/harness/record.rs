use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::grid::{Cell, Grid, Instance};
use crate::planner::{accumulated_angle, path_length, search, PlannerConfig, SearchError, Verdict};

/// A planner configuration under a display label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub label: String,
    #[serde(flatten)]
    pub config: PlannerConfig,
}

impl BenchConfig {
    /// Labels the config with [`PlannerConfig::label`].
    pub fn new(config: PlannerConfig) -> Self {
        BenchConfig {
            label: config.label(),
            config,
        }
    }
}

/// Result of one planner run on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: String,
    pub map_id: String,
    pub start: Cell,
    pub goal: Cell,
    pub algorithm: String,
    pub alpha_max: f64,
    pub config: PlannerConfig,
    pub verdict: Verdict,
    /// Wall-clock seconds spent inside the search call.
    pub runtime_s: f64,
    pub path_length: Option<f64>,
    /// Sum of turn angles in degrees.
    pub accumulated_angle: Option<f64>,
    pub expansions: u64,
    pub reinsertions: u64,
    pub path: Option<Vec<Cell>>,
}

impl RunRecord {
    pub fn solved(&self) -> bool {
        self.verdict == Verdict::Found
    }

    /// Equality ignoring runtime, which is the only field that depends on
    /// the machine and on scheduling.
    pub fn same_result(&self, other: &RunRecord) -> bool {
        let mut a = self.clone();
        a.runtime_s = other.runtime_s;
        &a == other
    }
}

/// Runs `cfg` on `instance` and packages the outcome. Runtime covers the
/// search call only.
pub fn run_instance(
    grid: &Grid,
    instance_id: &str,
    instance: &Instance,
    cfg: &BenchConfig,
) -> Result<RunRecord, SearchError> {
    instance.validate(grid)?;
    let t0 = Instant::now();
    let outcome = search(grid, instance.start, instance.goal, &cfg.config)?;
    let runtime_s = t0.elapsed().as_secs_f64();
    let (path_length, accumulated_angle) = match &outcome.path {
        Some(p) => (Some(path_length(p)), Some(accumulated_angle(p))),
        None => (None, None),
    };
    Ok(RunRecord {
        instance_id: instance_id.to_string(),
        map_id: instance.map_id.clone(),
        start: instance.start,
        goal: instance.goal,
        algorithm: cfg.label.clone(),
        alpha_max: cfg.config.alpha_max.value(),
        config: cfg.config.clone(),
        verdict: outcome.verdict,
        runtime_s,
        path_length,
        accumulated_angle,
        expansions: outcome.stats.expansions,
        reinsertions: outcome.stats.reinsertions,
        path: outcome.path,
    })
}

/// Stable id of the `index`-th instance of a map, e.g. `arena.map#3`.
pub fn instance_id(map_id: &str, index: usize) -> String {
    let name = Path::new(map_id)
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| map_id.to_string());
    format!("{name}#{index}")
}

/// Writes records as JSON lines.
pub fn write_records(records: &[RunRecord], out: &mut impl std::io::Write) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads JSON-lines records, skipping blank lines.
pub fn read_records(text: &str) -> Result<Vec<RunRecord>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}
