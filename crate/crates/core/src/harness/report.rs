//! Corpus-level aggregation of run records.
//!
//! Rows are keyed by `(algorithm, alpha_max)`. For each `alpha_max` the
//! *common set* is the set of instances solved by every algorithm run at that
//! angle; runtime medians and quality means are taken over it so that every
//! algorithm is measured on the same tasks.
//!
//! CSV columns, in order:
//!
//! | column | meaning |
//! |---|---|
//! | `baseline` | baseline algorithm label |
//! | `algorithm` | algorithm label |
//! | `alpha_max` | angle limit, degrees |
//! | `instances` | instances run |
//! | `solved` | instances with verdict `Found` |
//! | `success_rate` | `100 · solved / instances` |
//! | `success_delta` | success rate minus the baseline's at the same angle (points) |
//! | `rescue_rate` | `100 · |solved ∖ solved_by_baseline| / |unsolved_by_baseline|` |
//! | `common_solved` | size of the common set at this angle |
//! | `median_runtime_s` | median runtime over the common set |
//! | `mean_path_length` | mean path length over the common set |
//! | `mean_accumulated_angle` | mean accumulated turn (degrees) over the common set |
//! | `normalized_angle` | `mean_accumulated_angle` / baseline's at its smallest angle |
//!
//! Empty cells stand for "not defined". The JSON form is
//! `{"baseline": …, "rows": [ {same keys} … ]}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::record::RunRecord;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no records to aggregate")]
    Empty,
    #[error("baseline {0:?} does not occur in the records")]
    UnknownBaseline(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report has inconsistent baseline column")]
    MixedBaseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub algorithm: String,
    pub alpha_max: f64,
    pub instances: usize,
    pub solved: usize,
    pub success_rate: f64,
    pub success_delta: Option<f64>,
    pub rescue_rate: Option<f64>,
    pub common_solved: usize,
    pub median_runtime_s: Option<f64>,
    pub mean_path_length: Option<f64>,
    pub mean_accumulated_angle: Option<f64>,
    pub normalized_angle: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub baseline: String,
    /// Sorted by angle, then algorithm label.
    pub rows: Vec<ReportRow>,
}

impl AggregateReport {
    pub fn row(&self, algorithm: &str, alpha_max: f64) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.algorithm == algorithm && r.alpha_max == alpha_max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct AngleKey(u64);

impl AngleKey {
    fn new(a: f64) -> Self {
        // angles are in [0,180]; bit patterns of non-negative floats sort numerically
        AngleKey((a + 0.0).to_bits())
    }

    fn value(self) -> f64 {
        f64::from_bits(self.0)
    }
}

#[derive(Default)]
struct Group<'a> {
    ran: BTreeSet<&'a str>,
    solved: BTreeMap<&'a str, &'a RunRecord>,
}

/// Median of a non-empty list; mean of the two middle values for even sizes.
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    })
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Folds records into per-(algorithm, angle) rows. The result does not
/// depend on the order of `records`.
pub fn aggregate(records: &[RunRecord], baseline: &str) -> Result<AggregateReport, ReportError> {
    if records.is_empty() {
        return Err(ReportError::Empty);
    }
    if !records.iter().any(|r| r.algorithm == baseline) {
        return Err(ReportError::UnknownBaseline(baseline.to_string()));
    }

    let mut groups: BTreeMap<(AngleKey, &str), Group> = BTreeMap::new();
    for r in records {
        let g = groups
            .entry((AngleKey::new(r.alpha_max), r.algorithm.as_str()))
            .or_default();
        g.ran.insert(r.instance_id.as_str());
        if r.solved() {
            // duplicates keep the fastest run
            let slot = g.solved.entry(r.instance_id.as_str()).or_insert(r);
            if r.runtime_s < slot.runtime_s {
                *slot = r;
            }
        }
    }

    let angles: BTreeSet<AngleKey> = groups.keys().map(|(a, _)| *a).collect();
    let mut common: BTreeMap<AngleKey, BTreeSet<&str>> = BTreeMap::new();
    for &a in &angles {
        let mut set: Option<BTreeSet<&str>> = None;
        for ((ga, _), g) in &groups {
            if *ga != a {
                continue;
            }
            let solved: BTreeSet<&str> = g.solved.keys().copied().collect();
            set = Some(match set {
                None => solved,
                Some(s) => s.intersection(&solved).copied().collect(),
            });
        }
        common.insert(a, set.unwrap_or_default());
    }

    let mean_angle_of = |g: &Group, set: &BTreeSet<&str>| {
        mean(
            set.iter()
                .filter_map(|id| g.solved.get(id)?.accumulated_angle),
        )
    };
    let baseline_norm = angles.iter().find_map(|a| {
        let g = groups.get(&(*a, baseline))?;
        mean_angle_of(g, &common[a]).filter(|m| *m > 0.0)
    });

    let mut rows = Vec::with_capacity(groups.len());
    for ((a, alg), g) in &groups {
        let set = &common[a];
        let instances = g.ran.len();
        let solved = g.solved.len();
        let success_rate = 100.0 * solved as f64 / instances as f64;
        let base = groups.get(&(*a, baseline));
        let (success_delta, rescue_rate) = match base {
            Some(b) if *alg != baseline => {
                let base_rate = 100.0 * b.solved.len() as f64 / b.ran.len() as f64;
                let unsolved: Vec<&str> = b
                    .ran
                    .iter()
                    .filter(|id| !b.solved.contains_key(*id))
                    .copied()
                    .collect();
                let rescued = unsolved
                    .iter()
                    .filter(|id| g.solved.contains_key(*id))
                    .count();
                let rescue =
                    (!unsolved.is_empty()).then(|| 100.0 * rescued as f64 / unsolved.len() as f64);
                (Some(success_rate - base_rate), rescue)
            }
            _ => (None, None),
        };
        let mut runtimes: Vec<f64> = set
            .iter()
            .filter_map(|id| g.solved.get(id).map(|r| r.runtime_s))
            .collect();
        let mean_angle = mean_angle_of(g, set);
        rows.push(ReportRow {
            algorithm: alg.to_string(),
            alpha_max: a.value(),
            instances,
            solved,
            success_rate,
            success_delta,
            rescue_rate,
            common_solved: set.len(),
            median_runtime_s: median(&mut runtimes),
            mean_path_length: mean(set.iter().filter_map(|id| g.solved.get(id)?.path_length)),
            mean_accumulated_angle: mean_angle,
            normalized_angle: match (mean_angle, baseline_norm) {
                (Some(m), Some(b)) => Some(m / b),
                _ => None,
            },
        });
    }
    Ok(AggregateReport {
        baseline: baseline.to_string(),
        rows,
    })
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    baseline: String,
    algorithm: String,
    alpha_max: f64,
    instances: usize,
    solved: usize,
    success_rate: f64,
    success_delta: Option<f64>,
    rescue_rate: Option<f64>,
    common_solved: usize,
    median_runtime_s: Option<f64>,
    mean_path_length: Option<f64>,
    mean_accumulated_angle: Option<f64>,
    normalized_angle: Option<f64>,
}

impl CsvRow {
    fn new(baseline: &str, r: &ReportRow) -> Self {
        CsvRow {
            baseline: baseline.to_string(),
            algorithm: r.algorithm.clone(),
            alpha_max: r.alpha_max,
            instances: r.instances,
            solved: r.solved,
            success_rate: r.success_rate,
            success_delta: r.success_delta,
            rescue_rate: r.rescue_rate,
            common_solved: r.common_solved,
            median_runtime_s: r.median_runtime_s,
            mean_path_length: r.mean_path_length,
            mean_accumulated_angle: r.mean_accumulated_angle,
            normalized_angle: r.normalized_angle,
        }
    }

    fn into_row(self) -> (String, ReportRow) {
        (
            self.baseline,
            ReportRow {
                algorithm: self.algorithm,
                alpha_max: self.alpha_max,
                instances: self.instances,
                solved: self.solved,
                success_rate: self.success_rate,
                success_delta: self.success_delta,
                rescue_rate: self.rescue_rate,
                common_solved: self.common_solved,
                median_runtime_s: self.median_runtime_s,
                mean_path_length: self.mean_path_length,
                mean_accumulated_angle: self.mean_accumulated_angle,
                normalized_angle: self.normalized_angle,
            },
        )
    }
}

/// Serializes a report in the documented CSV or JSON schema.
pub fn emit_report(report: &AggregateReport, format: ReportFormat) -> Result<Vec<u8>, ReportError> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if report.rows.is_empty() {
                w.write_record(CSV_COLUMNS)?;
            }
            for row in &report.rows {
                w.serialize(CsvRow::new(&report.baseline, row))?;
            }
            w.into_inner()
                .map_err(|e| ReportError::Csv(e.into_error().into()))
        }
    }
}

/// Column order of the CSV report.
pub const CSV_COLUMNS: [&str; 13] = [
    "baseline",
    "algorithm",
    "alpha_max",
    "instances",
    "solved",
    "success_rate",
    "success_delta",
    "rescue_rate",
    "common_solved",
    "median_runtime_s",
    "mean_path_length",
    "mean_accumulated_angle",
    "normalized_angle",
];

/// Parses a report produced by [`emit_report`].
pub fn read_report(bytes: &[u8], format: ReportFormat) -> Result<AggregateReport, ReportError> {
    match format {
        ReportFormat::Json => Ok(serde_json::from_slice(bytes)?),
        ReportFormat::Csv => {
            let mut r = csv::Reader::from_reader(bytes);
            let mut report = AggregateReport::default();
            for (i, rec) in r.deserialize::<CsvRow>().enumerate() {
                let (baseline, row) = rec?.into_row();
                if i == 0 {
                    report.baseline = baseline;
                } else if baseline != report.baseline {
                    return Err(ReportError::MixedBaseline);
                }
                report.rows.push(row);
            }
            Ok(report)
        }
    }
}
