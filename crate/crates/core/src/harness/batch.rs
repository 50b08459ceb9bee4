use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::{instance_id, run_instance, BenchConfig, RunRecord};
use crate::grid::{Grid, ScenarioSet};

/// Where a job's map comes from.
#[derive(Debug, Clone)]
pub enum MapSource {
    File(PathBuf),
    Loaded(Arc<Grid>),
}

/// One scenario set together with its map.
#[derive(Debug, Clone)]
pub struct BatchJob {
    pub scenario: ScenarioSet,
    pub map: MapSource,
}

impl BatchJob {
    pub fn from_file(scenario: ScenarioSet, map: impl Into<PathBuf>) -> Self {
        BatchJob {
            scenario,
            map: MapSource::File(map.into()),
        }
    }

    pub fn from_grid(scenario: ScenarioSet, grid: Arc<Grid>) -> Self {
        BatchJob {
            scenario,
            map: MapSource::Loaded(grid),
        }
    }

    /// Resolves the scenario's map name inside `maps_dir` by file name.
    pub fn in_dir(scenario: ScenarioSet, maps_dir: &Path) -> Self {
        let name = Path::new(&scenario.map_id)
            .file_name()
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(&scenario.map_id));
        Self::from_file(scenario, maps_dir.join(name))
    }
}

/// A job or instance that could not be run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchError {
    pub map_id: String,
    pub instance_id: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct BatchOutcome {
    /// Ordered by job, then instance, then config.
    pub records: Vec<RunRecord>,
    pub errors: Vec<BatchError>,
}

/// Runs every config on every instance, `parallelism` runs at a time.
pub fn run_batch(jobs: &[BatchJob], configs: &[BenchConfig], parallelism: usize) -> BatchOutcome {
    run_batch_with(jobs, configs, parallelism, |_| {})
}

/// Like [`run_batch`], calling `on_record` as soon as each run finishes
/// (in completion order).
pub fn run_batch_with(
    jobs: &[BatchJob],
    configs: &[BenchConfig],
    parallelism: usize,
    on_record: impl Fn(&RunRecord) + Sync,
) -> BatchOutcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        let mut errors = Vec::new();
        let mut grids: Vec<Option<Arc<Grid>>> = Vec::with_capacity(jobs.len());
        for job in jobs {
            match load(job) {
                Ok(g) => grids.push(Some(g)),
                Err(message) => {
                    errors.push(BatchError {
                        map_id: job.scenario.map_id.clone(),
                        instance_id: None,
                        message,
                    });
                    grids.push(None);
                }
            }
        }

        let tasks: Vec<(usize, usize, usize)> = jobs
            .iter()
            .enumerate()
            .filter(|(j, _)| grids[*j].is_some())
            .flat_map(|(j, job)| {
                (0..job.scenario.instances.len())
                    .flat_map(move |i| (0..configs.len()).map(move |c| (j, i, c)))
            })
            .collect();

        let results: Vec<Result<RunRecord, BatchError>> = tasks
            .par_iter()
            .map(|&(j, i, c)| {
                let job = &jobs[j];
                let grid = grids[j].as_ref().expect("loaded");
                let inst = &job.scenario.instances[i];
                let id = instance_id(&job.scenario.map_id, i);
                let res = run_instance(grid, &id, inst, &configs[c]);
                if let Ok(r) = &res {
                    on_record(r);
                }
                res.map_err(|e| BatchError {
                    map_id: job.scenario.map_id.clone(),
                    instance_id: Some(id),
                    message: e.to_string(),
                })
            })
            .collect();

        let mut records = Vec::with_capacity(results.len());
        for r in results {
            match r {
                Ok(rec) => records.push(rec),
                Err(e) => {
                    // one error per instance, not per config
                    if !errors.contains(&e) {
                        errors.push(e);
                    }
                }
            }
        }
        BatchOutcome { records, errors }
    })
}

fn load(job: &BatchJob) -> Result<Arc<Grid>, String> {
    let grid = match &job.map {
        MapSource::Loaded(g) => g.clone(),
        MapSource::File(p) => Arc::new(Grid::load_map(p).map_err(|e| e.to_string())?),
    };
    if let Some((w, h)) = job.scenario.declared_size {
        if (w, h) != (grid.width(), grid.height()) {
            return Err(format!(
                "scenario declares {w}x{h} but map is {}x{}",
                grid.width(),
                grid.height()
            ));
        }
    }
    Ok(grid)
}
