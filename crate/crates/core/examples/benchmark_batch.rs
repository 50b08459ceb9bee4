//! Runs the three standard configurations over random maps and prints the
//! aggregate report as CSV.
//!
//!     cargo run --release --example benchmark_batch [maps] [instances-per-map]

use std::sync::Arc;

use rand::{Rng, SeedableRng};

use elian::grid::{Cell, Grid, Instance, ScenarioSet};
use elian::harness::{aggregate, emit_report, run_batch, standard_configs, BatchJob, ReportFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let maps = args.next().transpose()?.unwrap_or(4);
    let per_map = args.next().transpose()?.unwrap_or(10);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let mut jobs = Vec::new();
    for m in 0..maps {
        // scattered square blocks
        let blocks: Vec<(u32, u32)> = (0..60)
            .map(|_| (rng.gen_range(0..120), rng.gen_range(0..120)))
            .collect();
        let grid = Grid::from_fn(128, 128, |c, r| {
            blocks
                .iter()
                .any(|&(bc, br)| (bc..bc + 6).contains(&c) && (br..br + 6).contains(&r))
        });
        let name = format!("random-{m}.map");
        let mut instances = Vec::new();
        while instances.len() < per_map {
            let a = Cell::new(rng.gen_range(0..128), rng.gen_range(0..128));
            let b = Cell::new(rng.gen_range(0..128), rng.gen_range(0..128));
            if a != b && grid.is_traversable(a) && grid.is_traversable(b) {
                instances.push(Instance::new(&name, a, b));
            }
        }
        let set = ScenarioSet {
            map_id: name,
            declared_size: None,
            instances,
        };
        jobs.push(BatchJob::from_grid(set, Arc::new(grid)));
    }

    let configs = standard_configs(Some(std::time::Duration::from_secs(5)));
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let out = run_batch(&jobs, &configs, threads);
    eprintln!("{} runs, {} errors", out.records.len(), out.errors.len());

    let report = aggregate(&out.records, "LIAN-20")?;
    print!(
        "{}",
        String::from_utf8(emit_report(&report, ReportFormat::Csv)?)?
    );
    Ok(())
}
