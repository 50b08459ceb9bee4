//! Reads a MovingAI map and scenario file and solves the hardest few
//! instances.
//!
//!     cargo run --release --example movingai_ingest -- path/to/x.map path/to/x.map.scen
//!
//! Without arguments a small built-in map is used.

use elian::grid::{parse_map, parse_scen, Grid, ScenarioSet};
use elian::planner::{search, PlannerConfig};

const MAP: &str = "type octile
height 8
width 12
map
............
....@@@.....
....@@@.....
............
..TT....WW..
..TT....WW..
............
............
";

const SCEN: &str = "version 1
0\tdemo.map\t12\t8\t0\t0\t11\t7\t13.3
0\tdemo.map\t12\t8\t0\t7\t11\t0\t13.3
0\tdemo.map\t12\t8\t5\t0\t5\t7\t7.0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (grid, set): (Grid, ScenarioSet) = match args.as_slice() {
        [map, scen] => (Grid::load_map(map)?, ScenarioSet::load(scen)?),
        _ => (parse_map(MAP)?, parse_scen(SCEN)?),
    };
    set.validate_against(&grid)?;
    println!(
        "{}: {}x{}, {} blocked, {} instances",
        set.map_id,
        grid.width(),
        grid.height(),
        grid.blocked_count(),
        set.len()
    );
    let cfg = PlannerConfig::elian(6.0, 1.5, 45.0);
    for inst in set.hardest(5).instances {
        let out = search(&grid, inst.start, inst.goal, &cfg)?;
        println!(
            "  {} -> {}  {:?}  {} waypoints, {} expansions",
            inst.start,
            inst.goal,
            out.verdict,
            out.path.map_or(0, |p| p.len()),
            out.stats.expansions
        );
    }
    Ok(())
}
