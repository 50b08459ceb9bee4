//! Plans across an open 64×64 grid with LIAN and eLIAN and prints both
//! paths.
//!
//!     cargo run --example plan_open_grid

use elian::grid::{Cell, Grid};
use elian::planner::{accumulated_angle, path_length, search, PlannerConfig};

fn main() {
    let grid = Grid::empty(64, 64);
    let (start, goal) = (Cell::new(3, 5), Cell::new(58, 47));

    for cfg in [
        PlannerConfig::lian(20.0, 25.0).with_weight(2.0),
        PlannerConfig::elian(20.0, 5.0, 25.0).with_weight(2.0),
    ] {
        let out = search(&grid, start, goal, &cfg).expect("valid instance");
        let path = out.path.expect("an open grid is always solvable here");
        let pts: Vec<String> = path.iter().map(ToString::to_string).collect();
        println!("{}", cfg.label());
        println!("  path       {}", pts.join(" -> "));
        println!("  length     {:.3}", path_length(&path));
        println!("  turning    {:.3} deg", accumulated_angle(&path));
        println!("  expansions {}", out.stats.expansions);
    }
}
