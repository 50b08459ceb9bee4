//! Checks hand-written paths against line of sight and a turn limit.
//!
//!     cargo run --example validate_path

use elian::geometry::Degrees;
use elian::grid::{Cell, Grid};
use elian::planner::{max_turn, validate_path};

fn main() {
    let grid = Grid::empty(30, 30).with_cells(&[Cell::new(10, 10)], true);
    let c = Cell::new;
    let paths = [
        ("straight", vec![c(0, 0), c(20, 0)]),
        ("gentle", vec![c(0, 0), c(10, 0), c(19, 4)]),
        ("sharp", vec![c(0, 0), c(10, 0), c(10, 8)]),
        ("through a wall", vec![c(5, 5), c(15, 15)]),
        ("one point", vec![c(3, 3)]),
    ];
    let limit = Degrees::new(25.0);
    for (name, path) in paths {
        let verdict = match validate_path(&grid, &path, limit) {
            Ok(()) => "ok".to_string(),
            Err(v) => format!("{} ({v})", v.kind()),
        };
        println!("{name:<15} max turn {:>6.2}  {verdict}", max_turn(&path));
    }
}
