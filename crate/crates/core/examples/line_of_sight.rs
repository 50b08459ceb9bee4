//! Which cells a segment crosses, and how corners are treated.
//!
//!     cargo run --example line_of_sight

use elian::geometry::{line_of_sight, traverse};
use elian::grid::{Cell, Grid};

fn main() {
    let (a, b) = (Cell::new(0, 0), Cell::new(3, 3));
    let t = traverse(a, b);
    println!(
        "{a} -> {b} crosses {:?}",
        t.cells.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    for (p, q) in &t.corners {
        println!("  passes the corner between {p} and {q}");
    }

    let one = Grid::empty(4, 4).with_cells(&[Cell::new(1, 0)], true);
    let both = one.with_cells(&[Cell::new(0, 1)], true);
    println!(
        "one diagonal neighbour blocked:  visible = {}",
        line_of_sight(&one, a, b)
    );
    println!(
        "both diagonal neighbours blocked: visible = {}",
        line_of_sight(&both, a, b)
    );

    let (c, d) = (Cell::new(0, 0), Cell::new(3, 1));
    let wall = Grid::empty(4, 4).with_cells(&[Cell::new(2, 1)], true);
    println!(
        "{c} -> {d} through a blocked (2,1): visible = {}",
        line_of_sight(&wall, c, d)
    );
}
