//! Plans around a few blocks and writes the map and path as SVG.
//!
//!     cargo run --example render_svg -- out.svg

use elian::grid::{Cell, Grid};
use elian::harness::render_svg;
use elian::planner::{search, PlannerConfig};

fn main() -> std::io::Result<()> {
    let target = std::env::args().nth(1).unwrap_or_else(|| "path.svg".into());
    let grid = Grid::from_fn(60, 40, |c, r| {
        ((10..14).contains(&c) && r < 28)
            || ((30..34).contains(&c) && r > 12)
            || ((44..56).contains(&c) && (18..22).contains(&r))
    });
    let cfg = PlannerConfig::elian(10.0, 2.5, 30.0).with_weight(2.0);
    let out = search(&grid, Cell::new(2, 2), Cell::new(57, 37), &cfg).expect("valid instance");
    println!(
        "{:?}, {} waypoints",
        out.verdict,
        out.path.as_ref().map_or(0, Vec::len)
    );
    let mut file = std::fs::File::create(&target)?;
    render_svg(&grid, out.path.as_deref().unwrap_or(&[]), &mut file)?;
    println!("wrote {target}");
    Ok(())
}
