//! A wall with a dog-leg gap three cells wide. With Δ = 8 no sequence of
//! 8-cell segments threads the gap under a 25° turn limit; eLIAN shortens
//! its segments to 4 near the wall and gets through.
//!
//!     cargo run --example narrow_passage

use elian::grid::{Cell, Grid};
use elian::planner::{search, PlannerConfig};

fn passage() -> Grid {
    Grid::from_fn(40, 40, |col, row| {
        if !(18..24).contains(&row) {
            return false;
        }
        let upper = row < 21 && (18..21).contains(&col);
        let lower = row >= 21 && (24..27).contains(&col);
        let link = (20..23).contains(&row) && (18..27).contains(&col);
        !(upper || lower || link)
    })
}

fn draw(grid: &Grid, path: &[Cell]) -> String {
    let mut rows: Vec<Vec<char>> = grid
        .to_ascii()
        .lines()
        .map(|l| l.chars().collect())
        .collect();
    for w in path.windows(2) {
        for c in elian::geometry::traverse(w[0], w[1]).cells {
            rows[c.row as usize][c.col as usize] = '*';
        }
    }
    for &c in path {
        rows[c.row as usize][c.col as usize] = 'o';
    }
    rows.into_iter()
        .map(|r| r.into_iter().collect::<String>() + "\n")
        .collect()
}

fn main() {
    let grid = passage();
    let (start, goal) = (Cell::new(10, 4), Cell::new(28, 35));

    let lian = search(&grid, start, goal, &PlannerConfig::lian(8.0, 25.0)).unwrap();
    println!(
        "LIAN-8     {:?} after {} expansions",
        lian.verdict, lian.stats.expansions
    );

    let cfg = PlannerConfig::elian(8.0, 4.0, 25.0).with_k(0.5);
    let elian = search(&grid, start, goal, &cfg).unwrap();
    println!(
        "eLIAN-8-4  {:?} after {} expansions, {} Δ reductions",
        elian.verdict, elian.stats.expansions, elian.stats.reinsertions
    );
    if let (Some(path), Some(deltas)) = (&elian.path, &elian.segment_deltas) {
        let seg: Vec<String> = deltas.iter().map(|d| d.to_string()).collect();
        println!("segment Δ  {}", seg.join(" "));
        print!("{}", draw(&grid, path));
    }
}
