use std::fmt::Write as _;
use std::io;

use crate::grid::{Cell, Grid};

/// Pixels per cell.
const CELL_PX: u32 = 4;

/// Draws the grid (one `rect.blocked` per blocked cell), the path as a
/// polyline through cell centers and circles marking start and goal.
/// Output is a pure function of the inputs.
pub fn render_svg(grid: &Grid, path: &[Cell], out: &mut impl io::Write) -> io::Result<()> {
    out.write_all(svg_string(grid, path).as_bytes())
}

pub fn svg_string(grid: &Grid, path: &[Cell]) -> String {
    let (w, h) = (grid.width() * CELL_PX, grid.height() * CELL_PX);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect class="free" x="0" y="0" width="{w}" height="{h}" fill="white"/>"#
    );
    let _ = writeln!(s, r##"<g fill="#404040">"##);
    for c in grid.blocked_cells() {
        let _ = writeln!(
            s,
            r#"<rect class="blocked" x="{}" y="{}" width="{CELL_PX}" height="{CELL_PX}"/>"#,
            c.col * CELL_PX,
            c.row * CELL_PX
        );
    }
    s.push_str("</g>\n");

    let center = |c: Cell| {
        let half = CELL_PX as f64 / 2.0;
        (
            f64::from(c.col * CELL_PX) + half,
            f64::from(c.row * CELL_PX) + half,
        )
    };
    if !path.is_empty() {
        let points: Vec<String> = path
            .iter()
            .map(|c| {
                let (x, y) = center(*c);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polyline class="path" points="{}" fill="none" stroke="#d62728" stroke-width="1.5"/>"##,
            points.join(" ")
        );
        for (class, cell, colour) in [
            ("start", path[0], "#2ca02c"),
            ("goal", path[path.len() - 1], "#1f77b4"),
        ] {
            let (x, y) = center(cell);
            let _ = writeln!(
                s,
                r#"<circle class="{class}" cx="{x}" cy="{y}" r="{}" fill="{colour}"/>"#,
                CELL_PX
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
