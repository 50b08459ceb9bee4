//! Geometric predicates over cell centers: line of sight, discrete circles,
//! turn angles and Euclidean distance.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grid::{Cell, Grid};

/// Slack applied when comparing a turn angle against its limit.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

/// Integer displacement between two cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Offset {
    pub dcol: i32,
    pub drow: i32,
}

impl Offset {
    pub const fn new(dcol: i32, drow: i32) -> Self {
        Offset { dcol, drow }
    }

    pub fn length(self) -> f64 {
        f64::from(self.dcol).hypot(f64::from(self.drow))
    }
}

/// An unsigned angle in degrees, always within `[0, 180]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Degrees(f64);

impl Degrees {
    /// Panics when `value` is outside `[0, 180]` or not finite.
    pub fn new(value: f64) -> Self {
        Self::checked(value).unwrap_or_else(|| panic!("angle {value} outside [0, 180]"))
    }

    pub fn checked(value: f64) -> Option<Self> {
        (value.is_finite() && (0.0..=180.0).contains(&value)).then_some(Degrees(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `self <= limit` up to [`ANGLE_TOLERANCE`].
    pub fn within(self, limit: Degrees) -> bool {
        self.0 <= limit.0 + ANGLE_TOLERANCE
    }
}

impl TryFrom<f64> for Degrees {
    type Error = String;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Degrees::checked(value).ok_or_else(|| format!("angle {value} outside [0, 180]"))
    }
}

impl From<Degrees> for f64 {
    fn from(d: Degrees) -> f64 {
        d.0
    }
}

impl fmt::Display for Degrees {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}°", self.0)
    }
}

/// Euclidean distance between cell centers.
pub fn euclid(a: Cell, b: Cell) -> f64 {
    let dc = f64::from(a.col) - f64::from(b.col);
    let dr = f64::from(a.row) - f64::from(b.row);
    dc.hypot(dr)
}

/// Angle between the moves `prev -> mid` and `mid -> next`.
///
/// Panics if either move has zero length.
pub fn turn_angle(prev: Cell, mid: Cell, next: Cell) -> Degrees {
    assert!(
        prev != mid && mid != next,
        "turn_angle needs two non-degenerate moves"
    );
    let (ux, uy) = delta(prev, mid);
    let (vx, vy) = delta(mid, next);
    let dot = (ux * vx + uy * vy) as f64;
    let cross = (ux * vy - uy * vx).abs() as f64;
    Degrees(cross.atan2(dot).to_degrees().clamp(0.0, 180.0))
}

fn delta(from: Cell, to: Cell) -> (i64, i64) {
    (
        i64::from(to.col) - i64::from(from.col),
        i64::from(to.row) - i64::from(from.row),
    )
}

/// Cells visited by the segment between two cell centers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Traversal {
    /// Cells whose interior the segment crosses, from `a` to `b` inclusive.
    pub cells: Vec<Cell>,
    /// Pairs of cells touched only at a shared corner the segment passes
    /// exactly through. At least one of each pair must be free.
    pub corners: Vec<(Cell, Cell)>,
}

/// Supercover walk from the center of `a` to the center of `b`.
///
/// The walk compares the parametric positions of the next vertical and
/// horizontal grid-line crossings in exact integer arithmetic; a tie means
/// the segment goes through a lattice corner.
pub fn traverse(a: Cell, b: Cell) -> Traversal {
    let (x1, y1) = (i64::from(b.col), i64::from(b.row));
    let (mut x, mut y) = (i64::from(a.col), i64::from(a.row));
    let dx = (x1 - x).abs();
    let dy = (y1 - y).abs();
    let sx = (x1 - x).signum();
    let sy = (y1 - y).signum();
    let cell = |x: i64, y: i64| Cell::new(x as u32, y as u32);

    let mut out = Traversal {
        cells: Vec::with_capacity((dx + dy + 1) as usize),
        corners: Vec::new(),
    };
    out.cells.push(a);
    let (mut ix, mut iy) = (0i64, 0i64);
    while ix < dx || iy < dy {
        // crossing of x-line at t=(ix+1/2)/dx vs y-line at t=(iy+1/2)/dy
        let xt = (2 * ix + 1) * dy;
        let yt = (2 * iy + 1) * dx;
        if ix < dx && iy < dy && xt == yt {
            out.corners.push((cell(x + sx, y), cell(x, y + sy)));
            x += sx;
            y += sy;
            ix += 1;
            iy += 1;
        } else if iy >= dy || (ix < dx && xt < yt) {
            x += sx;
            ix += 1;
        } else {
            y += sy;
            iy += 1;
        }
        out.cells.push(cell(x, y));
    }
    out
}

/// `true` iff the straight segment between the centers of `a` and `b`
/// crosses no blocked cell. A segment through a lattice corner is allowed to
/// squeeze past one blocked diagonal neighbour, but not two.
pub fn line_of_sight(grid: &Grid, a: Cell, b: Cell) -> bool {
    if !grid.in_bounds(a) || !grid.in_bounds(b) {
        return false;
    }
    // Inline walk without allocating; mirrors `traverse`.
    let (x1, y1) = (i64::from(b.col), i64::from(b.row));
    let (mut x, mut y) = (i64::from(a.col), i64::from(a.row));
    let dx = (x1 - x).abs();
    let dy = (y1 - y).abs();
    let sx = (x1 - x).signum();
    let sy = (y1 - y).signum();
    let free = |x: i64, y: i64| !grid.is_blocked(Cell::new(x as u32, y as u32));

    if !free(x, y) {
        return false;
    }
    let (mut ix, mut iy) = (0i64, 0i64);
    while ix < dx || iy < dy {
        let xt = (2 * ix + 1) * dy;
        let yt = (2 * iy + 1) * dx;
        if ix < dx && iy < dy && xt == yt {
            if !free(x + sx, y) && !free(x, y + sy) {
                return false;
            }
            x += sx;
            y += sy;
            ix += 1;
            iy += 1;
        } else if iy >= dy || (ix < dx && xt < yt) {
            x += sx;
            ix += 1;
        } else {
            y += sy;
            iy += 1;
        }
        if !free(x, y) {
            return false;
        }
    }
    true
}

/// Midpoint-circle rasterization of radius `r`, all eight octants,
/// deduplicated and ordered clockwise (screen coordinates, row down)
/// starting at `(r, 0)`.
pub fn circle_offsets(r: u32) -> Vec<Offset> {
    if r == 0 {
        return vec![Offset::new(0, 0)];
    }
    let r = r as i32;
    let mut set = BTreeSet::new();
    let (mut x, mut y) = (r, 0i32);
    let mut err = 1 - r;
    while x >= y {
        for (a, b) in [(x, y), (y, x)] {
            for (sa, sb) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
                set.insert(Offset::new(sa * a, sb * b));
            }
        }
        y += 1;
        if err < 0 {
            err += 2 * y + 1;
        } else {
            x -= 1;
            err += 2 * (y - x) + 1;
        }
    }
    let mut out: Vec<Offset> = set.into_iter().collect();
    out.sort_by(|p, q| clockwise_key(*p).total_cmp(&clockwise_key(*q)));
    out
}

fn clockwise_key(o: Offset) -> f64 {
    let a = f64::from(o.drow).atan2(f64::from(o.dcol));
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Per-search memo of [`circle_offsets`] keyed by radius.
#[derive(Debug, Default, Clone)]
pub struct CircleCache {
    by_radius: HashMap<u32, Vec<Offset>>,
}

impl CircleCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, r: u32) -> &[Offset] {
        self.by_radius.entry(r).or_insert_with(|| circle_offsets(r))
    }
}
