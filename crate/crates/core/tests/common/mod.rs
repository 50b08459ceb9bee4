//! Independent oracles and instance generators shared by the integration
//! tests. Nothing here calls into the planner's search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use elian::geometry::{circle_offsets, euclid, line_of_sight, turn_angle, Degrees, Offset};
use elian::grid::{Cell, Grid};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random obstacles with the given density.
pub fn random_grid(rng: &mut ChaCha8Rng, width: u32, height: u32, density: f64) -> Grid {
    Grid::from_fn(width, height, |_, _| rng.gen_bool(density))
}

/// A random free cell, or `None` if the grid is full.
pub fn random_free(rng: &mut ChaCha8Rng, grid: &Grid) -> Option<Cell> {
    if grid.blocked_count() == grid.width() as usize * grid.height() as usize {
        return None;
    }
    loop {
        let c = Cell::new(
            rng.gen_range(0..grid.width()),
            rng.gen_range(0..grid.height()),
        );
        if grid.is_traversable(c) {
            return Some(c);
        }
    }
}

/// Two distinct random free cells, or `None` if fewer than two exist.
pub fn random_pair(rng: &mut ChaCha8Rng, grid: &Grid) -> Option<(Cell, Cell)> {
    let free = grid.width() as usize * grid.height() as usize - grid.blocked_count();
    if free < 2 {
        return None;
    }
    let a = random_free(rng, grid)?;
    loop {
        let b = random_free(rng, grid)?;
        if b != a {
            return Some((a, b));
        }
    }
}

// ---------------------------------------------------------------------------
// Circle oracle

/// Midpoint-circle offsets computed row by row from the closed-form
/// decision rule: for each `y`, `x` is the largest integer with
/// `x² − x + y² − r² < 0` (`x = r` at `y = 0`), stopping once `x < y`.
pub fn circle_oracle(r: u32) -> BTreeSet<Offset> {
    let mut out = BTreeSet::new();
    if r == 0 {
        out.insert(Offset::new(0, 0));
        return out;
    }
    let r = i64::from(r);
    let mut y = 0i64;
    loop {
        let x = if y == 0 {
            Some(r)
        } else {
            (0..=r).rev().find(|&x| x * x - x + y * y - r * r < 0)
        };
        let Some(x) = x else { break };
        if x < y {
            break;
        }
        for (a, b) in [(x, y), (y, x)] {
            for (sa, sb) in [(1, 1), (-1, 1), (1, -1), (-1, -1)] {
                out.insert(Offset::new((sa * a) as i32, (sb * b) as i32));
            }
        }
        y += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Line-of-sight oracle

type Q = Ratio<i64>;

/// Parameter interval `[t0, t1] ⊂ [0, 1]` on which the segment between the
/// centers of `a` and `b` lies in the closed square of `cell`, in doubled
/// integer coordinates.
fn clip(a: Cell, b: Cell, cell: Cell) -> Option<(Q, Q)> {
    let p0 = [2 * i64::from(a.col) + 1, 2 * i64::from(a.row) + 1];
    let p1 = [2 * i64::from(b.col) + 1, 2 * i64::from(b.row) + 1];
    let lo = [2 * i64::from(cell.col), 2 * i64::from(cell.row)];
    let mut t0 = Q::from_integer(0);
    let mut t1 = Q::from_integer(1);
    for k in 0..2 {
        let d = p1[k] - p0[k];
        let (l, h) = (lo[k], lo[k] + 2);
        if d == 0 {
            if p0[k] < l || p0[k] > h {
                return None;
            }
            continue;
        }
        let mut ta = Q::new(l - p0[k], d);
        let mut tb = Q::new(h - p0[k], d);
        if ta > tb {
            std::mem::swap(&mut ta, &mut tb);
        }
        t0 = t0.max(ta);
        t1 = t1.min(tb);
    }
    (t0 <= t1).then_some((t0, t1))
}

/// Exact line of sight: every cell the segment crosses with positive length
/// is free, and at every lattice corner the segment passes through, at
/// least one of the two cells touched only at that corner is free.
pub fn los_oracle(grid: &Grid, a: Cell, b: Cell) -> bool {
    let (c0, c1) = (a.col.min(b.col), a.col.max(b.col));
    let (r0, r1) = (a.row.min(b.row), a.row.max(b.row));
    let mut corner_touch: BTreeMap<(Q, Q), Vec<Cell>> = BTreeMap::new();
    for col in c0.saturating_sub(1)..=c1 + 1 {
        for row in r0.saturating_sub(1)..=r1 + 1 {
            let cell = Cell::new(col, row);
            let Some((t0, t1)) = clip(a, b, cell) else {
                continue;
            };
            if t0 < t1 {
                if !grid.is_traversable(cell) {
                    return false;
                }
            } else {
                let x = Q::from_integer(2 * i64::from(a.col) + 1)
                    + t0 * Q::from_integer(2 * (i64::from(b.col) - i64::from(a.col)));
                let y = Q::from_integer(2 * i64::from(a.row) + 1)
                    + t0 * Q::from_integer(2 * (i64::from(b.row) - i64::from(a.row)));
                corner_touch.entry((x, y)).or_default().push(cell);
            }
        }
    }
    corner_touch
        .values()
        .all(|cells| cells.iter().any(|c| grid.is_traversable(*c)))
}

// ---------------------------------------------------------------------------
// Reachability oracle over (cell, parent) states

/// Breadth-first enumeration of every `(cell, parent)` state reachable with
/// segments drawn from circles of the given radii (goal injected when it is
/// closer than the radius), under line of sight and the turn limit.
/// Returns whether some reachable state sits on the goal, and the number of
/// states visited.
pub fn reachable(
    grid: &Grid,
    start: Cell,
    goal: Cell,
    radii: &[u32],
    alpha: Degrees,
) -> (bool, usize) {
    if start == goal {
        return (true, 1);
    }
    let circles: Vec<(u32, Vec<Offset>)> = radii.iter().map(|&r| (r, circle_offsets(r))).collect();
    let mut seen: HashSet<(Cell, Option<Cell>)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((start, None));
    queue.push_back((start, None::<Cell>));
    while let Some((cell, parent)) = queue.pop_front() {
        for (r, ring) in &circles {
            let mut cands: Vec<Cell> = ring
                .iter()
                .filter_map(|o| cell.shifted(o.dcol, o.drow))
                .filter(|c| grid.in_bounds(*c))
                .collect();
            if euclid(cell, goal) < f64::from(*r) {
                cands.push(goal);
            }
            for next in cands {
                if next == cell {
                    continue;
                }
                if let Some(p) = parent {
                    if !turn_angle(p, cell, next).within(alpha) {
                        continue;
                    }
                }
                if !line_of_sight(grid, cell, next) {
                    continue;
                }
                if next == goal {
                    return (true, seen.len());
                }
                if seen.insert((next, Some(cell))) {
                    queue.push_back((next, Some(cell)));
                }
            }
        }
    }
    (false, seen.len())
}

// ---------------------------------------------------------------------------
// Narrow-passage maps

/// A wall band across the map pierced by a dog-leg passage.
#[derive(Debug, Clone, Copy)]
pub struct Corridor {
    pub width: u32,
    pub height: u32,
    /// First row of the wall band.
    pub wall_row: u32,
    /// Wall band thickness in rows.
    pub thickness: u32,
    /// Passage width in cells.
    pub gap: u32,
    /// Passage column in the upper half of the band.
    pub upper_col: u32,
    /// Passage column in the lower half of the band.
    pub lower_col: u32,
    pub start: Cell,
    pub goal: Cell,
}

impl Corridor {
    pub fn grid(&self) -> Grid {
        let split = self.wall_row + self.thickness / 2;
        let (lo, hi) = (
            self.upper_col.min(self.lower_col),
            self.upper_col.max(self.lower_col) + self.gap,
        );
        Grid::from_fn(self.width, self.height, |col, row| {
            if row < self.wall_row || row >= self.wall_row + self.thickness {
                return false;
            }
            let in_upper = row < split && col >= self.upper_col && col < self.upper_col + self.gap;
            let in_lower = row >= split && col >= self.lower_col && col < self.lower_col + self.gap;
            // the connecting run of the dog-leg, `gap` rows tall
            let in_link = row >= split.saturating_sub(self.gap / 2)
                && row < split.saturating_sub(self.gap / 2) + self.gap
                && col >= lo
                && col < hi;
            !(in_upper || in_lower || in_link)
        })
    }
}
