//! Independent checker for angle-constrained paths and path metrics.

use thiserror::Error;

use crate::geometry::{euclid, line_of_sight, turn_angle, Degrees};
use crate::grid::{Cell, Grid};

/// First reason a path is rejected.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathViolation {
    #[error("a path needs at least 2 waypoints, got {len}")]
    TooShort { len: usize },
    #[error("segment {index} -> {} has no line of sight", index + 1)]
    LineOfSight { index: usize },
    #[error("waypoint {index} repeats its predecessor")]
    Degenerate { index: usize },
    #[error("turn of {angle:.6}° at waypoint {index} exceeds the limit")]
    Angle { index: usize, angle: f64 },
}

impl PathViolation {
    /// `"los"`, `"angle"`, `"degenerate"` or `"input"`.
    pub fn kind(&self) -> &'static str {
        match self {
            PathViolation::TooShort { .. } => "input",
            PathViolation::LineOfSight { .. } => "los",
            PathViolation::Degenerate { .. } => "degenerate",
            PathViolation::Angle { .. } => "angle",
        }
    }
}

/// Accepts `path` iff every segment has line of sight and every interior
/// turn is at most `alpha_max` (up to the shared angle tolerance).
/// Violations are reported in path order.
pub fn validate_path(grid: &Grid, path: &[Cell], alpha_max: Degrees) -> Result<(), PathViolation> {
    if path.len() < 2 {
        return Err(PathViolation::TooShort { len: path.len() });
    }
    for (i, pair) in path.windows(2).enumerate() {
        if pair[0] == pair[1] {
            return Err(PathViolation::Degenerate { index: i + 1 });
        }
        if !line_of_sight(grid, pair[0], pair[1]) {
            return Err(PathViolation::LineOfSight { index: i });
        }
        if i > 0 {
            let angle = turn_angle(path[i - 1], pair[0], pair[1]);
            if !angle.within(alpha_max) {
                return Err(PathViolation::Angle {
                    index: i,
                    angle: angle.value(),
                });
            }
        }
    }
    Ok(())
}

/// Sum of Euclidean segment lengths.
pub fn path_length(path: &[Cell]) -> f64 {
    path.windows(2).map(|w| euclid(w[0], w[1])).sum()
}

/// Sum of turn angles (degrees) over interior waypoints.
pub fn accumulated_angle(path: &[Cell]) -> f64 {
    path.windows(3)
        .map(|w| turn_angle(w[0], w[1], w[2]).value())
        .sum()
}

/// Largest interior turn angle, 0 for paths with fewer than 3 waypoints.
pub fn max_turn(path: &[Cell]) -> f64 {
    path.windows(3)
        .map(|w| turn_angle(w[0], w[1], w[2]).value())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(col: u32, row: u32) -> Cell {
        Cell::new(col, row)
    }

    #[test]
    fn straight_path_is_fine() {
        let g = Grid::empty(30, 30);
        for a in [0.0, 25.0, 180.0] {
            assert_eq!(
                validate_path(&g, &[c(0, 0), c(20, 0)], Degrees::new(a)),
                Ok(())
            );
        }
    }

    #[test]
    fn sharp_turn_reported_at_index_1() {
        let g = Grid::empty(30, 30);
        let err =
            validate_path(&g, &[c(0, 0), c(10, 0), c(10, 10)], Degrees::new(25.0)).unwrap_err();
        match err {
            PathViolation::Angle { index, angle } => {
                assert_eq!(index, 1);
                assert!((angle - 90.0).abs() < 1e-9);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(err.kind(), "angle");
    }

    #[test]
    fn los_reported_before_later_angle() {
        let g = Grid::empty(30, 30).with_cells(&[c(5, 0)], true);
        let err =
            validate_path(&g, &[c(0, 0), c(10, 0), c(10, 10)], Degrees::new(25.0)).unwrap_err();
        assert_eq!(err, PathViolation::LineOfSight { index: 0 });
    }

    #[test]
    fn short_and_degenerate_paths() {
        let g = Grid::empty(5, 5);
        assert_eq!(
            validate_path(&g, &[c(0, 0)], Degrees::new(30.0)),
            Err(PathViolation::TooShort { len: 1 })
        );
        assert_eq!(
            validate_path(&g, &[c(0, 0), c(0, 0)], Degrees::new(30.0)),
            Err(PathViolation::Degenerate { index: 1 })
        );
    }

    #[test]
    fn metrics() {
        let p = [c(0, 0), c(3, 4), c(3, 10)];
        assert!((path_length(&p) - 11.0).abs() < 1e-12);
        let expected = turn_angle(p[0], p[1], p[2]).value();
        assert!((accumulated_angle(&p) - expected).abs() < 1e-12);
        assert_eq!(accumulated_angle(&p[..2]), 0.0);
        assert_eq!(max_turn(&p), expected);
    }
}
