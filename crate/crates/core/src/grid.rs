//! Occupancy grids and MovingAI map/scenario ingestion.
//!
//! Coordinates are `(col, row)` with row 0 at the top of the map file, which
//! is the convention used by MovingAI scenario files.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A grid cell. The agent always sits at the cell center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub col: u32,
    pub row: u32,
}

impl Cell {
    pub const fn new(col: u32, row: u32) -> Self {
        Cell { col, row }
    }

    /// Shifts the cell by a signed displacement, returning `None` when the
    /// result would have a negative coordinate.
    pub fn shifted(self, dcol: i32, drow: i32) -> Option<Cell> {
        let col = i64::from(self.col) + i64::from(dcol);
        let row = i64::from(self.row) + i64::from(drow);
        if col < 0 || row < 0 || col > i64::from(u32::MAX) || row > i64::from(u32::MAX) {
            return None;
        }
        Some(Cell::new(col as u32, row as u32))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// Errors raised while reading maps and scenarios. Line numbers are 1-based.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: expected {expected} map rows, found {found}")]
    RowCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: expected row of width {expected}, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unknown terrain character {ch:?}")]
    Terrain { line: usize, ch: char },
    #[error("line {line}: unsupported scenario version {version:?}")]
    Version { line: usize, version: String },
    #[error("line {line}: expected 9 fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: field `{field}` is not a valid number: {value:?}")]
    Number {
        line: usize,
        field: &'static str,
        value: String,
    },
    #[error("line {line}: {what} {cell} lies outside the declared {width}x{height} map")]
    OutOfBounds {
        line: usize,
        what: &'static str,
        cell: Cell,
        width: u32,
        height: u32,
    },
    #[error("line {line}: scenario mixes maps {first:?} and {other:?}")]
    MixedMaps {
        line: usize,
        first: String,
        other: String,
    },
    #[error("empty grid")]
    Empty,
}

/// Errors raised when an instance does not fit a concrete grid.
#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("{what} {cell} is outside the {width}x{height} grid")]
    OutOfBounds {
        what: &'static str,
        cell: Cell,
        width: u32,
        height: u32,
    },
    #[error("{what} {cell} is blocked")]
    Blocked { what: &'static str, cell: Cell },
    #[error("scenario declares a {declared_width}x{declared_height} map but the grid is {width}x{height}")]
    SizeMismatch {
        declared_width: u32,
        declared_height: u32,
        width: u32,
        height: u32,
    },
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

/// Immutable occupancy map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    width: u32,
    height: u32,
    blocked: Vec<bool>,
}

impl Grid {
    /// Builds a grid from a row-major blocked mask.
    ///
    /// Panics if the mask does not hold exactly `width * height` entries or
    /// either dimension is zero.
    pub fn from_blocked(width: u32, height: u32, blocked: Vec<bool>) -> Self {
        assert!(width > 0 && height > 0, "grid dimensions must be positive");
        assert_eq!(
            blocked.len(),
            width as usize * height as usize,
            "blocked mask has the wrong size"
        );
        Grid {
            width,
            height,
            blocked,
        }
    }

    /// All-free grid.
    pub fn empty(width: u32, height: u32) -> Self {
        Self::from_blocked(width, height, vec![false; width as usize * height as usize])
    }

    /// Builds a grid from a predicate over `(col, row)`.
    pub fn from_fn(width: u32, height: u32, mut blocked: impl FnMut(u32, u32) -> bool) -> Self {
        let mut mask = Vec::with_capacity(width as usize * height as usize);
        for row in 0..height {
            for col in 0..width {
                mask.push(blocked(col, row));
            }
        }
        Self::from_blocked(width, height, mask)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn in_bounds(&self, c: Cell) -> bool {
        c.col < self.width && c.row < self.height
    }

    /// `true` when `c` is inside the grid and blocked.
    pub fn is_blocked(&self, c: Cell) -> bool {
        self.in_bounds(c) && self.blocked[self.index(c)]
    }

    /// `true` iff `c` is in bounds and not blocked.
    pub fn is_traversable(&self, c: Cell) -> bool {
        self.in_bounds(c) && !self.blocked[self.index(c)]
    }

    pub fn blocked_count(&self) -> usize {
        self.blocked.iter().filter(|b| **b).count()
    }

    /// Row-major blocked mask.
    pub fn blocked_mask(&self) -> &[bool] {
        &self.blocked
    }

    /// Returns a copy of the grid with the given cells' state changed.
    pub fn with_cells(&self, cells: &[Cell], blocked: bool) -> Grid {
        let mut g = self.clone();
        for &c in cells {
            if g.in_bounds(c) {
                let i = g.index(c);
                g.blocked[i] = blocked;
            }
        }
        g
    }

    /// Iterates over blocked cells in row-major order.
    pub fn blocked_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let w = self.width;
        self.blocked
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(move |(i, _)| Cell::new(i as u32 % w, i as u32 / w))
    }

    /// Renders the grid in the minimal ASCII format (`#` blocked, `.` free).
    pub fn to_ascii(&self) -> String {
        let mut out = String::with_capacity((self.width as usize + 1) * self.height as usize);
        for row in 0..self.height {
            for col in 0..self.width {
                out.push(if self.is_blocked(Cell::new(col, row)) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    /// Checks that `c` is a usable start or goal on this grid.
    pub fn check_endpoint(&self, what: &'static str, c: Cell) -> Result<(), InstanceError> {
        if !self.in_bounds(c) {
            return Err(InstanceError::OutOfBounds {
                what,
                cell: c,
                width: self.width,
                height: self.height,
            });
        }
        if self.is_blocked(c) {
            return Err(InstanceError::Blocked { what, cell: c });
        }
        Ok(())
    }

    /// Reads a MovingAI `.map` file.
    pub fn load_map(path: impl AsRef<Path>) -> Result<Grid, LoadError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.display().to_string(),
            source,
        })?;
        parse_map(&text).map_err(|source| LoadError::Parse {
            path: path.display().to_string(),
            source,
        })
    }

    fn index(&self, c: Cell) -> usize {
        c.row as usize * self.width as usize + c.col as usize
    }
}

/// Free-standing form of [`Grid::is_traversable`].
pub fn is_traversable(grid: &Grid, c: Cell) -> bool {
    grid.is_traversable(c)
}

/// Terrain classification for MovingAI maps: `Some(true)` when blocked.
pub fn terrain_blocked(ch: char) -> Option<bool> {
    match ch {
        '.' | 'G' | 'S' => Some(false),
        '@' | 'O' | 'T' | 'W' => Some(true),
        _ => None,
    }
}

/// Parses a MovingAI `.map` file.
pub fn parse_map(text: &str) -> Result<Grid, ParseError> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r')).enumerate();
    let mut width: Option<u32> = None;
    let mut height: Option<u32> = None;
    let mut seen_type = false;
    let mut header_end = 0;

    loop {
        let Some((i, line)) = lines.next() else {
            return Err(ParseError::Header {
                line: header_end + 1,
                reason: "missing `map` line".into(),
            });
        };
        let lineno = i + 1;
        header_end = lineno;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap_or_default();
        let value = parts.next();
        match (key, value) {
            ("type", Some(_)) => seen_type = true,
            ("height", Some(v)) => height = Some(parse_dim(v, lineno, "height")?),
            ("width", Some(v)) => width = Some(parse_dim(v, lineno, "width")?),
            ("map", None) => break,
            _ => {
                return Err(ParseError::Header {
                    line: lineno,
                    reason: format!("unexpected header line {line:?}"),
                })
            }
        }
    }

    let (Some(width), Some(height)) = (width, height) else {
        return Err(ParseError::Header {
            line: header_end,
            reason: "header must declare both height and width".into(),
        });
    };
    if !seen_type {
        return Err(ParseError::Header {
            line: 1,
            reason: "missing `type` line".into(),
        });
    }

    let mut blocked = Vec::with_capacity(width as usize * height as usize);
    let mut rows = 0usize;
    let mut last_line = header_end;
    for (i, line) in lines {
        let lineno = i + 1;
        if rows == height as usize {
            if line.trim().is_empty() {
                continue;
            }
            return Err(ParseError::RowCount {
                line: lineno,
                expected: height as usize,
                found: rows + 1,
            });
        }
        let len = line.chars().count();
        if len != width as usize {
            return Err(ParseError::RowLength {
                line: lineno,
                expected: width as usize,
                found: len,
            });
        }
        for ch in line.chars() {
            let b = terrain_blocked(ch).ok_or(ParseError::Terrain { line: lineno, ch })?;
            blocked.push(b);
        }
        rows += 1;
        last_line = lineno;
    }
    if rows != height as usize {
        return Err(ParseError::RowCount {
            line: last_line + 1,
            expected: height as usize,
            found: rows,
        });
    }
    Ok(Grid::from_blocked(width, height, blocked))
}

fn parse_dim(v: &str, line: usize, field: &'static str) -> Result<u32, ParseError> {
    match v.parse::<u32>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(ParseError::Header {
            line,
            reason: format!("{field} must be a positive integer, got {v:?}"),
        }),
    }
}

/// Parses the minimal ASCII grid format: `#` blocked, `.` free, one row per
/// line, no header. Blank lines are ignored.
pub fn parse_ascii(text: &str) -> Result<Grid, ParseError> {
    let mut width = None;
    let mut height = 0u32;
    let mut blocked = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 1;
        let len = line.chars().count();
        let w = *width.get_or_insert(len);
        if len != w {
            return Err(ParseError::RowLength {
                line: lineno,
                expected: w,
                found: len,
            });
        }
        for ch in line.chars() {
            match ch {
                '#' => blocked.push(true),
                '.' => blocked.push(false),
                _ => return Err(ParseError::Terrain { line: lineno, ch }),
            }
        }
        height += 1;
    }
    match width {
        Some(w) if w > 0 => Ok(Grid::from_blocked(w as u32, height, blocked)),
        _ => Err(ParseError::Empty),
    }
}

/// One start/goal task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub map_id: String,
    pub start: Cell,
    pub goal: Cell,
    pub bucket: Option<u32>,
    pub reference_length: Option<f64>,
}

impl Instance {
    pub fn new(map_id: impl Into<String>, start: Cell, goal: Cell) -> Self {
        Instance {
            map_id: map_id.into(),
            start,
            goal,
            bucket: None,
            reference_length: None,
        }
    }

    /// Rejects instances whose endpoints are off-grid or blocked.
    pub fn validate(&self, grid: &Grid) -> Result<(), InstanceError> {
        grid.check_endpoint("start", self.start)?;
        grid.check_endpoint("goal", self.goal)
    }
}

/// Instances of a single map, in file order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScenarioSet {
    pub map_id: String,
    /// Map size declared by the scenario rows, if any rows were present.
    pub declared_size: Option<(u32, u32)>,
    pub instances: Vec<Instance>,
}

impl ScenarioSet {
    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Checks every instance against the loaded grid. Blocked endpoints are
    /// data errors and are rejected here rather than surfacing as search
    /// failures.
    pub fn validate_against(&self, grid: &Grid) -> Result<(), InstanceError> {
        if let Some((w, h)) = self.declared_size {
            if (w, h) != (grid.width(), grid.height()) {
                return Err(InstanceError::SizeMismatch {
                    declared_width: w,
                    declared_height: h,
                    width: grid.width(),
                    height: grid.height(),
                });
            }
        }
        self.instances
            .iter()
            .try_for_each(|inst| inst.validate(grid))
    }

    /// Keeps the `total` instances from the highest buckets (longest
    /// reference length first within a bucket).
    pub fn hardest(&self, total: usize) -> ScenarioSet {
        let mut sorted: Vec<&Instance> = self.instances.iter().collect();
        sorted.sort_by(|a, b| {
            b.bucket.cmp(&a.bucket).then_with(|| {
                let la = a.reference_length.unwrap_or(0.0);
                let lb = b.reference_length.unwrap_or(0.0);
                lb.total_cmp(&la)
            })
        });
        ScenarioSet {
            map_id: self.map_id.clone(),
            declared_size: self.declared_size,
            instances: sorted.into_iter().take(total).cloned().collect(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ScenarioSet, LoadError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.display().to_string(),
            source,
        })?;
        parse_scen(&text).map_err(|source| LoadError::Parse {
            path: path.display().to_string(),
            source,
        })
    }
}

/// Parses a MovingAI `.scen` file (version 1).
pub fn parse_scen(text: &str) -> Result<ScenarioSet, ParseError> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r')).enumerate();
    loop {
        let Some((i, line)) = lines.next() else {
            return Err(ParseError::Version {
                line: 1,
                version: String::new(),
            });
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let version = line.strip_prefix("version").map(str::trim);
        match version {
            Some(v) if v.parse::<f64>() == Ok(1.0) => break,
            Some(v) => {
                return Err(ParseError::Version {
                    line: i + 1,
                    version: v.to_string(),
                })
            }
            None => {
                return Err(ParseError::Version {
                    line: i + 1,
                    version: line.to_string(),
                })
            }
        }
    }

    let mut set = ScenarioSet::default();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = if line.contains('\t') {
            line.split('\t').map(str::trim).collect()
        } else {
            line.split_whitespace().collect()
        };
        if fields.len() != 9 {
            return Err(ParseError::FieldCount {
                line: lineno,
                found: fields.len(),
            });
        }
        let num = |idx: usize, name: &'static str| -> Result<u32, ParseError> {
            fields[idx].parse::<u32>().map_err(|_| ParseError::Number {
                line: lineno,
                field: name,
                value: fields[idx].to_string(),
            })
        };
        let bucket = num(0, "bucket")?;
        let map_id = fields[1].to_string();
        let width = num(2, "map width")?;
        let height = num(3, "map height")?;
        let start = Cell::new(num(4, "start col")?, num(5, "start row")?);
        let goal = Cell::new(num(6, "goal col")?, num(7, "goal row")?);
        let reference_length = fields[8]
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v >= 0.0)
            .ok_or_else(|| ParseError::Number {
                line: lineno,
                field: "optimal length",
                value: fields[8].to_string(),
            })?;

        for (what, cell) in [("start", start), ("goal", goal)] {
            if cell.col >= width || cell.row >= height {
                return Err(ParseError::OutOfBounds {
                    line: lineno,
                    what,
                    cell,
                    width,
                    height,
                });
            }
        }
        if set.instances.is_empty() {
            set.map_id = map_id.clone();
            set.declared_size = Some((width, height));
        } else if set.map_id != map_id {
            return Err(ParseError::MixedMaps {
                line: lineno,
                first: set.map_id.clone(),
                other: map_id,
            });
        }
        set.instances.push(Instance {
            map_id,
            start,
            goal,
            bucket: Some(bucket),
            reference_length: Some(reference_length),
        });
    }
    Ok(set)
}
