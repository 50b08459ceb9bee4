//! Best-first search over `(cell, parent cell)` nodes with optional on-line
//! adjustment of the segment length Δ.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::config::{ConfigError, PlannerConfig};
use crate::geometry::{euclid, line_of_sight, turn_angle, CircleCache};
use crate::grid::{Cell, Grid, InstanceError};

#[derive(Debug, Error, PartialEq)]
pub enum SearchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Index of a node in the search arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub struct SearchNode {
    pub cell: Cell,
    pub parent: Option<NodeId>,
    pub g: f64,
    pub f: f64,
    /// Current segment length Δ(s).
    pub delta: f64,
    /// Index of `delta` in the config's Δ ladder (0 = Δ_max).
    pub level: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Found,
    NotFound,
    Timeout,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub expansions: u64,
    pub generated: u64,
    /// Nodes pushed back into OPEN with a reduced Δ.
    pub reinsertions: u64,
    pub max_open: usize,
    #[serde(with = "secs")]
    pub runtime: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub verdict: Verdict,
    /// Waypoints from start to goal, present iff `verdict == Found`.
    pub path: Option<Vec<Cell>>,
    /// Δ of the node that emitted each segment of `path`.
    pub segment_deltas: Option<Vec<f64>>,
    pub stats: SearchStats,
}

impl Outcome {
    pub fn is_found(&self) -> bool {
        self.verdict == Verdict::Found
    }
}

/// What happened to an expanded node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    /// Successors were pushed into OPEN.
    Generated(usize),
    /// No successors; the node went back to OPEN with a smaller Δ.
    Reinserted,
    /// No successors and no smaller Δ left.
    Discarded,
}

#[derive(Debug, Clone, Copy)]
struct OpenEntry {
    f: f64,
    g: f64,
    cell: Cell,
    parent: Option<Cell>,
    seq: u64,
    id: NodeId,
}

impl OpenEntry {
    // smaller f, then larger g, then cell / parent cell, then insertion order
    fn priority(&self, other: &Self) -> Ordering {
        self.f
            .total_cmp(&other.f)
            .then_with(|| other.g.total_cmp(&self.g))
            .then_with(|| (self.cell.col, self.cell.row).cmp(&(other.cell.col, other.cell.row)))
            .then_with(|| {
                let key = |p: Option<Cell>| p.map(|c| (c.col, c.row));
                key(self.parent).cmp(&key(other.parent))
            })
            .then_with(|| self.seq.cmp(&other.seq))
    }
}

impl PartialEq for OpenEntry {
    fn eq(&self, other: &Self) -> bool {
        self.priority(other) == Ordering::Equal
    }
}

impl Eq for OpenEntry {}

impl PartialOrd for OpenEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpenEntry {
    // BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.priority(self)
    }
}

/// Mutable state of one search. Exposed so that single expansions can be
/// driven and inspected step by step; [`search`] runs it to completion.
pub struct SearchState<'g> {
    grid: &'g Grid,
    start: Cell,
    goal: Cell,
    cfg: PlannerConfig,
    levels: Vec<f64>,
    nodes: Vec<SearchNode>,
    open: BinaryHeap<OpenEntry>,
    closed: HashMap<u64, NodeId>,
    circles: CircleCache,
    seq: u64,
    stats: SearchStats,
}

impl<'g> SearchState<'g> {
    /// Validates inputs and seeds OPEN with the start node at Δ_max.
    pub fn new(
        grid: &'g Grid,
        start: Cell,
        goal: Cell,
        cfg: &PlannerConfig,
    ) -> Result<Self, SearchError> {
        cfg.validate()?;
        grid.check_endpoint("start", start)?;
        grid.check_endpoint("goal", goal)?;
        let levels = cfg.delta_levels();
        let mut state = SearchState {
            grid,
            start,
            goal,
            cfg: cfg.clone(),
            levels,
            nodes: Vec::new(),
            open: BinaryHeap::new(),
            closed: HashMap::new(),
            circles: CircleCache::new(),
            seq: 0,
            stats: SearchStats::default(),
        };
        let h = cfg.weight * euclid(start, goal);
        let id = state.add_node(SearchNode {
            cell: start,
            parent: None,
            g: 0.0,
            f: h,
            delta: state.levels[0],
            level: 0,
        });
        state.push(id);
        Ok(state)
    }

    pub fn node(&self, id: NodeId) -> &SearchNode {
        &self.nodes[id.0]
    }

    pub fn nodes(&self) -> &[SearchNode] {
        &self.nodes
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub fn open_len(&self) -> usize {
        self.open.len()
    }

    pub fn config(&self) -> &PlannerConfig {
        &self.cfg
    }

    /// `true` if a node identified by `(cell, parent)` has been expanded.
    pub fn is_closed(&self, cell: Cell, parent: Option<Cell>) -> bool {
        self.closed.contains_key(&self.pair_key(cell, parent))
    }

    /// Adds a node to the arena without touching OPEN.
    pub fn add_node(&mut self, node: SearchNode) -> NodeId {
        self.nodes.push(node);
        NodeId(self.nodes.len() - 1)
    }

    /// Pushes an arena node into OPEN.
    pub fn push(&mut self, id: NodeId) {
        let n = &self.nodes[id.0];
        let entry = OpenEntry {
            f: n.f,
            g: n.g,
            cell: n.cell,
            parent: n.parent.map(|p| self.nodes[p.0].cell),
            seq: self.seq,
            id,
        };
        self.seq += 1;
        self.open.push(entry);
        self.stats.max_open = self.stats.max_open.max(self.open.len());
    }

    /// Records a node in CLOSED under its `(cell, parent cell)` identity.
    pub fn close(&mut self, id: NodeId) {
        let key = self.node_key(id);
        self.closed.insert(key, id);
    }

    /// Removes the best node from OPEN. Entries whose identity was already
    /// closed by a different node are dropped; a node re-inserted with a
    /// smaller Δ is returned again.
    pub fn pop(&mut self) -> Option<NodeId> {
        while let Some(entry) = self.open.pop() {
            match self.closed.get(&self.node_key(entry.id)) {
                Some(owner) if *owner != entry.id => continue,
                _ => return Some(entry.id),
            }
        }
        None
    }

    /// Candidate cells of a node before any pruning: the in-bounds cells of
    /// the discrete circle of radius `round(Δ)` and, when the goal is closer
    /// than Δ, the goal itself.
    pub fn delta_successors(&mut self, id: NodeId) -> Vec<Cell> {
        let node = &self.nodes[id.0];
        let (cell, delta) = (node.cell, node.delta);
        delta_successors_with(&mut self.circles, self.grid, cell, delta, self.goal)
    }

    /// Expands a node that has just been popped and closed.
    pub fn expand(&mut self, id: NodeId) -> Expansion {
        self.stats.expansions += 1;
        let node = self.nodes[id.0].clone();
        let parent_cell = node.parent.map(|p| self.nodes[p.0].cell);
        let candidates = self.delta_successors(id);

        let mut survivors: Vec<Cell> = Vec::with_capacity(candidates.len());
        for c in candidates {
            if c == node.cell || survivors.contains(&c) {
                continue;
            }
            if let Some(p) = parent_cell {
                if !turn_angle(p, node.cell, c).within(self.cfg.alpha_max) {
                    continue;
                }
            }
            if self.is_closed(c, Some(node.cell)) {
                continue;
            }
            if !line_of_sight(self.grid, node.cell, c) {
                continue;
            }
            survivors.push(c);
        }

        if survivors.is_empty() {
            let next = node.level + 1;
            if next < self.levels.len() {
                let n = &mut self.nodes[id.0];
                n.level = next;
                n.delta = self.levels[next];
                self.stats.reinsertions += 1;
                self.push(id);
                return Expansion::Reinserted;
            }
            return Expansion::Discarded;
        }

        let child_level = if self.should_raise(id) {
            node.level - 1
        } else {
            node.level
        };
        let count = survivors.len();
        for c in survivors {
            let g = node.g + euclid(node.cell, c);
            let f = g + self.cfg.weight * euclid(c, self.goal);
            let child = self.add_node(SearchNode {
                cell: c,
                parent: Some(id),
                g,
                f,
                delta: self.levels[child_level],
                level: child_level,
            });
            self.stats.generated += 1;
            self.push(child);
        }
        Expansion::Generated(count)
    }

    /// Δ is raised for the children when the node and its nearest
    /// `success_streak - 1` ancestors all expanded at the node's Δ and that
    /// Δ is below Δ_max.
    fn should_raise(&self, id: NodeId) -> bool {
        let level = self.nodes[id.0].level;
        if level == 0 {
            return false;
        }
        let mut cur = id;
        for _ in 1..self.cfg.success_streak {
            match self.nodes[cur.0].parent {
                Some(p) if self.nodes[p.0].level == level => cur = p,
                _ => return false,
            }
        }
        true
    }

    /// Waypoints from the start to `id`, following back-pointers.
    pub fn reconstruct(&self, id: NodeId) -> Vec<Cell> {
        reconstruct_path(&self.nodes, id)
    }

    /// Runs the main loop to completion.
    pub fn run(mut self) -> Outcome {
        let started = Instant::now();
        let finish = |mut stats: SearchStats, verdict, path, deltas| {
            stats.runtime = started.elapsed();
            Outcome {
                verdict,
                path,
                segment_deltas: deltas,
                stats,
            }
        };
        while let Some(id) = self.pop() {
            if self.nodes[id.0].cell == self.goal {
                let path = self.reconstruct(id);
                let deltas = self.emitter_deltas(id);
                return finish(self.stats, Verdict::Found, Some(path), Some(deltas));
            }
            if let Some(cap) = self.cfg.time_cap {
                if started.elapsed() >= cap {
                    return finish(self.stats, Verdict::Timeout, None, None);
                }
            }
            self.close(id);
            self.expand(id);
        }
        finish(self.stats, Verdict::NotFound, None, None)
    }

    fn emitter_deltas(&self, id: NodeId) -> Vec<f64> {
        let mut out = Vec::new();
        let mut cur = self.nodes[id.0].parent;
        while let Some(p) = cur {
            out.push(self.nodes[p.0].delta);
            cur = self.nodes[p.0].parent;
        }
        out.reverse();
        out
    }

    fn node_key(&self, id: NodeId) -> u64 {
        let n = &self.nodes[id.0];
        self.pair_key(n.cell, n.parent.map(|p| self.nodes[p.0].cell))
    }

    fn pair_key(&self, cell: Cell, parent: Option<Cell>) -> u64 {
        let cells = u64::from(self.grid.width()) * u64::from(self.grid.height());
        let index = |c: Cell| u64::from(c.row) * u64::from(self.grid.width()) + u64::from(c.col);
        index(cell) * (cells + 1) + parent.map_or(0, |p| index(p) + 1)
    }

    #[doc(hidden)]
    pub fn start(&self) -> Cell {
        self.start
    }
}

/// Shared by the search and by tests: candidate successors of `cell` for a
/// given Δ.
pub fn delta_successors_with(
    circles: &mut CircleCache,
    grid: &Grid,
    cell: Cell,
    delta: f64,
    goal: Cell,
) -> Vec<Cell> {
    let radius = circle_radius(delta);
    let mut out: Vec<Cell> = circles
        .get(radius)
        .iter()
        .filter_map(|o| cell.shifted(o.dcol, o.drow))
        .filter(|c| grid.in_bounds(*c))
        .collect();
    if euclid(cell, goal) < delta && !out.contains(&goal) {
        out.push(goal);
    }
    out
}

/// Integer circle radius used for a real-valued Δ.
pub fn circle_radius(delta: f64) -> u32 {
    (delta.round() as u32).max(1)
}

/// Candidate successors of a free-standing node.
pub fn delta_successors(grid: &Grid, cell: Cell, delta: f64, goal: Cell) -> Vec<Cell> {
    delta_successors_with(&mut CircleCache::new(), grid, cell, delta, goal)
}

/// Waypoints from the root of the arena to `id`.
pub fn reconstruct_path(nodes: &[SearchNode], id: NodeId) -> Vec<Cell> {
    let mut path = vec![nodes[id.0].cell];
    let mut cur = nodes[id.0].parent;
    while let Some(p) = cur {
        path.push(nodes[p.0].cell);
        cur = nodes[p.0].parent;
    }
    path.reverse();
    path
}

/// Plans an angle-constrained path from `start` to `goal`.
pub fn search(
    grid: &Grid,
    start: Cell,
    goal: Cell,
    cfg: &PlannerConfig,
) -> Result<Outcome, SearchError> {
    Ok(SearchState::new(grid, start, goal, cfg)?.run())
}

mod secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let v = f64::deserialize(d)?;
        Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom)
    }
}
