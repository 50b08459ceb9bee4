//! Angle-constrained path finding on grids.
//!
//! Paths are polylines between cell centers whose consecutive segments turn
//! by at most a fixed angle. [`planner`] implements LIAN (fixed segment
//! length) and eLIAN (segment length adjusted during search), [`geometry`]
//! holds the line-of-sight and circle primitives they are built on,
//! [`grid`] reads MovingAI maps and scenarios, and [`harness`] runs and
//! summarises benchmark batches.

pub mod geometry;
pub mod grid;
pub mod harness;
pub mod planner;

pub use geometry::Degrees;
pub use grid::{Cell, Grid, Instance, ScenarioSet};
pub use planner::{search, Mode, Outcome, PlannerConfig, Verdict};
