//! LIAN / eLIAN search.
//!
//! A node is identified by its cell and its parent's cell; the parent fixes
//! the incoming heading used by the turn-angle test. In eLIAN each node also
//! carries its own segment length Δ, taken from the ladder
//! `Δ_max, Δ_max·k, Δ_max·k², …` down to `Δ_min`:
//!
//! * a node whose expansion yields no successors goes back to OPEN one rung
//!   lower, or is dropped when no rung is left;
//! * children move one rung up when their parent and grandparent (more
//!   generally, a chain of `success_streak` nodes) expanded at the same Δ.
//!
//! LIAN is the one-rung special case.

mod config;
mod search;
mod validate;

pub use config::{ConfigError, Mode, PlannerConfig};
pub use search::{
    circle_radius, delta_successors, delta_successors_with, reconstruct_path, search, Expansion,
    NodeId, Outcome, SearchError, SearchNode, SearchState, SearchStats, Verdict,
};
pub use validate::{accumulated_angle, max_turn, path_length, validate_path, PathViolation};
