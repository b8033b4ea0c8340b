//! Independent ground truth for small instances.

mod lattice;
mod pairs;
mod topology;

pub use lattice::{brute_force, brute_force_bcu, brute_force_wcu, Objective, DEFAULT_BUDGET};
pub use pairs::{pair_decision, DecisionMode, PairDecision, EXHAUSTIVE_PAIR_LIMIT};
pub use topology::{labeled_trees, topology_bcu, TopologyOptions};

use crate::instance::Selection;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    /// Cartesian product of per-region lattices.
    Lattice,
    /// Spanning-tree shapes with a convex program per shape.
    Topology,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub alpha: f64,
    pub selection: Selection,
    /// Lattice resolution; 0 for methods that do not sample.
    pub grid: usize,
    /// True when the value is exact for the instance rather than for a sample of it.
    pub exhaustive: bool,
    pub method: OracleMethod,
    /// Combinations or programs actually evaluated.
    pub evaluated: u64,
}
