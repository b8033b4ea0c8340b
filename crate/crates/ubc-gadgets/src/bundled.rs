//! Small hand-made layouts shipped with the crate.

use crate::error::{GadgetError, Result};
use crate::formula::Formula;
use crate::layout::{EdgeKind, EdgePlacement, FormulaLayout, NodePlacement};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundledLayout {
    pub name: String,
    pub formula: Formula,
    pub layout: FormulaLayout,
    /// Found by truth table.
    pub satisfiable: bool,
}

pub const BUNDLED_NAMES: [&str; 4] = ["single", "pair", "tri", "tri-unsat"];

fn node(row: i32, x_min: i32, x_max: i32) -> NodePlacement {
    NodePlacement { row, x_min, x_max }
}

fn cv(clause: usize, slot: usize, column: i32) -> EdgePlacement {
    EdgePlacement { kind: EdgeKind::ClauseVariable { clause, slot }, column }
}

fn vv(lower: usize, upper: usize, column: i32) -> EdgePlacement {
    EdgePlacement { kind: EdgeKind::VariableVariable { lower, upper }, column }
}

fn raw(name: &str) -> Option<(usize, Vec<[i32; 3]>, FormulaLayout)> {
    let (n, clauses, variables, clause_nodes, edges) = match name {
        // x1 or x1 or x1
        "single" => (1, vec![[1, 1, 1]], vec![node(0, 0, 2)], vec![node(1, 0, 2)], vec![cv(0, 0, 0), cv(0, 1, 1), cv(0, 2, 2)]),
        // x1 or x1 or not x2
        "pair" => (
            2,
            vec![[1, 1, -2]],
            vec![node(0, 0, 3), node(1, 2, 3)],
            vec![node(2, 0, 2)],
            vec![cv(0, 0, 0), cv(0, 1, 1), cv(0, 2, 2), vv(0, 1, 3)],
        ),
        // One clause above the variables, one below.
        "tri" => (
            3,
            vec![[1, -2, 3], [-1, 2, -3]],
            vec![node(1, 0, 2), node(2, 2, 5), node(3, 5, 7)],
            vec![node(4, 0, 6), node(0, 1, 7)],
            vec![cv(0, 0, 0), cv(0, 1, 3), cv(0, 2, 6), cv(1, 0, 1), cv(1, 1, 4), cv(1, 2, 7), vv(0, 1, 2), vv(1, 2, 5)],
        ),
        // x1 triple and its negation: no assignment satisfies both.
        "tri-unsat" => (
            3,
            vec![[1, 1, 1], [-1, -1, -1]],
            vec![node(1, 0, 6), node(2, 6, 7), node(3, 7, 7)],
            vec![node(4, 0, 2), node(0, 3, 5)],
            vec![cv(0, 0, 0), cv(0, 1, 1), cv(0, 2, 2), cv(1, 0, 3), cv(1, 1, 4), cv(1, 2, 5), vv(0, 1, 6), vv(1, 2, 7)],
        ),
        _ => return None,
    };
    Some((n, clauses, FormulaLayout { variables, clauses: clause_nodes, edges }))
}

/// The bundled layout called `name`.
pub fn bundled(name: &str) -> Result<BundledLayout> {
    let (n, clauses, layout) = raw(name).ok_or_else(|| GadgetError::UnknownBundled(name.to_string()))?;
    let name = name.to_string();
    let formula = Formula::new(n, clauses)?;
    layout.validate(&formula)?;
    let satisfiable = formula.is_satisfiable()?;
    Ok(BundledLayout { name, formula, layout, satisfiable })
}

pub fn bundled_layouts() -> Vec<BundledLayout> {
    BUNDLED_NAMES.iter().map(|n| bundled(n).expect("bundled layouts are valid")).collect()
}
