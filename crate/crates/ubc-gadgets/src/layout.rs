//! Rectilinear grid layouts of the variable-clause graph.
//!
//! Variables and clauses are horizontal segments on integer rows; every edge is a vertical
//! segment on an integer column joining its two endpoints. Layouts are consumed as input.

use crate::error::{GadgetError, Result};
use crate::formula::Formula;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

/// A horizontal segment `[x_min, x_max]` on grid row `row`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodePlacement {
    pub row: i32,
    pub x_min: i32,
    pub x_max: i32,
}

impl NodePlacement {
    fn covers(&self, column: i32) -> bool {
        self.x_min <= column && column <= self.x_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeKind {
    /// Joins clause `clause` to the variable of its literal in position `slot`.
    ClauseVariable { clause: usize, slot: usize },
    /// Loose link between two variables; `lower` sits on the lower row.
    VariableVariable { lower: usize, upper: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePlacement {
    #[serde(flatten)]
    pub kind: EdgeKind,
    pub column: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaLayout {
    pub variables: Vec<NodePlacement>,
    pub clauses: Vec<NodePlacement>,
    pub edges: Vec<EdgePlacement>,
}

/// Rows and columns must lie in `0..EXTENT_FACTOR * (variables + clauses)`.
pub const EXTENT_FACTOR: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Node {
    Var(usize),
    Clause(usize),
}

/// Which side of a variable gadget an edge attaches to, and with which polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Port {
    PosAbove,
    NegAbove,
    PosBelow,
    NegBelow,
    LooseUp,
    LooseDown,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Attachment {
    pub column: i32,
    pub port: Port,
    pub edge: usize,
}

impl FormulaLayout {
    fn node(&self, n: Node) -> &NodePlacement {
        match n {
            Node::Var(v) => &self.variables[v],
            Node::Clause(c) => &self.clauses[c],
        }
    }

    /// Width and height of the occupied grid.
    pub fn extent(&self) -> (i32, i32) {
        let nodes = self.variables.iter().chain(&self.clauses);
        let w = nodes.clone().map(|n| n.x_max + 1).max().unwrap_or(0);
        let h = nodes.map(|n| n.row + 1).max().unwrap_or(0);
        (w, h)
    }

    pub fn extent_bound(&self) -> i32 {
        EXTENT_FACTOR * (self.variables.len() + self.clauses.len()) as i32
    }

    fn endpoints(&self, f: &Formula, e: &EdgePlacement) -> (Node, Node) {
        match e.kind {
            EdgeKind::ClauseVariable { clause, slot } => {
                (Node::Clause(clause), Node::Var(f.clauses[clause][slot].unsigned_abs() as usize - 1))
            }
            EdgeKind::VariableVariable { lower, upper } => (Node::Var(lower), Node::Var(upper)),
        }
    }

    /// Checks the layout against `f`: counts, grid bound, planarity and the loose-link tree.
    pub fn validate(&self, f: &Formula) -> Result<()> {
        let bad = |m: String| Err(GadgetError::Layout(m));
        let (n, m) = (f.num_vars, f.clauses.len());
        if self.variables.len() != n || self.clauses.len() != m {
            return bad(format!("layout has {} variables and {} clauses, formula has {n} and {m}", self.variables.len(), self.clauses.len()));
        }
        let bound = self.extent_bound();
        let nodes: Vec<Node> = (0..n).map(Node::Var).chain((0..m).map(Node::Clause)).collect();
        for &a in &nodes {
            let p = self.node(a);
            if p.x_min > p.x_max || p.x_min < 0 || p.row < 0 || p.x_max >= bound || p.row >= bound {
                return bad(format!("{a:?} placement {p:?} is outside the grid 0..{bound}"));
            }
        }
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                let (p, q) = (self.node(a), self.node(b));
                if p.row == q.row && p.x_min <= q.x_max && q.x_min <= p.x_max {
                    return bad(format!("{a:?} and {b:?} overlap on row {}", p.row));
                }
            }
        }

        let mut slots = vec![[false; 3]; m];
        let mut tree = UnionFind::<usize>::new(n);
        let mut loose = 0;
        for (k, e) in self.edges.iter().enumerate() {
            match e.kind {
                EdgeKind::ClauseVariable { clause, slot } => {
                    if clause >= m || slot >= 3 {
                        return bad(format!("edge {k} names clause {clause} slot {slot}"));
                    }
                    if std::mem::replace(&mut slots[clause][slot], true) {
                        return bad(format!("clause {clause} slot {slot} has two edges"));
                    }
                }
                EdgeKind::VariableVariable { lower, upper } => {
                    if lower >= n || upper >= n {
                        return bad(format!("edge {k} names variables {lower} and {upper}"));
                    }
                    if self.variables[lower].row >= self.variables[upper].row {
                        return bad(format!("edge {k}: variable {lower} is not below variable {upper}"));
                    }
                    if !tree.union(lower, upper) {
                        return bad(format!("edge {k} closes a cycle among loose links"));
                    }
                    loose += 1;
                }
            }
            let (a, b) = self.endpoints(f, e);
            let (p, q) = (self.node(a), self.node(b));
            if !p.covers(e.column) || !q.covers(e.column) {
                return bad(format!("edge {k} column {} is outside an endpoint", e.column));
            }
            if p.row == q.row {
                return bad(format!("edge {k} joins two nodes on row {}", p.row));
            }
            let (lo, hi) = (p.row.min(q.row), p.row.max(q.row));
            for &c in &nodes {
                let r = self.node(c);
                if c != a && c != b && lo <= r.row && r.row <= hi && r.covers(e.column) {
                    return bad(format!("edge {k} crosses {c:?}"));
                }
            }
            for (j, o) in self.edges[..k].iter().enumerate() {
                if o.column != e.column {
                    continue;
                }
                let (c, d) = self.endpoints(f, o);
                let (olo, ohi) = (self.node(c).row.min(self.node(d).row), self.node(c).row.max(self.node(d).row));
                if olo <= hi && lo <= ohi {
                    return bad(format!("edges {j} and {k} overlap on column {}", e.column));
                }
            }
        }
        if let Some((c, s)) = slots.iter().enumerate().find_map(|(c, s)| s.iter().position(|x| !x).map(|s| (c, s))) {
            return bad(format!("clause {c} slot {s} has no edge"));
        }
        if loose + 1 != n {
            return bad(format!("{loose} loose links do not connect {n} variables"));
        }
        Ok(())
    }

    /// Validates and lists, per variable, the attachments sorted by column.
    pub(crate) fn attachments(&self, f: &Formula) -> Result<Vec<Vec<Attachment>>> {
        self.validate(f)?;
        let mut per_var = vec![Vec::new(); f.num_vars];
        for (edge, e) in self.edges.iter().enumerate() {
            match e.kind {
                EdgeKind::ClauseVariable { clause, slot } => {
                    let lit = f.clauses[clause][slot];
                    let v = lit.unsigned_abs() as usize - 1;
                    let above = self.clauses[clause].row > self.variables[v].row;
                    let port = match (above, lit > 0) {
                        (true, true) => Port::PosAbove,
                        (true, false) => Port::NegAbove,
                        (false, true) => Port::PosBelow,
                        (false, false) => Port::NegBelow,
                    };
                    per_var[v].push(Attachment { column: e.column, port, edge });
                }
                EdgeKind::VariableVariable { lower, upper } => {
                    per_var[lower].push(Attachment { column: e.column, port: Port::LooseUp, edge });
                    per_var[upper].push(Attachment { column: e.column, port: Port::LooseDown, edge });
                }
            }
        }
        for (v, list) in per_var.iter_mut().enumerate() {
            list.sort_by_key(|a| a.column);
            if let Some(w) = list.windows(2).find(|w| w[0].column == w[1].column) {
                return Err(GadgetError::Layout(format!("variable {v} has two edges on column {}", w[0].column)));
            }
        }
        let mut per_clause = vec![Vec::new(); f.clauses.len()];
        for e in &self.edges {
            if let EdgeKind::ClauseVariable { clause, .. } = e.kind {
                per_clause[clause].push(e.column);
            }
        }
        for (c, cols) in per_clause.iter_mut().enumerate() {
            cols.sort_unstable();
            if cols.windows(2).any(|w| w[0] == w[1]) {
                return Err(GadgetError::Layout(format!("clause {c} has two edges on one column")));
            }
        }
        Ok(per_var)
    }
}
