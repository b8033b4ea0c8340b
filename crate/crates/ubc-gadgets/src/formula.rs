//! 3-CNF formulas and DIMACS input.

use crate::error::{GadgetError, Result};
use serde::{Deserialize, Serialize};

/// A 3-CNF formula. Literals are signed, 1-based variable numbers as in DIMACS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    pub num_vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

/// Largest variable count accepted by [`Formula::satisfying_assignments`].
pub const TRUTH_TABLE_LIMIT: usize = 20;

impl Formula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        if num_vars == 0 {
            return Err(GadgetError::Formula("no variables".into()));
        }
        for (c, clause) in clauses.iter().enumerate() {
            for &l in clause {
                if l == 0 || l.unsigned_abs() as usize > num_vars {
                    return Err(GadgetError::Formula(format!("clause {c} has literal {l} outside 1..={num_vars}")));
                }
            }
        }
        Ok(Formula { num_vars, clauses })
    }

    /// Parses `p cnf` input. Every clause must have exactly three literals.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut cur: Vec<i32> = Vec::new();
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            last = i + 1;
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            let err = |msg: String| GadgetError::Dimacs { line: i + 1, msg };
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(err("expected `p cnf <vars> <clauses>`".into()));
                }
                let v = parts[2].parse().map_err(|_| err(format!("bad variable count `{}`", parts[2])))?;
                let c = parts[3].parse().map_err(|_| err(format!("bad clause count `{}`", parts[3])))?;
                header = Some((v, c));
                continue;
            }
            if header.is_none() {
                return Err(err("clause before the `p cnf` header".into()));
            }
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| err(format!("bad literal `{tok}`")))?;
                if l == 0 {
                    let lits: [i32; 3] = cur
                        .as_slice()
                        .try_into()
                        .map_err(|_| err(format!("clause {} has {} literals, expected 3", clauses.len() + 1, cur.len())))?;
                    clauses.push(lits);
                    cur.clear();
                } else {
                    cur.push(l);
                }
            }
        }
        if !cur.is_empty() {
            return Err(GadgetError::Dimacs { line: last, msg: "last clause is not terminated by 0".into() });
        }
        let (v, c) = header.ok_or(GadgetError::Dimacs { line: last, msg: "missing `p cnf` header".into() })?;
        if c != clauses.len() {
            return Err(GadgetError::Dimacs { line: last, msg: format!("header announces {c} clauses, found {}", clauses.len()) });
        }
        Formula::new(v, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            s.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        s
    }

    /// Whether `lit` is true under `assignment` (index `v - 1` holds variable `v`).
    pub fn literal_value(lit: i32, assignment: &[bool]) -> bool {
        assignment[lit.unsigned_abs() as usize - 1] == (lit > 0)
    }

    pub fn check_assignment(&self, assignment: &[bool]) -> Result<()> {
        if assignment.len() != self.num_vars {
            return Err(GadgetError::Assignment { expected: self.num_vars, got: assignment.len() });
        }
        Ok(())
    }

    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool> {
        self.check_assignment(assignment)?;
        Ok(self.clauses.iter().all(|c| c.iter().any(|&l| Self::literal_value(l, assignment))))
    }

    /// The first slot of `clause` made true by `assignment`.
    pub fn first_true_slot(&self, clause: usize, assignment: &[bool]) -> Option<usize> {
        self.clauses[clause].iter().position(|&l| Self::literal_value(l, assignment))
    }

    /// Every satisfying assignment, by exhaustive enumeration.
    pub fn satisfying_assignments(&self) -> Result<Vec<Vec<bool>>> {
        if self.num_vars > TRUTH_TABLE_LIMIT {
            return Err(GadgetError::Formula(format!("{} variables exceed the truth-table limit {TRUTH_TABLE_LIMIT}", self.num_vars)));
        }
        let mut out = Vec::new();
        for mask in 0u32..1 << self.num_vars {
            let a: Vec<bool> = (0..self.num_vars).map(|i| mask >> i & 1 == 1).collect();
            if self.evaluate(&a)? {
                out.push(a);
            }
        }
        Ok(out)
    }

    pub fn is_satisfiable(&self) -> Result<bool> {
        Ok(!self.satisfying_assignments()?.is_empty())
    }
}
