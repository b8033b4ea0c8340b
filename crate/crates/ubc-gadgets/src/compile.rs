//! Turning a formula and its layout into regions with role tags.

use crate::error::{GadgetError, Result};
use crate::formula::Formula;
use crate::layout::{Attachment, EdgeKind, FormulaLayout, Port};
use crate::{pairs, squares};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use ubc_core::{Instance, Point2, Region, Segment, Selection};

/// Region family the reduction emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pairs,
    Segments,
    Squares,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Pairs, Family::Segments, Family::Squares];

    /// Decision threshold: connected at this `alpha` iff the formula is satisfiable.
    pub fn alpha_star(self) -> f64 {
        match self {
            Family::Pairs | Family::Segments => 1.0,
            Family::Squares => 2.5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Pairs => "pairs",
            Family::Segments => "segments",
            Family::Squares => "squares",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown gadget family `{s}`"))
    }
}

/// Candidate index inside a region: 0 is the lower point, 1 the upper one.
pub type Candidate = u8;

/// What a region does in the reduction and which candidate it takes in each state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "kebab-case")]
pub enum RoleTag {
    /// The region whose choice encodes the variable: `blue` means true.
    Reference { variable: usize, blue: Candidate, red: Candidate },
    Variable { variable: usize, blue: Candidate, red: Candidate },
    /// Takes `green` when this slot is the clause's open gate, `brown` otherwise.
    ClauseGate { clause: usize, slot: usize, green: Candidate, brown: Candidate },
    GateHelper { clause: usize, slot: usize, point: Candidate },
    ClauseRing { clause: usize, point: Candidate },
    /// Chain from a variable port to a gate.
    Connector { clause: usize, slot: usize, open: Candidate, closed: Candidate },
    /// Link between two variable gadgets; `edge` indexes the layout edges.
    Loose { edge: usize, lower: usize, upper: usize, point: Candidate },
}

impl RoleTag {
    pub fn kind(&self) -> &'static str {
        match self {
            RoleTag::Reference { .. } => "reference",
            RoleTag::Variable { .. } => "variable",
            RoleTag::ClauseGate { .. } => "clause-gate",
            RoleTag::GateHelper { .. } => "gate-helper",
            RoleTag::ClauseRing { .. } => "clause-ring",
            RoleTag::Connector { .. } => "connector",
            RoleTag::Loose { .. } => "loose",
        }
    }

    pub fn clause(&self) -> Option<usize> {
        match *self {
            RoleTag::ClauseGate { clause, .. }
            | RoleTag::GateHelper { clause, .. }
            | RoleTag::ClauseRing { clause, .. }
            | RoleTag::Connector { clause, .. } => Some(clause),
            _ => None,
        }
    }

    pub fn variable(&self) -> Option<usize> {
        match *self {
            RoleTag::Reference { variable, .. } | RoleTag::Variable { variable, .. } => Some(variable),
            _ => None,
        }
    }

    /// Candidate taken under `truth` (per variable) and `open` (per clause, the open slot).
    pub fn choose(&self, truth: &[bool], open: &[Option<usize>]) -> Candidate {
        match *self {
            RoleTag::Reference { variable, blue, red } | RoleTag::Variable { variable, blue, red } => {
                if truth[variable] { blue } else { red }
            }
            RoleTag::ClauseGate { clause, slot, green, brown } => {
                if open[clause] == Some(slot) { green } else { brown }
            }
            RoleTag::Connector { clause, slot, open: o, closed } => {
                if open[clause] == Some(slot) { o } else { closed }
            }
            RoleTag::GateHelper { point, .. } | RoleTag::ClauseRing { point, .. } | RoleTag::Loose { point, .. } => point,
        }
    }
}

/// One emitted region before it gets a concrete shape: lower candidate at `(x, y)`,
/// upper candidate at `(x, y + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Cell {
    pub x: i32,
    pub y: i32,
    pub tag: RoleTag,
}

/// A block entry: offset of the lower candidate and whether blue is the upper one.
pub(crate) type BlockEntry = (i32, i32, bool);

/// Geometry shared by the variable gadgets of one family.
pub(crate) struct VariableSpec {
    pub block: &'static [BlockEntry],
    /// Block index of the port for each [`Port`], in declaration order.
    pub ports: [usize; 6],
    pub pitch: i32,
    /// Horizontal step of filler regions and of block origins.
    pub step: i32,
    /// Smallest distance between consecutive block origins; fillers start here.
    pub width: i32,
    pub filler_dy: i32,
}

impl VariableSpec {
    pub fn port_entry(&self, port: Port) -> BlockEntry {
        self.block[self.ports[port as usize]]
    }
}

fn blue_red(blue_up: bool) -> (Candidate, Candidate) {
    if blue_up { (1, 0) } else { (0, 1) }
}

/// Port positions by layout edge: clause edges use `lower`, loose edges use both.
#[derive(Debug, Clone, Default)]
pub(crate) struct PortMap {
    pub lower: Vec<Option<(i32, i32)>>,
    pub upper: Vec<Option<(i32, i32)>>,
}

/// Lays out the variable rows: one block per attachment, joined by filler regions.
pub(crate) fn variable_cells(
    spec: &VariableSpec,
    layout: &FormulaLayout,
    attachments: &[Vec<Attachment>],
    cells: &mut Vec<Cell>,
) -> Result<PortMap> {
    let mut ports = PortMap { lower: vec![None; layout.edges.len()], upper: vec![None; layout.edges.len()] };
    for (v, list) in attachments.iter().enumerate() {
        let node = layout.variables[v];
        let y0 = spec.pitch * node.row;
        let items: Vec<Option<&Attachment>> = if list.is_empty() { vec![None] } else { list.iter().map(Some).collect() };
        let mut prev: Option<i32> = None;
        for (bi, item) in items.into_iter().enumerate() {
            let (col, px) = match item {
                Some(a) => (a.column, spec.port_entry(a.port).0),
                None => (node.x_min, 0),
            };
            let origin = (spec.pitch * col - px).div_euclid(spec.step) * spec.step;
            if let Some(p) = prev {
                if origin - p < spec.width {
                    return Err(GadgetError::Layout(format!("variable {v}: columns too close for the gadget width")));
                }
                for x in (p + spec.width..origin).step_by(spec.step as usize) {
                    cells.push(Cell { x, y: y0 + spec.filler_dy, tag: RoleTag::Variable { variable: v, blue: 1, red: 0 } });
                }
            }
            for (pi, &(dx, dy, up)) in spec.block.iter().enumerate() {
                let (blue, red) = blue_red(up);
                let tag = if bi == 0 && pi == 0 {
                    RoleTag::Reference { variable: v, blue, red }
                } else {
                    RoleTag::Variable { variable: v, blue, red }
                };
                cells.push(Cell { x: origin + dx, y: y0 + dy, tag });
            }
            if let Some(a) = item {
                let (dx, dy, _) = spec.port_entry(a.port);
                let at = Some((origin + dx, y0 + dy));
                match a.port {
                    Port::LooseDown => ports.upper[a.edge] = at,
                    _ => ports.lower[a.edge] = at,
                }
            }
            prev = Some(origin);
        }
    }
    Ok(ports)
}

/// A gate attaching clause `clause` to the port of its literal in `slot`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GateSite {
    pub slot: usize,
    /// Port position (lower candidate) on the variable gadget.
    pub port: (i32, i32),
    /// Whether the variable lies above the clause.
    pub top: bool,
}

/// Gate sites of every clause, in slot order.
pub(crate) fn gate_sites(f: &Formula, layout: &FormulaLayout, ports: &PortMap) -> Vec<Vec<GateSite>> {
    let mut sites = vec![Vec::new(); f.clauses.len()];
    for (k, e) in layout.edges.iter().enumerate() {
        if let EdgeKind::ClauseVariable { clause, slot } = e.kind {
            let v = f.clauses[clause][slot].unsigned_abs() as usize - 1;
            let top = layout.variables[v].row > layout.clauses[clause].row;
            sites[clause].push(GateSite { slot, port: ports.lower[k].expect("clause port placed"), top });
        }
    }
    for s in &mut sites {
        s.sort_by_key(|g| g.slot);
    }
    sites
}

/// A generated reduction instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GadgetInstance {
    pub family: Family,
    pub instance: Instance,
    pub alpha_star: f64,
    pub role_tags: Vec<RoleTag>,
}

/// Region-tag sidecar written next to an instance file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleTagFile {
    pub family: Family,
    pub alpha_star: f64,
    pub role_tags: Vec<RoleTag>,
}

impl GadgetInstance {
    pub fn len(&self) -> usize {
        self.role_tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.role_tags.is_empty()
    }

    /// Lower-left integer anchor of region `i`.
    pub fn anchor(&self, i: usize) -> (i32, i32) {
        let p = self.candidate(i, 0);
        (p.x as i32, p.y as i32)
    }

    /// The candidate point `c` of region `i`.
    pub fn candidate(&self, i: usize, c: Candidate) -> Point2 {
        candidate(&self.instance.regions[i], c)
    }

    pub fn indices_where(&self, pred: impl Fn(&RoleTag) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| pred(&self.role_tags[i])).collect()
    }

    pub fn sidecar(&self) -> RoleTagFile {
        RoleTagFile { family: self.family, alpha_star: self.alpha_star, role_tags: self.role_tags.clone() }
    }

    /// Reassembles a gadget from an instance and its sidecar.
    pub fn from_parts(instance: Instance, tags: RoleTagFile) -> Result<Self> {
        if instance.len() != tags.role_tags.len() {
            return Err(GadgetError::Layout(format!("{} role tags for {} regions", tags.role_tags.len(), instance.len())));
        }
        Ok(GadgetInstance { family: tags.family, instance, alpha_star: tags.alpha_star, role_tags: tags.role_tags })
    }

    /// Selection given by per-region candidate choices.
    pub fn selection_from(&self, choice: impl Fn(usize) -> Candidate) -> Selection {
        Selection::new((0..self.len()).map(|i| self.candidate(i, choice(i))).collect())
    }
}

pub(crate) fn candidate(r: &Region, c: Candidate) -> Point2 {
    match *r {
        Region::PointPair(a, b) => if c == 0 { a } else { b },
        Region::Segment(s) => if c == 0 { s.a } else { s.b },
        Region::Square { corner, .. } => Point2::new(corner.x, corner.y + f64::from(c)),
        Region::FixedPoint(p) => p,
        _ => r.center(),
    }
}

fn region_of(family: Family, x: i32, y: i32) -> Region {
    let (lo, hi) = (Point2::new(x as f64, y as f64), Point2::new(x as f64, y as f64 + 1.0));
    match family {
        Family::Pairs => Region::PointPair(lo, hi),
        Family::Segments => Region::Segment(Segment::new(lo, hi)),
        Family::Squares => Region::Square { corner: lo, side: 1.0 },
    }
}

/// Builds the reduction instance of `family` for `f` laid out as `layout`.
pub fn build(family: Family, f: &Formula, layout: &FormulaLayout) -> Result<GadgetInstance> {
    let attachments = layout.attachments(f)?;
    let cells = match family {
        Family::Pairs | Family::Segments => pairs::cells(f, layout, &attachments)?,
        Family::Squares => squares::cells(f, layout, &attachments)?,
    };
    let regions = cells.iter().map(|c| region_of(family, c.x, c.y)).collect();
    let instance = Instance::new(Some(format!("{family} reduction")), regions)?;
    Ok(GadgetInstance {
        family,
        instance,
        alpha_star: family.alpha_star(),
        role_tags: cells.into_iter().map(|c| c.tag).collect(),
    })
}

pub fn build_pair_instance(f: &Formula, layout: &FormulaLayout) -> Result<GadgetInstance> {
    build(Family::Pairs, f, layout)
}

pub fn build_segment_instance(f: &Formula, layout: &FormulaLayout) -> Result<GadgetInstance> {
    build(Family::Segments, f, layout)
}

pub fn build_square_instance(f: &Formula, layout: &FormulaLayout) -> Result<GadgetInstance> {
    build(Family::Squares, f, layout)
}

/// Open slot of each clause: the first one whose literal `assignment` makes true.
pub fn open_slots(f: &Formula, assignment: &[bool]) -> Result<Vec<Option<usize>>> {
    f.check_assignment(assignment)?;
    Ok((0..f.clauses.len()).map(|c| f.first_true_slot(c, assignment)).collect())
}

/// The selection encoding `assignment`: variable regions take blue for true, each clause
/// opens the gate of its first true literal, all other gates stay closed.
pub fn assignment_to_selection(g: &GadgetInstance, f: &Formula, assignment: &[bool]) -> Result<Selection> {
    let open = open_slots(f, assignment)?;
    if let Some(t) = g.role_tags.iter().find(|t| t.variable().is_some_and(|v| v >= f.num_vars) || t.clause().is_some_and(|c| c >= f.clauses.len())) {
        return Err(GadgetError::Formula(format!("role tag {t:?} does not fit the formula")));
    }
    Ok(g.selection_from(|i| g.role_tags[i].choose(assignment, &open)))
}
