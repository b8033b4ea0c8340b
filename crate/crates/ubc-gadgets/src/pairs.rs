//! Gadgets for vertical unit pairs (and unit segments on the same points) at threshold 2.
//!
//! Links between candidates at distance at most 2: `(2, 0)` joins a row, `(0, 2)` a column,
//! `(0, 3)` is too long. Variable rows sit on a pitch of 40 per grid unit.

use crate::compile::{gate_sites, variable_cells, BlockEntry, Cell, RoleTag, VariableSpec};
use crate::error::Result;
use crate::formula::Formula;
use crate::layout::{Attachment, EdgeKind, FormulaLayout};

const PITCH: i32 = 40;

/// One variable block of 27 pairs: lower point offset and whether blue is the upper point.
pub(crate) const BLOCK: [BlockEntry; 27] = [
    (0, 6, true),
    (2, 6, true),
    (4, 6, true),
    (6, 6, true),
    (6, 3, false),
    (8, 3, false),
    (10, 3, false),
    (12, 3, false),
    (14, 3, false),
    (6, 9, false),
    (8, 9, false),
    (10, 9, false),
    (12, 9, false),
    (14, 9, false),
    (14, 0, true),
    (16, 0, true),
    (18, 0, true),
    (18, 2, true),
    (18, 4, true),
    (18, 6, true),
    (18, 8, true),
    (18, 10, true),
    (18, 12, true),
    (16, 12, true),
    (14, 12, true),
    (14, 6, true),
    (16, 6, true),
];

pub(crate) const SPEC: VariableSpec = VariableSpec {
    block: &BLOCK,
    ports: [23, 10, 6, 15, 1, 1],
    pitch: PITCH,
    step: 2,
    width: 20,
    filler_dy: 6,
};

pub(crate) fn cells(f: &Formula, layout: &FormulaLayout, attachments: &[Vec<Attachment>]) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    let ports = variable_cells(&SPEC, layout, attachments, &mut out)?;
    for (clause, sites) in gate_sites(f, layout, &ports).iter().enumerate() {
        let node = layout.clauses[clause];
        let rb = PITCH * node.row + 16;
        let rt = rb + 6;
        let (xl, xr) = (PITCH * node.x_min - 6, PITCH * node.x_max + 6);
        let ring = |x, y, point| Cell { x, y, tag: RoleTag::ClauseRing { clause, point } };
        // Gate column and shift per side.
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for site in sites {
            let slot = site.slot;
            let (g, pb) = site.port;
            let conn = |y, open, closed| Cell { x: g, y, tag: RoleTag::Connector { clause, slot, open, closed } };
            if site.top {
                let s = (pb - rt - 4).rem_euclid(2);
                top.push((g, s));
                out.push(Cell { x: g, y: rt + 1 + s, tag: RoleTag::ClauseGate { clause, slot, green: 1, brown: 0 } });
                out.push(Cell { x: g - 2, y: rt + 2 + s, tag: RoleTag::GateHelper { clause, slot, point: 0 } });
                out.extend((rt + 4 + s..pb - 1).step_by(2).map(|y| conn(y, 0, 1)));
            } else {
                let s = (rb - 4 - pb).rem_euclid(2);
                bottom.push((g, s));
                out.push(Cell { x: g, y: rb - 1 - s, tag: RoleTag::ClauseGate { clause, slot, green: 0, brown: 1 } });
                out.push(Cell { x: g + 2, y: rb - 2 - s, tag: RoleTag::GateHelper { clause, slot, point: 1 } });
                let mut y = rb - 4 - s;
                while y > pb + 1 {
                    out.push(conn(y, 1, 0));
                    y -= 2;
                }
            }
        }
        for x in xl..=xr {
            match top.iter().find(|(g, _)| (x - g).abs() <= 3) {
                Some(&(g, s)) => {
                    let d = (x - g).abs();
                    if d > 1 {
                        out.push(ring(x, rt + s, u8::from(d == 2)));
                    }
                }
                None => out.push(ring(x, rt, 0)),
            }
            match bottom.iter().find(|(g, _)| (x - g).abs() <= 3) {
                Some(&(g, s)) => {
                    let d = (x - g).abs();
                    if d > 1 {
                        out.push(ring(x, rb - s, if s == 1 { u8::from(d != 2) } else { 0 }));
                    }
                }
                None => out.push(ring(x, rb, 0)),
            }
        }
        for x in [xl, xr] {
            out.push(ring(x, rb + 2, 0));
            out.push(ring(x, rb + 4, 0));
        }
    }
    for (edge, e) in layout.edges.iter().enumerate() {
        let EdgeKind::VariableVariable { lower, upper } = e.kind else { continue };
        let (x, ba) = ports.lower[edge].expect("loose port placed");
        let (_, bb) = ports.upper[edge].expect("loose port placed");
        let cell = |x, y, point| Cell { x, y, tag: RoleTag::Loose { edge, lower, upper, point } };
        let j = ba + 14;
        out.extend((ba + 2..=j).step_by(2).map(|y| cell(x, y, 0)));
        out.push(cell(x + 1, j + 1, 0));
        out.extend([(2, 0), (4, 0), (4, 2), (4, 4), (2, 4)].map(|(dx, dy)| cell(x + dx, j + dy, 1)));
        out.extend((j + 4..bb - 1).step_by(2).map(|y| cell(x, y, 1)));
    }
    Ok(out)
}
