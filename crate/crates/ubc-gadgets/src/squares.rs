//! Gadgets for axis-aligned unit squares at threshold 5.
//!
//! Each square contributes its two left corners as candidates. Between candidates, steps of
//! `(5, 0)`, `(0, 5)`, `(±1..3, 4)` and `(±4, 3)` link; `(0, 6)`, `(±1..3, 5)`, `(±4, 4)` and
//! `(±5, 1)` do not. Grid units are 100 apart.

use crate::compile::{gate_sites, variable_cells, BlockEntry, Cell, RoleTag, VariableSpec};
use crate::error::{GadgetError, Result};
use crate::formula::Formula;
use crate::layout::{Attachment, EdgeKind, FormulaLayout};
use std::collections::BTreeSet;

const PITCH: i32 = 100;

pub(crate) const BLOCK: [BlockEntry; 25] = [
    // reference row
    (0, 10, true),
    (5, 10, true),
    (10, 10, true),
    (15, 10, true),
    // lower twisted row
    (13, 5, false),
    (18, 5, false),
    (23, 5, false),
    (28, 5, false),
    (33, 5, false),
    // upper twisted row
    (17, 15, false),
    (22, 15, false),
    (27, 15, false),
    (32, 15, false),
    (37, 15, false),
    // bottom, right column, top
    (35, 0, true),
    (40, 0, true),
    (45, 0, true),
    (45, 5, true),
    (45, 10, true),
    (45, 15, true),
    (45, 20, true),
    (40, 20, true),
    (35, 20, true),
    // middle
    (35, 10, true),
    (40, 10, true),
];

pub(crate) const SPEC: VariableSpec = VariableSpec {
    block: &BLOCK,
    ports: [21, 10, 6, 15, 1, 1],
    pitch: PITCH,
    step: 5,
    width: 50,
    filler_dy: 10,
};

/// `n / d` rounded to the nearest integer, ties to even.
fn div_round_even(n: i32, d: i32) -> i32 {
    let (q, r) = (n.div_euclid(d), n.rem_euclid(d));
    match (2 * r).cmp(&d) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => q + (q & 1),
    }
}

/// Ring positions along `[xl, xr]`: every gap at most 4, with the gate neighbourhoods
/// `g ± 5` pinned and their interior left empty.
fn ring_xs(xl: i32, xr: i32, gates: &[(i32, i32)]) -> Vec<i32> {
    let forced: BTreeSet<i32> = [xl, xr].into_iter().chain(gates.iter().flat_map(|&(g, _)| [g - 5, g + 5])).collect();
    let forced: Vec<i32> = forced.into_iter().collect();
    let mut xs = Vec::new();
    for w in forced.windows(2) {
        let (a, b) = (w[0], w[1]);
        if gates.iter().any(|&(g, _)| a == g - 5 && b == g + 5) {
            xs.push(a);
            continue;
        }
        let n = ((b - a + 3) / 4).max(1);
        xs.extend((0..n).map(|i| a + div_round_even(i * (b - a), n)));
    }
    xs.extend(forced.last());
    xs
}

pub(crate) fn cells(f: &Formula, layout: &FormulaLayout, attachments: &[Vec<Attachment>]) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    let ports = variable_cells(&SPEC, layout, attachments, &mut out)?;
    for (clause, sites) in gate_sites(f, layout, &ports).iter().enumerate() {
        let node = layout.clauses[clause];
        let rb = PITCH * node.row + 40;
        let rt = rb + 15;
        let (xl, xr) = (PITCH * node.x_min - 20, PITCH * node.x_max + 20);
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for site in sites {
            let slot = site.slot;
            let (g, pb) = site.port;
            let conn = |y, open, closed| Cell { x: g, y, tag: RoleTag::Connector { clause, slot, open, closed } };
            if site.top {
                let s = (pb - rt - 7).rem_euclid(5);
                top.push((g, s));
                out.push(Cell { x: g, y: rt + 1 + s, tag: RoleTag::ClauseGate { clause, slot, green: 1, brown: 0 } });
                out.push(Cell { x: g - 5, y: rt + 2 + s, tag: RoleTag::GateHelper { clause, slot, point: 0 } });
                out.extend((rt + 7 + s..pb - 4).step_by(5).map(|y| conn(y, 0, 1)));
            } else {
                let s = (rb - 7 - pb).rem_euclid(5);
                bottom.push((g, s));
                out.push(Cell { x: g, y: rb - 1 - s, tag: RoleTag::ClauseGate { clause, slot, green: 0, brown: 1 } });
                out.push(Cell { x: g + 5, y: rb - 2 - s, tag: RoleTag::GateHelper { clause, slot, point: 1 } });
                let mut y = rb - 7 - s;
                while y > pb + 4 {
                    out.push(conn(y, 1, 0));
                    y -= 5;
                }
            }
        }
        for (r, gates, upward) in [(rt, &top, true), (rb, &bottom, false)] {
            for x in ring_xs(xl, xr, gates) {
                let mut h = 0;
                let mut beside_gate = false;
                for &(g, s) in gates.iter() {
                    let d = (x - g).abs();
                    if d >= 5 {
                        beside_gate |= d == 5;
                        h = h.max(s - (d - 4) / 2);
                    }
                }
                let (y, point) = if upward { (r + h, u8::from(beside_gate)) } else { (r - h, 0) };
                out.push(Cell { x, y, tag: RoleTag::ClauseRing { clause, point } });
            }
        }
        for x in [xl, xr] {
            for y in [rb + 5, rb + 10] {
                out.push(Cell { x, y, tag: RoleTag::ClauseRing { clause, point: 0 } });
            }
        }
    }
    for (edge, e) in layout.edges.iter().enumerate() {
        let EdgeKind::VariableVariable { lower, upper } = e.kind else { continue };
        let (x, ba) = ports.lower[edge].expect("loose port placed");
        let (_, bb) = ports.upper[edge].expect("loose port placed");
        let gap = bb - ba;
        let junction: &[i32] = match gap.rem_euclid(5) {
            0 => &[2, 3],
            1 => &[3, 3],
            2 => &[2],
            3 => &[3],
            _ => &[4],
        };
        let fives = (gap - junction.iter().sum::<i32>()) / 5;
        if fives < 2 {
            return Err(GadgetError::Layout(format!("edge {edge}: variables too close for a loose connection")));
        }
        let steps: Vec<i32> = std::iter::repeat(5)
            .take((fives / 2) as usize)
            .chain(junction.iter().copied())
            .chain(std::iter::repeat(5).take((fives - fives / 2) as usize))
            .collect();
        let (mut y, mut point) = (ba, 0);
        for &st in &steps[..steps.len() - 1] {
            y += st;
            if st != 5 {
                point = 1;
            }
            out.push(Cell { x, y, tag: RoleTag::Loose { edge, lower, upper, point } });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_matches_ties_to_even() {
        assert_eq!(div_round_even(5, 2), 2);
        assert_eq!(div_round_even(7, 2), 4);
        assert_eq!(div_round_even(10, 4), 2);
        assert_eq!(div_round_even(11, 4), 3);
    }

    #[test]
    fn ring_gaps_stay_short() {
        let xs = ring_xs(-20, 220, &[(0, 1), (100, 3)]);
        assert!(xs.windows(2).all(|w| w[1] > w[0]));
        for w in xs.windows(2) {
            let skip = w[0] == -5 || w[0] == 95;
            assert!(skip || w[1] - w[0] <= 4, "{w:?}");
        }
    }
}
