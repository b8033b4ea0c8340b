//! Checks on generated instances: geometry, gate behaviour, forward connectivity and a
//! randomized search for connected selections.

use crate::compile::{assignment_to_selection, Candidate, Family, GadgetInstance, RoleTag};
use crate::error::Result;
use crate::formula::Formula;
use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use ubc_core::connectivity::connected_at;
use ubc_core::{dist, Point2, Region};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditViolation {
    pub region: usize,
    pub other: Option<usize>,
    pub message: String,
}

fn is_int(v: f64) -> bool {
    v.fract() == 0.0 && v.is_finite()
}

/// Shape, integrality and non-overlap of every region.
pub fn geometry_audit(g: &GadgetInstance) -> Vec<AuditViolation> {
    let mut out = Vec::new();
    let mut push = |region, other, message: String| out.push(AuditViolation { region, other, message });
    let mut anchors = HashMap::new();
    for (i, r) in g.instance.regions.iter().enumerate() {
        let (a, b) = match (*r, g.family) {
            (Region::PointPair(a, b), Family::Pairs) => (a, b),
            (Region::Segment(s), Family::Segments) => (s.a, s.b),
            (Region::Square { corner, side }, Family::Squares) => {
                if side != 1.0 {
                    push(i, None, format!("square side {side}"));
                }
                (corner, Point2::new(corner.x, corner.y + 1.0))
            }
            _ => {
                push(i, None, format!("{} region in a {} gadget", r.kind(), g.family));
                continue;
            }
        };
        if !(is_int(a.x) && is_int(a.y) && is_int(b.x) && is_int(b.y)) {
            push(i, None, "non-integer coordinates".into());
            continue;
        }
        if a.x != b.x || b.y - a.y != 1.0 {
            push(i, None, "not a vertical unit".into());
        }
        anchors.insert((a.x as i64, a.y as i64), i);
    }
    // Pairs and segments may not share a point; squares may not touch at all.
    let reach: &[(i64, i64)] = match g.family {
        Family::Squares => &[(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)],
        _ => &[(0, -1), (0, 1)],
    };
    let mut sorted: Vec<_> = anchors.iter().map(|(&k, &i)| (i, k)).collect();
    sorted.sort_unstable();
    for (i, (x, y)) in sorted {
        for &(dx, dy) in reach {
            if let Some(&j) = anchors.get(&(x + dx, y + dy)) {
                if j > i {
                    push(i, Some(j), format!("touches region {j}"));
                }
            }
        }
    }
    if anchors.len() < g.len() {
        let mut seen = HashMap::new();
        for i in 0..g.len() {
            if let Some(j) = seen.insert(g.anchor(i), i) {
                push(j, Some(i), "duplicate region".into());
            }
        }
    }
    out
}

/// Whether the selection encoding `assignment` is connected at `alpha_star`.
pub fn assignment_connected(g: &GadgetInstance, f: &Formula, assignment: &[bool]) -> Result<bool> {
    let sel = assignment_to_selection(g, f, assignment)?;
    Ok(connected_at(&sel.points, g.alpha_star, 1e-9))
}

/// Every satisfying assignment, with whether its selection is connected.
pub fn forward_check(g: &GadgetInstance, f: &Formula) -> Result<Vec<(Vec<bool>, bool)>> {
    f.satisfying_assignments()?
        .into_iter()
        .map(|a| {
            let ok = assignment_connected(g, f, &a)?;
            Ok((a, ok))
        })
        .collect()
}

/// Gate behaviour of one clause slot, checked on the clause subgraph plus that slot's connector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCheck {
    pub clause: usize,
    pub slot: usize,
    /// With only this gate open, ring, gates and the connector form one component.
    pub open_joins: bool,
    /// With every gate closed, no connector region links to the clause subgraph.
    pub closed_separates: bool,
}

fn linked(points: &[Point2], threshold: f64, i: usize, j: usize) -> bool {
    dist(points[i], points[j]) <= threshold + 1e-9
}

/// Builds each clause in isolation (ring, gates, helpers and connectors) and checks that a
/// single open gate joins its connector while closed gates keep every connector apart.
pub fn clause_gate_report(g: &GadgetInstance) -> Vec<GateCheck> {
    let thr = 2.0 * g.alpha_star;
    let clauses = g.role_tags.iter().filter_map(RoleTag::clause).max().map_or(0, |c| c + 1);
    let mut out = Vec::new();
    for clause in 0..clauses {
        let members = g.indices_where(|t| t.clause() == Some(clause));
        let slots: BTreeSet<usize> = members
            .iter()
            .filter_map(|&i| match g.role_tags[i] {
                RoleTag::ClauseGate { slot, .. } => Some(slot),
                _ => None,
            })
            .collect();
        let choose = |open: Option<usize>| -> Vec<Point2> {
            let pick: Vec<Option<usize>> = vec![open; clause + 1];
            members.iter().map(|&i| g.candidate(i, g.role_tags[i].choose(&[], &pick))).collect()
        };
        let is_conn = |i: usize| matches!(g.role_tags[members[i]], RoleTag::Connector { .. });
        let closed = choose(None);
        let closed_separates = (0..members.len())
            .filter(|&i| !is_conn(i))
            .all(|i| (0..members.len()).filter(|&j| is_conn(j)).all(|j| !linked(&closed, thr, i, j)));
        for &slot in &slots {
            let pts = choose(Some(slot));
            let keep: Vec<usize> = (0..members.len())
                .filter(|&i| match g.role_tags[members[i]] {
                    RoleTag::Connector { slot: s, .. } => s == slot,
                    _ => true,
                })
                .collect();
            let sub: Vec<Point2> = keep.iter().map(|&i| pts[i]).collect();
            out.push(GateCheck { clause, slot, open_joins: connected_at(&sub, g.alpha_star, 1e-9), closed_separates });
        }
    }
    out
}

/// Role kinds and candidates of two regions with different roles whose candidates link.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinkSignature {
    pub kinds: (String, String),
    pub candidates: (Candidate, Candidate),
}

/// Candidate links between regions of different role kinds.
pub fn link_signatures(g: &GadgetInstance) -> BTreeSet<LinkSignature> {
    let mut out = BTreeSet::new();
    for (i, j, mask) in region_links(g) {
        let (ki, kj) = (g.role_tags[i].kind(), g.role_tags[j].kind());
        if ki == kj {
            continue;
        }
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            if mask & (1 << (2 * a + b)) != 0 {
                let sig = if ki <= kj {
                    LinkSignature { kinds: (ki.into(), kj.into()), candidates: (a, b) }
                } else {
                    LinkSignature { kinds: (kj.into(), ki.into()), candidates: (b, a) }
                };
                out.insert(sig);
            }
        }
    }
    out
}

/// For each pair of regions with some linked candidates, a mask with bit `2a + b` set when
/// candidate `a` of the first and `b` of the second lie within `2 alpha_star`.
pub fn region_links(g: &GadgetInstance) -> Vec<(usize, usize, u8)> {
    let thr = 2.0 * g.alpha_star;
    let cell = thr.ceil() as i64 + 1;
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for i in 0..g.len() {
        let (x, y) = g.anchor(i);
        grid.entry(((x as i64).div_euclid(cell), (y as i64).div_euclid(cell))).or_default().push(i);
    }
    let mut out = Vec::new();
    for i in 0..g.len() {
        let (x, y) = g.anchor(i);
        let (cx, cy) = ((x as i64).div_euclid(cell), (y as i64).div_euclid(cell));
        for dx in -1..=1 {
            for dy in -1..=1 {
                for &j in grid.get(&(cx + dx, cy + dy)).into_iter().flatten() {
                    if j <= i {
                        continue;
                    }
                    let mut mask = 0u8;
                    for a in 0..2u8 {
                        for b in 0..2u8 {
                            if dist(g.candidate(i, a), g.candidate(j, b)) <= thr + 1e-9 {
                                mask |= 1 << (2 * a + b);
                            }
                        }
                    }
                    if mask != 0 {
                        out.push((i, j, mask));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmokeReport {
    pub trials: u64,
    pub connected: u64,
    pub seed: u64,
}

/// Draws `trials` uniformly random candidate selections and counts the connected ones.
///
/// Only candidate points are sampled, so a zero count is evidence, not proof, that no
/// connected selection exists.
pub fn random_selection_smoke(g: &GadgetInstance, trials: u64, seed: u64) -> SmokeReport {
    let links = region_links(g);
    let n = g.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut choice = vec![0u8; n];
    let mut connected = 0;
    for _ in 0..trials {
        for c in choice.iter_mut() {
            *c = rng.random_range(0..2);
        }
        let mut uf = UnionFind::<usize>::new(n);
        let mut parts = n;
        for &(i, j, mask) in &links {
            if mask & (1 << (2 * choice[i] + choice[j])) != 0 && uf.union(i, j) {
                parts -= 1;
            }
        }
        if parts == 1 {
            connected += 1;
        }
    }
    SmokeReport { trials, connected, seed }
}
