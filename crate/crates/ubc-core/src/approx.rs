//! Center-based approximations and the cinch-up refinement.

use crate::connectivity::mbst;
use crate::error::{Error, Result};
use crate::geometry::dist;
use crate::instance::{containment_project, Instance, Region, Selection};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxResult {
    pub selection: Selection,
    pub alpha: f64,
    pub method: String,
    /// Bounds that hold for this input.
    pub certificates: Vec<String>,
    /// Conditions that void a certificate, reported rather than rejected.
    pub warnings: Vec<String>,
}

fn require(inst: &Instance, ok: impl Fn(&Region) -> bool, operation: &'static str) -> Result<()> {
    match inst.regions.iter().position(|r| !ok(r)) {
        Some(i) => Err(Error::UnsupportedRegion { index: i, kind: inst.regions[i].kind(), operation }),
        None => Ok(()),
    }
}

/// Broadcast from every disk center; `alpha` is half the longest MST edge.
pub fn bcu_center_heuristic(inst: &Instance) -> Result<ApproxResult> {
    require(inst, |r| matches!(r, Region::UnitDisk(_) | Region::Disk { .. }), "bcu_center_heuristic")?;
    let centers = inst.centers();
    let alpha = mbst(&centers).alpha;
    let certificates = if inst.all_unit_disks() { vec!["<= OPT + 1".to_string()] } else { vec![] };
    Ok(ApproxResult { selection: Selection::new(centers), alpha, method: "center".into(), certificates, warnings: vec![] })
}

/// Worst-case variant: `alpha = L/2 + 1` connects every selection.
pub fn wcu_center_heuristic(inst: &Instance) -> Result<ApproxResult> {
    require(inst, Region::is_unit_disk, "wcu_center_heuristic")?;
    let centers = inst.centers();
    let alpha = mbst(&centers).alpha + 1.0;
    Ok(ApproxResult {
        selection: Selection::new(centers),
        alpha,
        method: "wcu-center".into(),
        certificates: vec!["<= OPT_WCU + 1".into(), "<= 2 * OPT_WCU".into()],
        warnings: vec![],
    })
}

/// Center heuristic followed by pulling leaves toward their tree parents.
///
/// Leaves move once, in index order, each to the point of its disk nearest the parent's
/// current location.
pub fn cinch_up(inst: &Instance) -> Result<ApproxResult> {
    require(inst, Region::is_unit_disk, "cinch_up")?;
    let eps = inst.eps();
    let mut pts = inst.centers();
    let n = pts.len();
    let mut warnings = Vec::new();
    'outer: for i in 0..n {
        for j in i + 1..n {
            if dist(pts[i], pts[j]) < 2.0 - eps {
                warnings.push(format!("disks {i} and {j} overlap; the approximation bound does not apply"));
                break 'outer;
            }
        }
    }
    let tree = mbst(&pts);
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &tree.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    // On a path this is the two-sided cinch: with two disks the second end follows the first.
    for leaf in (0..n).filter(|&v| adj[v].len() == 1) {
        let parent = adj[leaf][0];
        pts[leaf] = containment_project(&inst.regions[leaf], pts[parent]);
    }
    let alpha = mbst(&pts).alpha;
    let mut certificates = Vec::new();
    if n == 2 && warnings.is_empty() {
        certificates.push("= OPT".into());
    }
    Ok(ApproxResult { selection: Selection::new(pts), alpha, method: "cinch-up".into(), certificates, warnings })
}
