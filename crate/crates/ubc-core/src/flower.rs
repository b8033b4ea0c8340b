//! Worst-case lower-bound family: unit disks around a large circle plus connecting chains.
//!
//! Rim disks `D_0..D_{2N-1}` sit counter-clockwise on a circle of radius `R` with `D_0` at the
//! origin and the circle's center at `(0, R)`. Even rim disks get a chain of centers toward the
//! circle's center; odd rim disks get a chain outward that runs around the outside of the circle
//! to the next odd disk.

use crate::connectivity::mbst;
use crate::error::{Error, Result};
use crate::geometry::{dist, Point2};
use crate::instance::{Instance, Region, Selection};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowerParams {
    /// Half the number of rim disks. Derived from `big_radius` when absent.
    pub n: Option<usize>,
    /// Distance `L` between consecutive rim centers.
    pub spacing: f64,
    /// Chain spacing.
    pub eps: f64,
    /// Circle radius; defaults to `200 L` when neither it nor `n` is given.
    pub big_radius: Option<f64>,
    /// Emit the chains; without them only the rim is generated.
    pub chains: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Flower {
    pub instance: Instance,
    /// Rim disks alternately take their inner and outer extreme points; chain disks their centers.
    pub ell_star: Selection,
    pub n: usize,
    pub big_radius: f64,
    pub rim_count: usize,
    pub chain_count: usize,
    /// Distance between consecutive rim choices of `ell_star`.
    pub consecutive: f64,
    /// Height of the neighbors of `D_0` above the tangent at `D_0`.
    pub sag: f64,
    /// Smallest distance from a chain center to a rim center other than the chain's own ends.
    pub min_clearance: Option<f64>,
}

fn resolve(params: &FlowerParams) -> Result<(usize, f64)> {
    let l = params.spacing;
    let bad = |m: String| Err(Error::InvalidParameter(m));
    if !(l > 2.0) || !l.is_finite() {
        return bad(format!("spacing must exceed 2, got {l}"));
    }
    if !(params.eps > 0.0 && params.eps < (l - 2.0) / 10.0) {
        return bad(format!("eps must lie in (0, {}), got {}", (l - 2.0) / 10.0, params.eps));
    }
    let radius_for = |n: usize| l / (2.0 * (PI / (2 * n) as f64).sin());
    let n = match (params.n, params.big_radius) {
        (Some(n), None) => n,
        (n, r) => {
            let r = r.unwrap_or(200.0 * l);
            if !(r > l / 2.0) {
                return bad(format!("big_radius {r} is too small for spacing {l}"));
            }
            let derived = (PI / (2.0 * (l / (2.0 * r)).asin())).round() as usize;
            if let Some(n) = n {
                if (radius_for(n) - r).abs() > 0.01 * r {
                    return bad(format!("n = {n} gives radius {}, which disagrees with big_radius {r}", radius_for(n)));
                }
                n
            } else {
                derived
            }
        }
    };
    if n < 3 {
        return bad(format!("need at least 6 rim disks, got {}", 2 * n));
    }
    Ok((n, radius_for(n)))
}

/// Builds the instance and the distinguished selection.
pub fn flower_instance(params: &FlowerParams) -> Result<Flower> {
    let (n, r) = resolve(params)?;
    let (l, eps) = (params.spacing, params.eps);
    let center = Point2::new(0.0, r);
    let m = 2 * n;
    let angle = |i: f64| -PI / 2.0 + i * PI / n as f64;
    let on_circle = |a: f64, rad: f64| center + Point2::new(a.cos(), a.sin()) * rad;
    let rim: Vec<Point2> = (0..m).map(|i| on_circle(angle(i as f64), r)).collect();
    let inward: Vec<Point2> = rim.iter().map(|c| (center - *c).normalized().unwrap()).collect();
    let sag = r * (1.0 - (PI / n as f64).cos());

    let mut chains: Vec<(Vec<usize>, Point2)> = Vec::new();
    if params.chains {
        if sag >= eps / 3.0 {
            return Err(Error::InvalidParameter(format!(
                "rim neighbors sag {sag} >= eps/3; chains need big_radius above about {}",
                1.5 * l * l / eps
            )));
        }
        let hub_steps = (r / eps).floor() as usize;
        for j in (0..m).step_by(2) {
            for k in 1..=hub_steps {
                chains.push((vec![j], rim[j] + inward[j] * (k as f64 * eps)));
            }
        }
        chains.push((vec![], center));
        // Odd disks: radially out to the outer ring, then around it to the next odd disk.
        let ring = r + 2.0 * l;
        let out_steps = (2.0 * l / eps).ceil() as usize;
        for i in (1..m).step_by(2) {
            for k in 1..=out_steps {
                chains.push((vec![i], rim[i] - inward[i] * (k as f64 * 2.0 * l / out_steps as f64)));
            }
            let span = 2.0 * PI / n as f64;
            let steps = (ring * span / eps).ceil() as usize;
            for k in 1..steps {
                let a = angle(i as f64) + span * k as f64 / steps as f64;
                chains.push((vec![i, (i + 2) % m], on_circle(a, ring)));
            }
        }
    }

    let mut min_clearance: Option<f64> = None;
    for (own, c) in &chains {
        for (k, rc) in rim.iter().enumerate() {
            if own.contains(&k) {
                continue;
            }
            let d = dist(*c, *rc);
            min_clearance = Some(min_clearance.map_or(d, |x: f64| x.min(d)));
            if d <= l {
                return Err(Error::InvalidParameter(format!("chain center {c:?} lies within {d} <= L of rim disk {k}")));
            }
        }
    }

    let ell: Vec<Point2> = (0..m).map(|i| if i % 2 == 0 { rim[i] + inward[i] } else { rim[i] - inward[i] }).collect();
    let consecutive = (0..m).map(|i| dist(ell[i], ell[(i + 1) % m])).fold(0.0, f64::max);
    let mut regions: Vec<Region> = rim.iter().map(|c| Region::UnitDisk(*c)).collect();
    regions.extend(chains.iter().map(|(_, c)| Region::UnitDisk(*c)));
    let mut sel = ell;
    sel.extend(chains.iter().map(|(_, c)| *c));
    let instance = Instance::new(Some(format!("flower-{m}")), regions)?;
    Ok(Flower {
        instance,
        ell_star: Selection::new(sel),
        n,
        big_radius: r,
        rim_count: m,
        chain_count: chains.len(),
        consecutive,
        sag,
        min_clearance,
    })
}

/// Bottleneck of the MST of the distinguished selection.
pub fn ell_star_bottleneck(f: &Flower) -> f64 {
    mbst(&f.ell_star.points).bottleneck
}
