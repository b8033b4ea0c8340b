//! Exact solver for points, pairs and segments.
//!
//! Branches on tight critical paths, fixing their segment points one level at a time, and
//! prunes with a spanning-tree lower bound over element-to-element distances.

use super::reach::{critical_path, enumerate_sequences, reach_feasible, CriticalPath, Element, Outcome};
use crate::connectivity::{bottleneck_of_matrix, compare_edge_lists, mbst, Preference, SpanningSolution};
use crate::error::{Error, Result};
use crate::geometry::{dist, point_segment_distance, segment_segment_closest, Point2, Segment};
use crate::instance::{Instance, Region, Selection};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactOptions {
    /// Bisection width; defaults to `1e-9` times the bounding-box diameter.
    pub delta: Option<f64>,
    /// Geometric tolerance; defaults to the instance tolerance.
    pub eps: Option<f64>,
    /// Search nodes allowed over all pair branches.
    pub node_budget: u64,
    /// Largest number of pair branches (`2^pairs`).
    pub max_pair_branches: u64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { delta: None, eps: None, node_budget: 200_000, max_pair_branches: 1 << 20 }
    }
}

/// The critical path fixed at one recursion level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    /// Region indices along the path.
    pub sequence: Vec<usize>,
    pub lambda: f64,
    pub points: Vec<Point2>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub alpha: f64,
    pub selection: Selection,
    pub solution: SpanningSolution,
    pub levels: Vec<LevelRecord>,
    pub nodes: u64,
    /// Leaves reached by the nearest-point fallback rather than by critical paths.
    pub fallbacks: u64,
    pub pair_branches: u64,
    pub delta: f64,
    pub eps: f64,
}

struct Best {
    points: Vec<Point2>,
    solution: SpanningSolution,
    levels: Vec<LevelRecord>,
}

struct Search<'a> {
    segs: &'a [Option<Segment>],
    delta: f64,
    eps: f64,
    budget: u64,
    nodes: u64,
    fallbacks: u64,
    best: Option<Best>,
    seen: HashSet<Vec<i64>>,
}

impl Search<'_> {
    fn upper(&self) -> f64 {
        self.best.as_ref().map_or(f64::INFINITY, |b| b.solution.bottleneck)
    }

    fn offer(&mut self, points: Vec<Point2>, levels: &[LevelRecord]) {
        let solution = mbst(&points);
        let better = match &self.best {
            None => true,
            Some(b) => {
                let d = solution.bottleneck - b.solution.bottleneck;
                d < -self.eps
                    || (d.abs() <= self.eps
                        && compare_edge_lists(&solution.lengths_desc, &b.solution.lengths_desc, self.eps)
                            .is_ok_and(|p| p == Preference::Preferred))
            }
        };
        if better {
            self.best = Some(Best { points, solution, levels: levels.to_vec() });
        }
    }

    fn elements(&self, fixed: &[Option<Point2>]) -> Vec<Element> {
        fixed
            .iter()
            .enumerate()
            .map(|(i, f)| match f {
                Some(p) => Element::fixed(i, *p),
                None => Element::seg(i, self.segs[i].expect("unfixed element is a segment")),
            })
            .collect()
    }

    fn lower_bound(elements: &[Element]) -> f64 {
        let s: Vec<Segment> = elements.iter().map(Element::segment).collect();
        bottleneck_of_matrix(s.len(), |i, j| segment_segment_closest(&s[i], &s[j]).0)
    }

    fn key(&self, fixed: &[Option<Point2>]) -> Vec<i64> {
        let q = 16.0 * self.eps.max(f64::MIN_POSITIVE);
        let mut k = Vec::new();
        for (i, f) in fixed.iter().enumerate() {
            if self.segs[i].is_some() {
                match f {
                    Some(p) => k.extend([(p.x / q).round() as i64, (p.y / q).round() as i64]),
                    None => k.extend([i64::MIN, i64::MIN]),
                }
            }
        }
        k
    }

    fn visit(&mut self, fixed: &mut Vec<Option<Point2>>, levels: &mut Vec<LevelRecord>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { what: "exact search nodes", required: self.nodes as f64, budget: self.budget as f64 });
        }
        if fixed.iter().all(Option::is_some) {
            let pts = fixed.iter().map(|p| p.unwrap()).collect();
            self.offer(pts, levels);
            return Ok(());
        }
        let elements = self.elements(fixed);
        let ub = self.upper();
        if Self::lower_bound(&elements) >= ub - self.eps {
            return Ok(());
        }
        if !self.seen.insert(self.key(fixed)) {
            return Ok(());
        }

        let limit = ub + self.eps;
        let seqs = enumerate_sequences(&elements);
        let (delta, eps) = (self.delta, self.eps);
        let found: Vec<Result<Option<CriticalPath>>> = seqs
            .par_iter()
            .filter(|s| s.elements.iter().any(Element::is_seg))
            .filter(|s| !limit.is_finite() || reach_feasible(s, limit, eps))
            .map(|s| {
                let cp = critical_path(s, delta, eps)?;
                Ok((cp.outcome == Outcome::Beta && cp.lambda <= limit).then_some(cp))
            })
            .collect();
        let mut paths = Vec::new();
        for r in found {
            if let Some(cp) = r? {
                paths.push(cp);
            }
        }
        // Smallest lambda first, then the canonical sequence order (already the input order).
        let q = eps.max(f64::MIN_POSITIVE);
        paths.sort_by_key(|cp| (cp.lambda / q).round() as i64);

        if paths.is_empty() {
            self.fallbacks += 1;
            let pts = self.fallback(fixed);
            self.offer(pts, levels);
            return Ok(());
        }
        for cp in paths {
            if cp.lambda > self.upper() + self.eps {
                continue;
            }
            let changed: Vec<usize> = cp
                .sequence
                .elements
                .iter()
                .zip(&cp.points)
                .filter(|(e, _)| e.is_seg())
                .map(|(e, p)| {
                    fixed[e.index] = Some(*p);
                    e.index
                })
                .collect();
            levels.push(LevelRecord { sequence: cp.sequence.indices(), lambda: cp.lambda, points: cp.points.clone() });
            let r = self.visit(fixed, levels);
            levels.pop();
            for i in changed {
                fixed[i] = None;
            }
            r?;
        }
        Ok(())
    }

    /// Fixes every open segment at its point nearest to the already fixed points.
    fn fallback(&self, fixed: &[Option<Point2>]) -> Vec<Point2> {
        let anchors: Vec<Point2> = fixed.iter().flatten().copied().collect();
        fixed
            .iter()
            .enumerate()
            .map(|(i, f)| match f {
                Some(p) => *p,
                None => {
                    let s = self.segs[i].unwrap();
                    anchors
                        .iter()
                        .map(|a| point_segment_distance(*a, &s))
                        .min_by(|x, y| x.0.total_cmp(&y.0))
                        .map_or(s.midpoint(), |(_, q)| q)
                }
            })
            .collect()
    }
}

/// Minimizes the bottleneck over instances made of fixed points, point pairs and segments.
pub fn solve_exact(inst: &Instance, opts: &ExactOptions) -> Result<ExactReport> {
    let diam = inst.bbox().diameter();
    let eps = opts.eps.unwrap_or_else(|| inst.eps());
    let delta = opts.delta.unwrap_or(1e-9 * diam.max(1.0));
    if !(eps > 0.0 && delta > 0.0) {
        return Err(Error::InvalidParameter("eps and delta must be positive".into()));
    }
    let mut pairs = Vec::new();
    let mut segs = vec![None; inst.len()];
    for (i, r) in inst.regions.iter().enumerate() {
        match *r {
            Region::FixedPoint(_) => {}
            Region::PointPair(..) => pairs.push(i),
            Region::Segment(s) => segs[i] = Some(s),
            _ => return Err(Error::UnsupportedRegion { index: i, kind: r.kind(), operation: "solve_exact" }),
        }
    }
    let branches = 1u64.checked_shl(pairs.len() as u32).unwrap_or(u64::MAX);
    if pairs.len() >= 64 || branches > opts.max_pair_branches {
        return Err(Error::BudgetExceeded { what: "pair branches", required: branches as f64, budget: opts.max_pair_branches as f64 });
    }

    let mut search = Search { segs: &segs, delta, eps, budget: opts.node_budget, nodes: 0, fallbacks: 0, best: None, seen: HashSet::new() };
    for mask in 0..branches {
        let mut fixed: Vec<Option<Point2>> = inst
            .regions
            .iter()
            .enumerate()
            .map(|(i, r)| match *r {
                Region::FixedPoint(p) => Some(p),
                Region::PointPair(a, b) => {
                    let k = pairs.iter().position(|&j| j == i).unwrap();
                    Some(if mask >> k & 1 == 0 { a } else { b })
                }
                _ => None,
            })
            .collect();
        // Starting incumbent: segment midpoints.
        let start: Vec<Point2> = fixed.iter().enumerate().map(|(i, f)| f.unwrap_or_else(|| segs[i].unwrap().midpoint())).collect();
        search.offer(start, &[]);
        search.seen.clear();
        search.visit(&mut fixed, &mut Vec::new())?;
        log::debug!("pair branch {mask}: nodes so far {}, bound {}", search.nodes, search.upper());
    }
    let best = search.best.expect("at least one branch");
    Ok(ExactReport {
        alpha: best.solution.alpha,
        selection: Selection::new(best.points),
        solution: best.solution,
        levels: best.levels,
        nodes: search.nodes,
        fallbacks: search.fallbacks,
        pair_branches: branches,
        delta,
        eps,
    })
}

/// Bottleneck of the path through `points` in order.
pub fn path_bottleneck(points: &[Point2]) -> f64 {
    points.windows(2).map(|w| dist(w[0], w[1])).fold(0.0, f64::max)
}
