//! Exhaustive scan over the Cartesian product of per-region lattices.
//!
//! Optionally skips a prefix when a relaxation proves that no completion can beat the
//! incumbent strictly; the result is then identical to the plain scan.

use super::{OracleMethod, OracleResult};
use crate::connectivity::bottleneck_of_matrix;
use crate::error::{Error, Result};
use crate::geometry::{dist, Point2};
use crate::instance::{discretize, Instance, Region, Selection};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Which extreme the scan looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Best case: smallest bottleneck.
    Min,
    /// Worst case: largest bottleneck.
    Max,
}

struct Scan<'a> {
    regions: &'a [Region],
    samples: &'a [Vec<Point2>],
    vars: &'a [usize],
    /// Region-to-region relaxation (min or max distance).
    pair_bound: &'a [Vec<f64>],
    objective: Objective,
    prune: bool,
    slack: f64,
}

struct Local {
    value: f64,
    tuple: Option<Vec<u32>>,
    evaluated: u64,
}

impl Scan<'_> {
    fn improves(&self, v: f64, best: &Local) -> bool {
        match self.objective {
            Objective::Min => v < best.value || (best.tuple.is_none() && v <= best.value),
            Objective::Max => v > best.value || (best.tuple.is_none() && v >= best.value),
        }
    }

    /// Later tuples in a chunk are lexicographically larger, so once the chunk holds a witness
    /// a tie cannot win either; before that only strictly worse prefixes go.
    fn hopeless(&self, bound: f64, best: &Local) -> bool {
        let tie_loses = best.tuple.is_some();
        match self.objective {
            Objective::Min if tie_loses => bound >= best.value,
            Objective::Min => bound > best.value + self.slack,
            Objective::Max if tie_loses => bound <= best.value,
            Objective::Max => bound < best.value - self.slack,
        }
    }

    fn bound(&self, pts: &[Point2], placed: &[bool]) -> f64 {
        let n = pts.len();
        bottleneck_of_matrix(n, |i, j| match (placed[i], placed[j]) {
            (true, true) => dist(pts[i], pts[j]),
            (true, false) => self.point_bound(j, pts[i]),
            (false, true) => self.point_bound(i, pts[j]),
            (false, false) => self.pair_bound[i][j],
        })
    }

    fn point_bound(&self, region: usize, p: Point2) -> f64 {
        match self.objective {
            Objective::Min => self.regions[region].distance_to(p),
            Objective::Max => self.regions[region].max_distance_to(p),
        }
    }

    /// Scans the last open region with every other point fixed.
    ///
    /// With `e_1 >= e_2 >= ...` the MST edges of the fixed points, dropping the `i` longest
    /// splits them into `i + 1` components; the bottleneck with `x` added is the minimum over
    /// `i` of `max(e_{i+1}, max over components of the distance from x to it)`.
    fn last_level(&self, r: usize, pts: &mut [Point2], tuple: &mut Vec<u32>, best: &mut Local) {
        let others: Vec<Point2> = (0..pts.len()).filter(|&i| i != r).map(|i| pts[i]).collect();
        let m = others.len();
        let mut edges = mst_edges(&others);
        edges.sort_by(|a, b| b.0.total_cmp(&a.0));
        let labels: Vec<Vec<usize>> = (0..m)
            .map(|i| {
                let mut uf = UnionFind::<usize>::new(m);
                for e in &edges[i..] {
                    uf.union(e.1, e.2);
                }
                let mut roots: Vec<usize> = (0..m).map(|k| uf.find(k)).collect();
                let mut ids = roots.clone();
                ids.sort_unstable();
                ids.dedup();
                for x in roots.iter_mut() {
                    *x = ids.binary_search(x).unwrap();
                }
                roots
            })
            .collect();
        let mut d = vec![0.0; m];
        let mut mins = vec![0.0; m];
        for (k, x) in self.samples[r].iter().enumerate() {
            for (dk, o) in d.iter_mut().zip(&others) {
                *dk = dist(*x, *o);
            }
            let mut v = f64::INFINITY;
            for (i, lab) in labels.iter().enumerate() {
                let kept = if i < edges.len() { edges[i].0 } else { 0.0 };
                mins[..=i].fill(f64::INFINITY);
                for (dk, &l) in d.iter().zip(lab) {
                    if *dk < mins[l] {
                        mins[l] = *dk;
                    }
                }
                let term = mins[..=i].iter().copied().fold(0.0, f64::max);
                v = v.min(kept.max(term));
                if term >= v {
                    break;
                }
            }
            best.evaluated += 1;
            if self.improves(v, best) {
                pts[r] = *x;
                tuple.push(k as u32);
                best.value = v;
                best.tuple = Some(tuple.clone());
                tuple.pop();
            }
        }
    }

    fn dfs(&self, depth: usize, pts: &mut [Point2], placed: &mut [bool], tuple: &mut Vec<u32>, best: &mut Local) {
        if depth == self.vars.len() {
            best.evaluated += 1;
            let v = bottleneck_of_matrix(pts.len(), |i, j| dist(pts[i], pts[j]));
            if self.improves(v, best) {
                best.value = v;
                best.tuple = Some(tuple.clone());
            }
            return;
        }
        if self.prune && self.hopeless(self.bound(pts, placed), best) {
            return;
        }
        let r = self.vars[depth];
        if depth + 1 == self.vars.len() && pts.len() >= 3 {
            self.last_level(r, pts, tuple, best);
            return;
        }
        placed[r] = true;
        for (k, p) in self.samples[r].iter().enumerate() {
            pts[r] = *p;
            tuple.push(k as u32);
            self.dfs(depth + 1, pts, placed, tuple, best);
            tuple.pop();
        }
        placed[r] = false;
    }
}

/// Scans `discretize(r, g)` for every region and returns the extreme MST bottleneck.
pub fn brute_force(inst: &Instance, g: usize, budget: u64, objective: Objective, prune: bool) -> Result<OracleResult> {
    if g == 0 {
        return Err(Error::InvalidParameter("grid must be positive".into()));
    }
    let regions = &inst.regions;
    let n = regions.len();
    let samples: Vec<Vec<Point2>> = regions.iter().map(|r| discretize(r, g)).collect();
    let required: f64 = samples.iter().map(|s| s.len() as f64).product();
    if required > budget as f64 {
        return Err(Error::BudgetExceeded { what: "oracle combinations", required, budget: budget as f64 });
    }
    let vars: Vec<usize> = (0..n).filter(|&i| samples[i].len() > 1).collect();
    let pair_bound: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match objective {
                    Objective::Min => regions[i].min_distance(&regions[j]),
                    Objective::Max => regions[i].max_distance(&regions[j]),
                })
                .collect()
        })
        .collect();
    let scale = inst.bbox().diameter().max(1.0);
    let scan = Scan { regions, samples: &samples, vars: &vars, pair_bound: &pair_bound, objective, prune, slack: 1e-12 * scale };

    // Seed: an achievable value, from a coarse scan snapped to this lattice (or the samples nearest
    // the region centers). Any selection of samples is a valid incumbent for either objective.
    let nearest = |i: usize, q: Point2| *samples[i].iter().min_by(|a, b| dist(**a, q).total_cmp(&dist(**b, q))).unwrap();
    let coarse = if prune && g >= 16 { brute_force(inst, g / 8, budget, objective, true).ok() } else { None };
    let seed_pts: Vec<Point2> = match &coarse {
        Some(c) => (0..n).map(|i| nearest(i, c.selection.points[i])).collect(),
        None => (0..n).map(|i| nearest(i, regions[i].center())).collect(),
    };
    let seed = bottleneck_of_matrix(n, |i, j| dist(seed_pts[i], seed_pts[j]));

    let base: Vec<Point2> = (0..n).map(|i| samples[i][0]).collect();
    let placed0: Vec<bool> = (0..n).map(|i| samples[i].len() == 1).collect();
    let run_chunk = |first: Option<usize>| -> Local {
        let mut pts = base.clone();
        let mut placed = placed0.clone();
        let mut tuple = Vec::with_capacity(vars.len());
        let mut best = Local { value: seed, tuple: None, evaluated: 0 };
        match first {
            None => scan.dfs(0, &mut pts, &mut placed, &mut tuple, &mut best),
            Some(k) => {
                let r = vars[0];
                pts[r] = samples[r][k];
                placed[r] = true;
                tuple.push(k as u32);
                scan.dfs(1, &mut pts, &mut placed, &mut tuple, &mut best);
            }
        }
        best
    };
    let chunks: Vec<Local> = if vars.is_empty() {
        vec![run_chunk(None)]
    } else {
        (0..samples[vars[0]].len()).into_par_iter().map(|k| run_chunk(Some(k))).collect()
    };

    let evaluated = chunks.iter().map(|c| c.evaluated).sum();
    // Chunks come in tuple order, so the first extreme value carries the smallest tuple.
    let mut winner: Option<&Local> = None;
    for c in chunks.iter().filter(|c| c.tuple.is_some()) {
        let better = match winner {
            None => true,
            Some(w) => match objective {
                Objective::Min => c.value < w.value,
                Objective::Max => c.value > w.value,
            },
        };
        if better {
            winner = Some(c);
        }
    }
    let tuple = winner.and_then(|w| w.tuple.clone()).ok_or_else(|| Error::Precision("lattice scan found no witness".into()))?;
    let mut points = base;
    for (d, &r) in vars.iter().enumerate() {
        points[r] = samples[r][tuple[d] as usize];
    }
    let value = winner.unwrap().value;
    let exhaustive = regions.iter().all(|r| matches!(r, Region::FixedPoint(_) | Region::PointPair(..)));
    Ok(OracleResult {
        alpha: value / 2.0,
        selection: Selection::new(points),
        grid: g,
        exhaustive,
        method: OracleMethod::Lattice,
        evaluated,
    })
}

/// Best-case optimum over the lattice.
pub fn brute_force_bcu(inst: &Instance, g: usize, budget: u64) -> Result<OracleResult> {
    brute_force(inst, g, budget, Objective::Min, true)
}

/// Worst-case value over the lattice (from below for continuous regions).
pub fn brute_force_wcu(inst: &Instance, g: usize, budget: u64) -> Result<OracleResult> {
    brute_force(inst, g, budget, Objective::Max, true)
}

/// MST edges `(length, i, j)` by dense Prim.
fn mst_edges(p: &[Point2]) -> Vec<(f64, usize, usize)> {
    let n = p.len();
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    if n < 2 {
        return out;
    }
    let mut in_tree = vec![false; n];
    let mut best: Vec<f64> = (0..n).map(|j| dist(p[0], p[j])).collect();
    let mut from = vec![0usize; n];
    in_tree[0] = true;
    for _ in 1..n {
        let v = (0..n).filter(|&j| !in_tree[j]).min_by(|&a, &b| best[a].total_cmp(&best[b])).unwrap();
        in_tree[v] = true;
        out.push((best[v], from[v], v));
        for j in 0..n {
            if !in_tree[j] {
                let dj = dist(p[v], p[j]);
                if dj < best[j] {
                    best[j] = dj;
                    from[j] = v;
                }
            }
        }
    }
    out
}
