//! Best-case optimum for convex regions by enumerating spanning-tree shapes.
//!
//! For a fixed labeled tree the smallest achievable longest edge is a convex program; it is
//! solved with a log-barrier Newton method. The best selection's MST is one of the trees, so
//! the minimum over all trees is the optimum up to the solver tolerance.

use super::{OracleMethod, OracleResult};
use crate::connectivity::mbst;
use crate::error::{Error, Result};
use crate::geometry::{dist, Point2};
use crate::instance::{containment_project, Instance, Region, Selection};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct TopologyOptions {
    /// Largest number of (tree, pair choice) programs.
    pub budget: u64,
    /// Target duality gap relative to the instance scale.
    pub rel_tol: f64,
}

impl Default for TopologyOptions {
    fn default() -> Self {
        TopologyOptions { budget: 2_000_000, rel_tol: 1e-10 }
    }
}

/// `phi(x) = x'Qx/2 + g'x + c`, kept positive by `-log phi`.
struct Barrier {
    q: Option<DMatrix<f64>>,
    g: DVector<f64>,
    c: f64,
    nu: f64,
}

impl Barrier {
    fn value(&self, x: &DVector<f64>) -> f64 {
        let quad = self.q.as_ref().map_or(0.0, |q| 0.5 * x.dot(&(q * x)));
        quad + self.g.dot(x) + self.c
    }

    fn grad(&self, x: &DVector<f64>) -> DVector<f64> {
        match &self.q {
            Some(q) => q * x + &self.g,
            None => self.g.clone(),
        }
    }
}

/// Affine map from the variable vector to one region's point.
#[derive(Clone)]
struct PointMap {
    m: DMatrix<f64>,
    off: DVector<f64>,
}

impl PointMap {
    fn eval(&self, x: &DVector<f64>) -> Point2 {
        let v = &self.m * x + &self.off;
        Point2::new(v[0], v[1])
    }
}

struct Program {
    dim: usize,
    maps: Vec<PointMap>,
    region_barriers: Vec<Barrier>,
    x0: DVector<f64>,
}

fn build_program(regions: &[Region], choice: &[Option<Point2>]) -> Result<Program> {
    let mut dim = 0;
    let mut slots = Vec::with_capacity(regions.len());
    for (i, r) in regions.iter().enumerate() {
        let k = match (r, choice[i]) {
            (_, Some(_)) | (Region::FixedPoint(_), _) => 0,
            (Region::Segment(_), _) => 1,
            (Region::UnitDisk(_) | Region::Disk { .. } | Region::Square { .. }, _) => 2,
            (Region::PointPair(..), None) => unreachable!("pairs are fixed by the caller"),
        };
        slots.push((dim, k));
        dim += k;
    }
    let dim = dim + 1; // last variable: the common edge bound
    let mut maps = Vec::new();
    let mut bars = Vec::new();
    let mut x0 = DVector::zeros(dim);
    for (i, r) in regions.iter().enumerate() {
        let (at, k) = slots[i];
        let mut m = DMatrix::zeros(2, dim);
        let mut off = DVector::zeros(2);
        let lin = |coef: &[(usize, f64)], c: f64| {
            let mut g = DVector::zeros(dim);
            for &(j, v) in coef {
                g[j] = v;
            }
            Barrier { q: None, g, c, nu: 1.0 }
        };
        if k == 0 {
            let p = choice[i].unwrap_or_else(|| r.center());
            off[0] = p.x;
            off[1] = p.y;
        } else {
            match *r {
                Region::Segment(s) => {
                    let d = s.b - s.a;
                    m[(0, at)] = d.x;
                    m[(1, at)] = d.y;
                    off[0] = s.a.x;
                    off[1] = s.a.y;
                    x0[at] = 0.5;
                    bars.push(lin(&[(at, 1.0)], 0.0));
                    bars.push(lin(&[(at, -1.0)], 1.0));
                }
                Region::UnitDisk(_) | Region::Disk { .. } => {
                    let (c, rad) = (r.center(), r.radius());
                    m[(0, at)] = 1.0;
                    m[(1, at + 1)] = 1.0;
                    x0[at] = c.x;
                    x0[at + 1] = c.y;
                    let mut q = DMatrix::zeros(dim, dim);
                    q[(at, at)] = -2.0;
                    q[(at + 1, at + 1)] = -2.0;
                    let mut g = DVector::zeros(dim);
                    g[at] = 2.0 * c.x;
                    g[at + 1] = 2.0 * c.y;
                    bars.push(Barrier { q: Some(q), g, c: rad * rad - c.norm2(), nu: 1.0 });
                }
                Region::Square { corner, side } => {
                    m[(0, at)] = 1.0;
                    m[(1, at + 1)] = 1.0;
                    x0[at] = corner.x + side / 2.0;
                    x0[at + 1] = corner.y + side / 2.0;
                    bars.push(lin(&[(at, 1.0)], -corner.x));
                    bars.push(lin(&[(at, -1.0)], corner.x + side));
                    bars.push(lin(&[(at + 1, 1.0)], -corner.y));
                    bars.push(lin(&[(at + 1, -1.0)], corner.y + side));
                }
                _ => unreachable!(),
            }
        }
        maps.push(PointMap { m, off });
    }
    Ok(Program { dim, maps, region_barriers: bars, x0 })
}

/// Minimizes the longest tree edge; returns the bound and the points.
fn solve_tree(prog: &Program, edges: &[(usize, usize)], tol: f64) -> Option<(f64, Vec<Point2>)> {
    let d = prog.dim;
    let ti = d - 1;
    let mut bars: Vec<&Barrier> = prog.region_barriers.iter().collect();
    let mut edge_bars = Vec::with_capacity(edges.len());
    for &(i, j) in edges {
        let a = &prog.maps[i].m - &prog.maps[j].m;
        let b = &prog.maps[i].off - &prog.maps[j].off;
        let mut q = a.transpose() * &a * -2.0;
        q[(ti, ti)] += 2.0;
        let g = a.transpose() * &b * -2.0;
        edge_bars.push(Barrier { q: Some(q), g, c: -b.norm_squared(), nu: 2.0 });
    }
    bars.extend(edge_bars.iter());

    let mut x = prog.x0.clone();
    let pts: Vec<Point2> = prog.maps.iter().map(|m| m.eval(&x)).collect();
    let longest = edges.iter().map(|&(i, j)| dist(pts[i], pts[j])).fold(0.0, f64::max);
    x[ti] = 1.1 * longest + 1e-3 * (1.0 + longest);
    let nu: f64 = bars.iter().map(|b| b.nu).sum();
    let mut s = nu / x[ti];

    let objective = |x: &DVector<f64>, s: f64| -> Option<f64> {
        let mut f = s * x[ti];
        for b in &bars {
            let v = b.value(x);
            if v <= 0.0 {
                return None;
            }
            f -= v.ln();
        }
        Some(f)
    };
    for _outer in 0..200 {
        for _newton in 0..100 {
            let mut grad = DVector::zeros(d);
            grad[ti] = s;
            let mut hess = DMatrix::zeros(d, d);
            for b in &bars {
                let v = b.value(&x);
                let gphi = b.grad(&x);
                grad -= &gphi / v;
                hess += &gphi * gphi.transpose() / (v * v);
                if let Some(q) = &b.q {
                    hess -= q / v;
                }
            }
            let step = match hess.clone().cholesky() {
                Some(ch) => ch.solve(&-&grad),
                None => {
                    let ridge = DMatrix::identity(d, d) * (1e-12 * hess.diagonal().amax().max(1.0));
                    (hess + ridge).cholesky()?.solve(&-&grad)
                }
            };
            let decrement = -grad.dot(&step);
            if decrement / 2.0 < 1e-12 {
                break;
            }
            let f0 = objective(&x, s)?;
            let mut t = 1.0;
            loop {
                let cand = &x + &step * t;
                if let Some(f1) = objective(&cand, s) {
                    if f1 <= f0 - 0.25 * t * decrement {
                        x = cand;
                        break;
                    }
                }
                t *= 0.5;
                if t < 1e-20 {
                    break;
                }
            }
            if t < 1e-20 {
                break;
            }
        }
        if nu / s < tol {
            break;
        }
        s *= 8.0;
    }
    let pts: Vec<Point2> = prog.maps.iter().map(|m| m.eval(&x)).collect();
    let longest = edges.iter().map(|&(i, j)| dist(pts[i], pts[j])).fold(0.0, f64::max);
    Some((longest, pts))
}

/// All labeled trees on `n` vertices, in Prüfer-sequence order.
pub fn labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n < 2 {
        return vec![vec![]];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let total = n.pow((n - 2) as u32);
    let mut out = Vec::with_capacity(total);
    let mut code = vec![0usize; n - 2];
    for mut k in 0..total {
        for c in code.iter_mut().rev() {
            *c = k % n;
            k /= n;
        }
        out.push(prufer_decode(&code, n));
    }
    out
}

fn prufer_decode(code: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf.min(c), leaf.max(c)));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Best-case optimum over fixed points, pairs, segments, disks and squares.
pub fn topology_bcu(inst: &Instance, opts: &TopologyOptions) -> Result<OracleResult> {
    let regions = &inst.regions;
    let n = regions.len();
    let pairs: Vec<usize> = (0..n).filter(|&i| matches!(regions[i], Region::PointPair(..))).collect();
    let trees_count = (n as f64).powi(n as i32 - 2).max(1.0);
    let required = trees_count * 2f64.powi(pairs.len() as i32);
    if required > opts.budget as f64 {
        return Err(Error::BudgetExceeded { what: "tree programs", required, budget: opts.budget as f64 });
    }
    let scale = inst.bbox().diameter().max(1.0);
    let tol = opts.rel_tol * scale;
    let trees = labeled_trees(n);
    let min_d: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| regions[i].min_distance(&regions[j])).collect()).collect();

    let mut jobs: Vec<(f64, Vec<Option<Point2>>, usize)> = Vec::new();
    for mask in 0..1u64 << pairs.len() {
        let mut choice = vec![None; n];
        for (k, &i) in pairs.iter().enumerate() {
            if let Region::PointPair(a, b) = regions[i] {
                choice[i] = Some(if mask >> k & 1 == 0 { a } else { b });
            }
        }
        for (t, edges) in trees.iter().enumerate() {
            let lb = edges
                .iter()
                .map(|&(i, j)| match (choice[i], choice[j]) {
                    (Some(p), Some(q)) => dist(p, q),
                    (Some(p), None) => regions[j].distance_to(p),
                    (None, Some(q)) => regions[i].distance_to(q),
                    (None, None) => min_d[i][j],
                })
                .fold(0.0, f64::max);
            jobs.push((lb, choice.clone(), t));
        }
    }
    jobs.sort_by(|a, b| a.0.total_cmp(&b.0));

    const BATCH: usize = 64;
    let mut best: Option<(f64, Vec<Point2>)> = None;
    let mut solved = 0u64;
    for batch in jobs.chunks(BATCH) {
        let cutoff = best.as_ref().map_or(f64::INFINITY, |b| b.0);
        if batch[0].0 >= cutoff - tol {
            break;
        }
        let results: Vec<Option<(f64, Vec<Point2>)>> = batch
            .par_iter()
            .map(|(lb, choice, t)| {
                if *lb >= cutoff - tol {
                    return None;
                }
                let prog = build_program(regions, choice).ok()?;
                solve_tree(&prog, &trees[*t], tol)
            })
            .collect();
        for r in results.into_iter().flatten() {
            solved += 1;
            if best.as_ref().is_none_or(|b| r.0 < b.0 - tol) {
                best = Some(r);
            }
        }
    }
    let (_, pts) = best.ok_or_else(|| Error::Precision("no tree program converged".into()))?;
    let pts: Vec<Point2> = pts.iter().zip(regions).map(|(p, r)| containment_project(r, *p)).collect();
    let alpha = mbst(&pts).alpha;
    Ok(OracleResult {
        alpha,
        selection: Selection::new(pts),
        grid: 0,
        exhaustive: true,
        method: OracleMethod::Topology,
        evaluated: solved,
    })
}
