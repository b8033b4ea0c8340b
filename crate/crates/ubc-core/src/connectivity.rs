//! Connectivity graphs, bottleneck spanning trees and the preferred-over order.

use crate::error::{Error, Result};
use crate::geometry::{dist, Point2};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Edges `(i, j)`, `i < j`, between points at distance at most `2 alpha + eps`.
pub fn build_connectivity_graph(points: &[Point2], alpha: f64, eps: f64) -> Vec<(usize, usize)> {
    let lim = 2.0 * alpha + eps;
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if dist(points[i], points[j]) <= lim {
                edges.push((i, j));
            }
        }
    }
    edges
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut uf = UnionFind::<usize>::new(n);
    let mut comps = n;
    for &(i, j) in edges {
        if uf.union(i, j) {
            comps -= 1;
        }
    }
    comps == 1
}

/// Whether `points` form a connected graph at parameter `alpha`.
pub fn connected_at(points: &[Point2], alpha: f64, eps: f64) -> bool {
    is_connected(points.len(), &build_connectivity_graph(points, alpha, eps))
}

/// A minimum spanning tree, which is also a minimum bottleneck spanning tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanningSolution {
    /// Tree edges `(i, j)` with `i < j`, ordered like `lengths_desc`.
    pub edges: Vec<(usize, usize)>,
    pub lengths_desc: Vec<f64>,
    pub bottleneck: f64,
    /// Half the bottleneck: the smallest `alpha` whose graph contains this tree.
    pub alpha: f64,
}

/// Dense Prim's algorithm, O(n^2). Ties go to the lower index.
pub fn mbst(points: &[Point2]) -> SpanningSolution {
    let n = points.len();
    let mut edges: Vec<(usize, usize, f64)> = Vec::with_capacity(n.saturating_sub(1));
    if n > 1 {
        let mut in_tree = vec![false; n];
        let mut best = vec![f64::INFINITY; n];
        let mut from = vec![0usize; n];
        in_tree[0] = true;
        for j in 1..n {
            best[j] = dist(points[0], points[j]);
        }
        for _ in 1..n {
            let mut v = usize::MAX;
            for j in 0..n {
                if !in_tree[j] && (v == usize::MAX || best[j] < best[v]) {
                    v = j;
                }
            }
            in_tree[v] = true;
            let u = from[v];
            edges.push((u.min(v), u.max(v), best[v]));
            for j in 0..n {
                if !in_tree[j] {
                    let d = dist(points[v], points[j]);
                    if d < best[j] {
                        best[j] = d;
                        from[j] = v;
                    }
                }
            }
        }
    }
    edges.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    let bottleneck = edges.first().map_or(0.0, |e| e.2);
    SpanningSolution {
        edges: edges.iter().map(|e| (e.0, e.1)).collect(),
        lengths_desc: edges.iter().map(|e| e.2).collect(),
        bottleneck,
        alpha: bottleneck / 2.0,
    }
}

/// Bottleneck of the minimum spanning tree of a dense symmetric weight matrix.
pub fn bottleneck_of_matrix(n: usize, w: impl Fn(usize, usize) -> f64) -> f64 {
    if n <= 1 {
        return 0.0;
    }
    let mut in_tree = vec![false; n];
    let mut best: Vec<f64> = (0..n).map(|j| w(0, j)).collect();
    in_tree[0] = true;
    let mut bottleneck: f64 = 0.0;
    for _ in 1..n {
        let mut v = usize::MAX;
        for j in 0..n {
            if !in_tree[j] && (v == usize::MAX || best[j] < best[v]) {
                v = j;
            }
        }
        in_tree[v] = true;
        bottleneck = bottleneck.max(best[v]);
        for j in 0..n {
            if !in_tree[j] {
                best[j] = best[j].min(w(v, j));
            }
        }
    }
    bottleneck
}

/// Outcome of comparing two descending edge-length lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preference {
    /// The first list is lexicographically smaller.
    Preferred,
    Tie,
    Dispreferred,
}

/// Lexicographic comparison of descending edge lists, treating differences within `eps` as equal.
pub fn compare_edge_lists(a: &[f64], b: &[f64], eps: f64) -> Result<Preference> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > eps {
            return Ok(match x.partial_cmp(y) {
                Some(Ordering::Less) => Preference::Preferred,
                _ => Preference::Dispreferred,
            });
        }
    }
    Ok(Preference::Tie)
}

/// A link added by [`greedy_component_join`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JoinEdge {
    pub i: usize,
    pub j: usize,
    pub length: f64,
}

/// Merges the given components by repeatedly adding the globally shortest inter-component link.
///
/// Fails with the offending distance as soon as the shortest remaining link exceeds `max_len`.
/// Points not listed in any component are ignored.
pub fn greedy_component_join(points: &[Point2], components: &[Vec<usize>], max_len: f64) -> Result<Vec<JoinEdge>> {
    let mut label: Vec<usize> = Vec::new();
    let mut members: Vec<usize> = Vec::new();
    for (c, comp) in components.iter().enumerate() {
        for &i in comp {
            label.push(c);
            members.push(i);
        }
    }
    let mut uf = UnionFind::<usize>::new(components.len().max(1));
    let mut remaining = components.iter().filter(|c| !c.is_empty()).count().saturating_sub(1);
    let mut out = Vec::with_capacity(remaining);
    while remaining > 0 {
        let mut best: Option<JoinEdge> = None;
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                if uf.equiv(label[a], label[b]) {
                    continue;
                }
                let (i, j) = (members[a].min(members[b]), members[a].max(members[b]));
                let d = dist(points[i], points[j]);
                let better = match best {
                    None => true,
                    Some(e) => d < e.length || (d == e.length && (i, j) < (e.i, e.j)),
                };
                if better {
                    best = Some(JoinEdge { i, j, length: d });
                }
            }
        }
        let e = best.expect("at least two components remain");
        if e.length > max_len {
            return Err(Error::JoinFailed { distance: e.length });
        }
        let (la, lb) = (
            label[members.iter().position(|&m| m == e.i).unwrap()],
            label[members.iter().position(|&m| m == e.j).unwrap()],
        );
        uf.union(la, lb);
        out.push(e);
        remaining -= 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    #[test]
    fn mbst_on_a_line() {
        let t = mbst(&pts(&[(0.0, 0.0), (3.0, 0.0), (1.0, 0.0)]));
        assert_eq!(t.lengths_desc, vec![2.0, 1.0]);
        assert_eq!(t.edges, vec![(1, 2), (0, 2)]);
        assert_eq!(t.alpha, 1.0);
    }

    #[test]
    fn graph_threshold_is_inclusive() {
        let p = pts(&[(0.0, 0.0), (2.0, 0.0)]);
        assert!(connected_at(&p, 1.0, 0.0));
        assert!(!connected_at(&p, 0.999, 0.0));
    }

    #[test]
    fn comparator_basic() {
        assert_eq!(compare_edge_lists(&[3.0, 1.0], &[3.0, 2.0], 1e-9).unwrap(), Preference::Preferred);
        assert_eq!(compare_edge_lists(&[3.0, 2.0], &[3.0, 2.0 + 1e-12], 1e-9).unwrap(), Preference::Tie);
        assert!(compare_edge_lists(&[1.0], &[1.0, 2.0], 1e-9).is_err());
    }

    #[test]
    fn greedy_join_reports_distance() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (10.0, 0.0)]);
        let comps = vec![vec![0], vec![1], vec![2]];
        let e = greedy_component_join(&p, &comps, 100.0).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!((e[0].i, e[0].j, e[0].length), (0, 1, 1.0));
        match greedy_component_join(&p, &comps, 5.0) {
            Err(Error::JoinFailed { distance }) => assert_eq!(distance, 9.0),
            r => panic!("{r:?}"),
        }
    }
}
