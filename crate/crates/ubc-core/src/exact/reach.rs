//! Reach propagation along support sequences and critical paths.

use crate::error::{Error, Result};
use crate::geometry::{capsule_segment_intersection, dist, point_segment_distance, segment_segment_closest, Capsule, Point2, Segment, SegmentOverlap};
use serde::{Deserialize, Serialize};

/// Geometry of a sequence element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Fixed { p: Point2 },
    Seg { s: Segment },
}

/// A fixed point or a segment, tagged with its index in the working instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub shape: Shape,
    pub index: usize,
}

impl Element {
    pub fn fixed(index: usize, p: Point2) -> Self {
        Element { shape: Shape::Fixed { p }, index }
    }

    pub fn seg(index: usize, s: Segment) -> Self {
        Element { shape: Shape::Seg { s }, index }
    }

    pub fn is_seg(&self) -> bool {
        matches!(self.shape, Shape::Seg { .. })
    }

    /// The element as a (possibly degenerate) segment.
    pub fn segment(&self) -> Segment {
        match self.shape {
            Shape::Fixed { p } => Segment::point(p),
            Shape::Seg { s } => s,
        }
    }
}

/// An ordered list of distinct elements whose interior members are all segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportSequence {
    pub elements: Vec<Element>,
}

impl SupportSequence {
    pub fn new(elements: Vec<Element>) -> Result<Self> {
        if elements.len() < 2 {
            return Err(Error::InvalidParameter("a support sequence needs at least two elements".into()));
        }
        if elements[1..elements.len() - 1].iter().any(|e| !e.is_seg()) {
            return Err(Error::InvalidParameter("interior sequence elements must be segments".into()));
        }
        let mut idx: Vec<usize> = elements.iter().map(|e| e.index).collect();
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("support sequence repeats an element".into()));
        }
        Ok(SupportSequence { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.index).collect()
    }

    pub fn reversed(&self) -> SupportSequence {
        SupportSequence { elements: self.elements.iter().rev().copied().collect() }
    }
}

/// Shape of the tight part `S` of the reach boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SCase {
    /// No extremity of the current overlap is reached at exactly `lambda`.
    A,
    /// The overlap is the single point `p`; `S` is the full circle around it.
    B { p: Point2 },
    /// One extremity is tight; `S` is the half circle around it on the `direction` side.
    C { extremity: Point2, direction: Point2 },
    /// Both extremities are tight.
    D { e1: Point2, e2: Point2 },
    /// The whole boundary is tight (first element is a segment).
    Full,
}

impl SCase {
    fn anchors(&self) -> Vec<Point2> {
        match *self {
            SCase::B { p } => vec![p],
            SCase::C { extremity, .. } => vec![extremity],
            SCase::D { e1, e2 } => vec![e1, e2],
            SCase::A | SCase::Full => vec![],
        }
    }

    /// Points sampled from `S`; `n` per arc.
    pub fn sample(&self, capsule: &Capsule, n: usize) -> Vec<Point2> {
        let r = capsule.radius;
        let arc = |c: Point2, from: f64, span: f64| -> Vec<Point2> {
            (0..n)
                .map(|i| {
                    let t = from + span * (i as f64 + 0.5) / n as f64;
                    c + Point2::new(t.cos(), t.sin()) * r
                })
                .collect()
        };
        let half = |ext: Point2, dir: Point2| {
            let a = dir.y.atan2(dir.x);
            arc(ext, a - std::f64::consts::FRAC_PI_2, std::f64::consts::PI)
        };
        let base = capsule.base;
        match *self {
            SCase::A => vec![],
            SCase::B { p } => arc(p, 0.0, std::f64::consts::TAU),
            SCase::C { extremity, direction } => half(extremity, direction),
            SCase::D { e1, e2 } => {
                let d = (e1 - e2).normalized().unwrap_or(Point2::new(1.0, 0.0));
                let mut v = half(e1, d);
                v.extend(half(e2, -d));
                v
            }
            SCase::Full => {
                let Some(d) = (base.b - base.a).normalized() else {
                    return arc(base.a, 0.0, std::f64::consts::TAU);
                };
                let mut v = half(base.b, d);
                v.extend(half(base.a, -d));
                for side in [d.perp(), -d.perp()] {
                    v.extend((0..n).map(|i| base.at((i as f64 + 0.5) / n as f64) + side * r));
                }
                v
            }
        }
    }
}

/// Reach after processing a prefix of a support sequence at a fixed `lambda`.
///
/// `capsule.base` is the reachable part of the last processed element, `capsule.radius` is `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReachState {
    pub capsule: Capsule,
    pub s_case: SCase,
}

impl ReachState {
    pub fn initial(e: &Element, lambda: f64) -> Self {
        match e.shape {
            Shape::Fixed { p } => ReachState { capsule: Capsule::new(Segment::point(p), lambda), s_case: SCase::B { p } },
            Shape::Seg { s } => ReachState { capsule: Capsule::new(s, lambda), s_case: SCase::Full },
        }
    }

    pub fn base(&self) -> Segment {
        self.capsule.base
    }

    /// Whether `e` lies on `S`, i.e. on the capsule boundary at distance `lambda` from an anchor.
    fn on_s(&self, e: Point2, tol: f64) -> bool {
        let lambda = self.capsule.radius;
        let (d, _) = point_segment_distance(e, &self.capsule.base);
        if (d - lambda).abs() > tol {
            return false;
        }
        match self.s_case {
            SCase::Full => true,
            s => s.anchors().iter().any(|a| (dist(*a, e) - lambda).abs() <= tol),
        }
    }
}

/// Clips `next` against the current reach and classifies the tight extremities.
///
/// Returns `None` when `next` is out of reach.
pub fn propagate_reach(state: &ReachState, next: &Element, lambda: f64, eps: f64) -> Option<ReachState> {
    let tol = 4.0 * eps;
    let overlap = capsule_segment_intersection(&state.capsule, &next.segment(), eps);
    let s_case = match overlap {
        SegmentOverlap::Empty => return None,
        SegmentOverlap::SinglePoint { p } => {
            if state.on_s(p, tol) {
                SCase::B { p }
            } else {
                SCase::A
            }
        }
        SegmentOverlap::Subsegment { s } => match (state.on_s(s.a, tol), state.on_s(s.b, tol)) {
            (false, false) => SCase::A,
            (true, false) => SCase::C { extremity: s.a, direction: (s.a - s.b).normalized().expect("positive length") },
            (false, true) => SCase::C { extremity: s.b, direction: (s.b - s.a).normalized().expect("positive length") },
            (true, true) => SCase::D { e1: s.a, e2: s.b },
        },
    };
    let base = overlap.as_segment().expect("non-empty overlap");
    Some(ReachState { capsule: Capsule::new(base, lambda), s_case })
}

/// Propagates through the whole sequence; returns the states for elements `1..m-1`
/// (0-based `0..m-2`) followed by the final overlap, or `None` if some step is empty.
fn propagate_all(seq: &SupportSequence, lambda: f64, eps: f64) -> Option<Vec<ReachState>> {
    let mut states = Vec::with_capacity(seq.len());
    let mut cur = ReachState::initial(&seq.elements[0], lambda);
    states.push(cur);
    for e in &seq.elements[1..] {
        cur = propagate_reach(&cur, e, lambda, eps)?;
        states.push(cur);
    }
    Some(states)
}

/// Whether the last element is reachable at `lambda`.
pub fn reach_feasible(seq: &SupportSequence, lambda: f64, eps: f64) -> bool {
    let mut cur = ReachState::initial(&seq.elements[0], lambda);
    for e in &seq.elements[1..] {
        match propagate_reach(&cur, e, lambda, eps) {
            Some(s) => cur = s,
            None => return false,
        }
    }
    true
}

/// Result of the search for the smallest feasible `lambda`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaSearch {
    /// Feasible upper end of the final bracket.
    pub lambda: f64,
    /// Infeasible lower end (or equal to `lambda` when the lower estimate is feasible).
    pub lower: f64,
    pub iterations: usize,
    /// Every probe `(lambda, feasible)` in evaluation order.
    pub trace: Vec<(f64, bool)>,
}

impl LambdaSearch {
    /// True when no feasible probe lies below an infeasible one.
    pub fn is_monotone(&self) -> bool {
        let max_bad = self.trace.iter().filter(|t| !t.1).map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
        let min_ok = self.trace.iter().filter(|t| t.1).map(|t| t.0).fold(f64::INFINITY, f64::min);
        max_bad < min_ok
    }
}

/// Largest distance between points of two segments.
fn max_distance(s: &Segment, t: &Segment) -> f64 {
    [dist(s.a, t.a), dist(s.a, t.b), dist(s.b, t.a), dist(s.b, t.b)].into_iter().fold(0.0, f64::max)
}

pub const MAX_BISECTION_STEPS: usize = 200;

/// Smallest `lambda` (to within `delta`) at which the last element becomes reachable.
///
/// Starts from the largest consecutive gap, brackets upward exponentially, then bisects.
pub fn min_lambda(seq: &SupportSequence, delta: f64, eps: f64) -> Result<LambdaSearch> {
    let segs: Vec<Segment> = seq.elements.iter().map(Element::segment).collect();
    let lower0 = segs.windows(2).map(|w| segment_segment_closest(&w[0], &w[1]).0).fold(0.0, f64::max);
    let upper_cap: f64 = segs.windows(2).map(|w| max_distance(&w[0], &w[1])).sum::<f64>().max(lower0);
    let mut trace = Vec::new();
    let probe = |l: f64, trace: &mut Vec<(f64, bool)>| {
        let ok = reach_feasible(seq, l, eps);
        trace.push((l, ok));
        ok
    };
    if probe(lower0, &mut trace) {
        return Ok(LambdaSearch { lambda: lower0, lower: lower0, iterations: 1, trace });
    }
    let mut lo = lower0;
    let mut hi = upper_cap;
    let mut step = delta;
    let mut iterations = 1;
    // Exponential bracketing.
    loop {
        let l = lower0 + step;
        if l >= upper_cap {
            break;
        }
        iterations += 1;
        if probe(l, &mut trace) {
            hi = l;
            break;
        }
        lo = l;
        step *= 2.0;
        if iterations >= MAX_BISECTION_STEPS {
            break;
        }
    }
    while hi - lo > delta {
        if iterations >= MAX_BISECTION_STEPS {
            return Err(Error::Precision(format!("bracket [{lo}, {hi}] still wider than {delta} after {iterations} steps")));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        if probe(mid, &mut trace) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(LambdaSearch { lambda: hi, lower: lo, iterations, trace })
}

/// Outcome of the critical-path test for a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    /// The whole path is tight and its points are determined.
    Beta,
    /// The last element is already inside the reach when the prefix becomes feasible.
    AlphaFail,
    /// The last element touches the reach away from its tight part.
    GammaFail,
    /// The last element touches along a subsegment.
    DeltaFail,
    /// Nothing reachable at the bracket end (numerical failure).
    EmptyFail,
}

/// A sequence, its smallest common edge length and, on `Beta`, the witness points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPath {
    pub sequence: SupportSequence,
    pub lambda: f64,
    /// One point per element; empty unless the outcome is `Beta`.
    pub points: Vec<Point2>,
    pub outcome: Outcome,
}

/// Tolerance for locating contacts at the bisection end, where overlaps can be off by
/// a chord of length about `sqrt(lambda * delta)`.
fn contact_tol(lambda: f64, delta: f64, eps: f64) -> f64 {
    4.0 * (lambda.max(eps) * delta).sqrt() + 100.0 * eps
}

/// Runs [`min_lambda`] and classifies the contact with the last element.
pub fn critical_path(seq: &SupportSequence, delta: f64, eps: f64) -> Result<CriticalPath> {
    let search = min_lambda(seq, delta, eps)?;
    let lambda = search.lambda;
    let m = seq.len();
    let fail = |outcome| Ok(CriticalPath { sequence: seq.clone(), lambda, points: vec![], outcome });

    let Some(states) = propagate_all(seq, lambda, eps) else {
        return fail(Outcome::EmptyFail);
    };
    let prev = &states[m - 2];
    let base = prev.base();
    let last = seq.elements[m - 1].segment();
    let tol = contact_tol(lambda, delta, eps);
    let (gap, q, pm) = segment_segment_closest(&base, &last);

    // The prefix alone already needs this lambda and the last element is hit in the interior.
    if m >= 3 && gap < lambda - tol {
        let prefix = SupportSequence { elements: seq.elements[..m - 1].to_vec() };
        let pl = min_lambda(&prefix, delta, eps)?.lambda;
        if pl >= lambda - 2.0 * delta - 4.0 * eps {
            return fail(Outcome::AlphaFail);
        }
    }

    // Parallel contact along a stretch: the touching points are not unique.
    if !base.is_degenerate() && !last.is_degenerate() {
        let (u, v) = (base.b - base.a, last.b - last.a);
        let sin = u.cross(v).abs() / (u.norm() * v.norm());
        if sin <= 1e-9 {
            let ud = u.normalized().expect("proper segment");
            let (p0, p1) = ((last.a - base.a).dot(ud), (last.b - base.a).dot(ud));
            let (lo, hi) = (p0.min(p1).max(0.0), p0.max(p1).min(u.norm()));
            if hi - lo > tol {
                return fail(Outcome::DeltaFail);
            }
        }
    }

    let tight = match prev.s_case {
        SCase::Full => true,
        SCase::A => false,
        s => s.anchors().iter().any(|a| dist(*a, q) <= tol),
    };
    if !tight {
        return fail(Outcome::GammaFail);
    }

    // Back-propagate witnesses: each point is the nearest reachable point to its successor.
    let mut points = vec![Point2::default(); m];
    points[m - 1] = pm;
    for j in (0..m - 1).rev() {
        points[j] = point_segment_distance(points[j + 1], &states[j].base()).1;
    }
    let lambda = points.windows(2).map(|w| dist(w[0], w[1])).fold(0.0, f64::max);
    Ok(CriticalPath { sequence: seq.clone(), lambda, points, outcome: Outcome::Beta })
}

/// Local optimality type of a point on a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointType {
    /// At an extremity, pulled outward.
    Type1,
    /// Interior, with a longest edge perpendicular to the segment.
    Type2,
    /// Interior, with longest edges on both sides of the perpendicular.
    Type3,
    NotLocallyOptimal,
}

/// Classifies `p` on `seg` given the neighbors realizing its locally longest incident edges.
pub fn classify_point_type(p: Point2, seg: &Segment, incident_longest: &[Point2], eps: f64) -> Result<PointType> {
    if incident_longest.is_empty() {
        return Err(Error::InvalidParameter("classify_point_type needs at least one neighbor".into()));
    }
    let Some(t) = (seg.b - seg.a).normalized() else {
        return Ok(PointType::Type1);
    };
    let ang = 1e-6;
    let cosines: Vec<f64> = incident_longest
        .iter()
        .filter_map(|n| (*n - p).normalized())
        .map(|d| d.dot(t))
        .collect();
    let at_a = dist(p, seg.a) <= eps;
    let at_b = dist(p, seg.b) <= eps;
    if at_a || at_b {
        // Outward direction is -t at a and +t at b.
        let sign = if at_a { -1.0 } else { 1.0 };
        return Ok(if cosines.iter().any(|c| sign * c >= -ang) { PointType::Type1 } else { PointType::NotLocallyOptimal });
    }
    if cosines.iter().any(|c| c.abs() <= ang) {
        return Ok(PointType::Type2);
    }
    let pos = cosines.iter().any(|c| *c > 0.0);
    let neg = cosines.iter().any(|c| *c < 0.0);
    Ok(if pos && neg { PointType::Type3 } else { PointType::NotLocallyOptimal })
}

/// All support sequences over `elements`, canonicalized so the first element's position is
/// smaller than the last one's. Ordered by interior length, then lexicographically by position.
pub fn enumerate_sequences(elements: &[Element]) -> Vec<SupportSequence> {
    let n = elements.len();
    let segs: Vec<usize> = (0..n).filter(|&i| elements[i].is_seg()).collect();
    let mut out = Vec::new();
    for len in 0..=segs.len() {
        let mut keys: Vec<Vec<usize>> = Vec::new();
        let mut interior: Vec<usize> = Vec::with_capacity(len);
        let mut used = vec![false; n];
        arrangements(&segs, len, &mut interior, &mut used, &mut |inner, used| {
            for first in 0..n {
                if used[first] {
                    continue;
                }
                for last in first + 1..n {
                    if used[last] {
                        continue;
                    }
                    let mut k = Vec::with_capacity(len + 2);
                    k.push(first);
                    k.extend_from_slice(inner);
                    k.push(last);
                    keys.push(k);
                }
            }
        });
        keys.sort();
        out.extend(keys.into_iter().map(|k| SupportSequence { elements: k.iter().map(|&i| elements[i]).collect() }));
    }
    out
}

fn arrangements(
    segs: &[usize],
    len: usize,
    cur: &mut Vec<usize>,
    used: &mut Vec<bool>,
    f: &mut impl FnMut(&[usize], &[bool]),
) {
    if cur.len() == len {
        f(cur, used);
        return;
    }
    for &s in segs {
        if !used[s] {
            used[s] = true;
            cur.push(s);
            arrangements(segs, len, cur, used, f);
            cur.pop();
            used[s] = false;
        }
    }
}
