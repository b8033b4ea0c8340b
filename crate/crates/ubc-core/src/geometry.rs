//! Planar primitives: points, segments, capsules and their intersections.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A point (or vector) in the plane. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Point2> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic comparison on `(x, y)` using `total_cmp`.
    pub fn lex_cmp(&self, o: &Point2) -> std::cmp::Ordering {
        self.x.total_cmp(&o.x).then(self.y.total_cmp(&o.y))
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(a: [f64; 2]) -> Self {
        Point2::new(a[0], a[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Euclidean distance.
pub fn dist(p: Point2, q: Point2) -> f64 {
    (p - q).norm()
}

/// Closed segment `[a, b]`. A degenerate segment (`a == b`) is a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub const fn new(a: Point2, b: Point2) -> Self {
        Segment { a, b }
    }

    pub fn point(p: Point2) -> Self {
        Segment { a: p, b: p }
    }

    pub fn len(&self) -> f64 {
        dist(self.a, self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn at(&self, t: f64) -> Point2 {
        self.a.lerp(self.b, t)
    }

    pub fn midpoint(&self) -> Point2 {
        self.at(0.5)
    }

    /// Parameter of the orthogonal projection of `p`, clamped to `[0, 1]`.
    pub fn project_param(&self, p: Point2) -> f64 {
        let d = self.b - self.a;
        let l2 = d.norm2();
        if l2 == 0.0 {
            return 0.0;
        }
        ((p - self.a).dot(d) / l2).clamp(0.0, 1.0)
    }
}

/// Distance from `p` to segment `s` and the nearest point of `s`.
pub fn point_segment_distance(p: Point2, s: &Segment) -> (f64, Point2) {
    let q = s.at(s.project_param(p));
    (dist(p, q), q)
}

/// Closest pair between two segments: `(distance, point on s, point on t)`.
///
/// When the closest pair is not unique (parallel overlap) the pair returned is the one
/// closest to the start of `s`.
pub fn segment_segment_closest(s: &Segment, t: &Segment) -> (f64, Point2, Point2) {
    if segments_intersect(s, t) {
        if let Some(p) = line_intersection(s, t) {
            return (0.0, p, p);
        }
    }
    let mut best = {
        let (d, q) = point_segment_distance(s.a, t);
        (d, s.a, q)
    };
    let mut consider = |d: f64, p: Point2, q: Point2| {
        if d < best.0 {
            best = (d, p, q);
        }
    };
    let (d, q) = point_segment_distance(s.b, t);
    consider(d, s.b, q);
    let (d, q) = point_segment_distance(t.a, s);
    consider(d, q, t.a);
    let (d, q) = point_segment_distance(t.b, s);
    consider(d, q, t.b);
    best
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

fn segments_intersect(s: &Segment, t: &Segment) -> bool {
    let d1 = orient(t.a, t.b, s.a);
    let d2 = orient(t.a, t.b, s.b);
    let d3 = orient(s.a, s.b, t.a);
    let d4 = orient(s.a, s.b, t.b);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

fn line_intersection(s: &Segment, t: &Segment) -> Option<Point2> {
    let r = s.b - s.a;
    let q = t.b - t.a;
    let den = r.cross(q);
    if den == 0.0 {
        return None;
    }
    let u = (t.a - s.a).cross(q) / den;
    Some(s.at(u.clamp(0.0, 1.0)))
}

/// Minkowski sum of a (possibly degenerate) segment with a closed disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Capsule {
    pub base: Segment,
    pub radius: f64,
}

impl Capsule {
    pub const fn new(base: Segment, radius: f64) -> Self {
        Capsule { base, radius }
    }

    pub fn contains(&self, p: Point2, eps: f64) -> bool {
        point_segment_distance(p, &self.base).0 <= self.radius + eps
    }

    /// Signed distance from `p` to the capsule boundary (negative inside).
    pub fn boundary_offset(&self, p: Point2) -> f64 {
        point_segment_distance(p, &self.base).0 - self.radius
    }
}

/// Result of clipping a segment against a capsule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SegmentOverlap {
    Empty,
    SinglePoint { p: Point2 },
    Subsegment { s: Segment },
}

impl SegmentOverlap {
    pub fn is_empty(&self) -> bool {
        matches!(self, SegmentOverlap::Empty)
    }

    /// The overlap as a (possibly degenerate) segment.
    pub fn as_segment(&self) -> Option<Segment> {
        match *self {
            SegmentOverlap::Empty => None,
            SegmentOverlap::SinglePoint { p } => Some(Segment::point(p)),
            SegmentOverlap::Subsegment { s } => Some(s),
        }
    }
}

/// Parameter interval of the line `s.a + t (s.b - s.a)` inside the closed disk `(c, r)`.
fn line_disk_interval(s: &Segment, c: Point2, r: f64) -> Option<(f64, f64)> {
    let d = s.b - s.a;
    let f = s.a - c;
    let qa = d.norm2();
    let qb = 2.0 * f.dot(d);
    let qc = f.norm2() - r * r;
    if qa == 0.0 {
        return (qc <= 0.0).then_some((f64::NEG_INFINITY, f64::INFINITY));
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // Numerically stable roots.
    let sgn = if qb >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (qb + sgn * sq);
    let (mut t0, mut t1) = if q != 0.0 { (q / qa, qc / q) } else { (-qb / (2.0 * qa), -qb / (2.0 * qa)) };
    if t0 > t1 {
        std::mem::swap(&mut t0, &mut t1);
    }
    Some((t0, t1))
}

/// Parameter interval of the line inside the rectangular part of a capsule.
fn line_slab_interval(s: &Segment, base: &Segment, r: f64) -> Option<(f64, f64)> {
    let e = base.b - base.a;
    let len = e.norm();
    if len == 0.0 {
        return None;
    }
    let u = e * (1.0 / len);
    let n = u.perp();
    let d = s.b - s.a;
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    // Constraints of the form lo_v <= c0 + c1 t <= hi_v.
    let cons = [
        ((s.a - base.a).dot(u), d.dot(u), 0.0, len),
        ((s.a - base.a).dot(n), d.dot(n), -r, r),
    ];
    for (c0, c1, lv, hv) in cons {
        if c1 == 0.0 {
            if c0 < lv || c0 > hv {
                return None;
            }
        } else {
            let (mut a, mut b) = ((lv - c0) / c1, (hv - c0) / c1);
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            lo = lo.max(a);
            hi = hi.min(b);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Intersection of segment `s` with capsule `c`.
///
/// The result is convex, so it is empty, a single point or a subsegment of `s`.
/// Overlaps shorter than `eps` collapse to their midpoint; a segment that misses the capsule
/// by at most `eps` touches it at its nearest point.
pub fn capsule_segment_intersection(c: &Capsule, s: &Segment, eps: f64) -> SegmentOverlap {
    let r = c.radius;
    if r < 0.0 {
        return SegmentOverlap::Empty;
    }
    let touch = || {
        let (d, p, _) = segment_segment_closest(s, &c.base);
        if d <= r + eps {
            SegmentOverlap::SinglePoint { p }
        } else {
            SegmentOverlap::Empty
        }
    };
    if s.is_degenerate() {
        return touch();
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let parts = [line_disk_interval(s, c.base.a, r), line_disk_interval(s, c.base.b, r), line_slab_interval(s, &c.base, r)];
    for (a, b) in parts.into_iter().flatten() {
        lo = lo.min(a);
        hi = hi.max(b);
    }
    let lo = lo.max(0.0);
    let hi = hi.min(1.0);
    if lo > hi {
        return touch();
    }
    let (p, q) = (s.at(lo), s.at(hi));
    if dist(p, q) <= eps {
        SegmentOverlap::SinglePoint { p: p.lerp(q, 0.5) }
    } else {
        SegmentOverlap::Subsegment { s: Segment::new(p, q) }
    }
}

/// Points where the circle `(center, r)` meets segment `s`, ordered along `s`,
/// de-duplicated within `eps`.
pub fn circle_segment_intersection(center: Point2, r: f64, s: &Segment, eps: f64) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::new();
    if s.is_degenerate() {
        if (dist(s.a, center) - r).abs() <= eps {
            out.push(s.a);
        }
        return out;
    }
    let len = s.len();
    let tol = eps / len;
    // Tangency within eps counts as a touching point.
    let (d, q) = point_segment_distance(center, s);
    let Some((t0, t1)) = line_disk_interval(s, center, r) else {
        if (d - r).abs() <= eps {
            out.push(q);
        }
        return out;
    };
    for t in [t0, t1] {
        if t >= -tol && t <= 1.0 + tol {
            let p = s.at(t.clamp(0.0, 1.0));
            if out.last().is_none_or(|l| dist(*l, p) > eps) {
                out.push(p);
            }
        }
    }
    out
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub min: Point2,
    pub max: Point2,
}

impl BBox {
    pub fn empty() -> Self {
        BBox { min: Point2::new(f64::INFINITY, f64::INFINITY), max: Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY) }
    }

    pub fn include(&mut self, p: Point2) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(&self, o: &BBox) -> BBox {
        let mut b = *self;
        b.include(o.min);
        b.include(o.max);
        b
    }

    pub fn is_empty(&self) -> bool {
        self.min.x > self.max.x
    }

    pub fn diameter(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            dist(self.min, self.max)
        }
    }

    pub fn width(&self) -> f64 {
        (self.max.x - self.min.x).max(0.0)
    }

    pub fn height(&self) -> f64 {
        (self.max.y - self.min.y).max(0.0)
    }
}

/// Default geometric tolerance for a scene of the given bounding-box diameter.
pub fn default_eps(diameter: f64) -> f64 {
    1e-9 * diameter.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn point_segment_cases() {
        let s = Segment::new(p(0.0, 0.0), p(2.0, 0.0));
        assert_eq!(point_segment_distance(p(1.0, 1.0), &s), (1.0, p(1.0, 0.0)));
        assert_eq!(point_segment_distance(p(-3.0, 4.0), &s), (5.0, p(0.0, 0.0)));
    }

    #[test]
    fn capsule_clip_through_middle() {
        let c = Capsule::new(Segment::point(p(0.0, 0.0)), 2.0);
        let s = Segment::new(p(2.0, -1.0), p(2.0, 1.0));
        assert_eq!(capsule_segment_intersection(&c, &s, 1e-12), SegmentOverlap::SinglePoint { p: p(2.0, 0.0) });
        let s = Segment::new(p(-5.0, 0.0), p(5.0, 0.0));
        match capsule_segment_intersection(&c, &s, 0.0) {
            SegmentOverlap::Subsegment { s } => {
                assert!((s.a.x + 2.0).abs() < 1e-12 && (s.b.x - 2.0).abs() < 1e-12);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn capsule_clip_misses() {
        let c = Capsule::new(Segment::new(p(0.0, 0.0), p(2.0, 0.0)), 1.0);
        let s = Segment::new(p(1.0, -3.0), p(1.0, 3.0));
        assert_eq!(
            capsule_segment_intersection(&c, &s, 1e-9),
            SegmentOverlap::Subsegment { s: Segment::new(p(1.0, -1.0), p(1.0, 1.0)) }
        );
        let c = Capsule::new(Segment::new(p(0.0, 0.0), p(1.0, 0.0)), 0.5);
        let s = Segment::new(p(-1.0, 2.0), p(3.0, 2.0));
        assert!(capsule_segment_intersection(&c, &s, 1e-9).is_empty());
    }

    #[test]
    fn circle_segment_tangent_dedups() {
        let s = Segment::new(p(-1.0, 1.0), p(1.0, 1.0));
        let hits = circle_segment_intersection(p(0.0, 0.0), 1.0, &s, 1e-9);
        assert_eq!(hits.len(), 1);
        assert!(dist(hits[0], p(0.0, 1.0)) < 1e-6);
    }

    #[test]
    fn closest_between_crossing_segments() {
        let s = Segment::new(p(-1.0, 0.0), p(1.0, 0.0));
        let t = Segment::new(p(0.0, -1.0), p(0.0, 1.0));
        assert_eq!(segment_segment_closest(&s, &t).0, 0.0);
        let t = Segment::new(p(3.0, 1.0), p(3.0, 5.0));
        let (d, a, b) = segment_segment_closest(&s, &t);
        assert!((d - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!((a, b), (p(1.0, 0.0), p(3.0, 1.0)));
    }
}
