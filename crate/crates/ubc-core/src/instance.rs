//! Uncertainty regions, instances and selections.

use crate::error::{Error, Result};
use crate::geometry::{dist, point_segment_distance, BBox, Point2, Segment};
use serde::{Deserialize, Serialize};

/// One uncertainty region.
///
/// On disk a disk of radius 1 is written as `{"type":"disk", ...}` and read back as
/// [`Region::UnitDisk`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "RegionRepr", try_from = "RegionRepr")]
pub enum Region {
    FixedPoint(Point2),
    PointPair(Point2, Point2),
    Segment(Segment),
    UnitDisk(Point2),
    Disk { center: Point2, radius: f64 },
    Square { corner: Point2, side: f64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RegionRepr {
    Point { p: Point2 },
    Pair { a: Point2, b: Point2 },
    Segment { a: Point2, b: Point2 },
    Disk { center: Point2, #[serde(default = "one")] radius: f64 },
    Square { corner: Point2, side: f64 },
}

fn one() -> f64 {
    1.0
}

impl From<Region> for RegionRepr {
    fn from(r: Region) -> Self {
        match r {
            Region::FixedPoint(p) => RegionRepr::Point { p },
            Region::PointPair(a, b) => RegionRepr::Pair { a, b },
            Region::Segment(s) => RegionRepr::Segment { a: s.a, b: s.b },
            Region::UnitDisk(center) => RegionRepr::Disk { center, radius: 1.0 },
            Region::Disk { center, radius } => RegionRepr::Disk { center, radius },
            Region::Square { corner, side } => RegionRepr::Square { corner, side },
        }
    }
}

impl TryFrom<RegionRepr> for Region {
    type Error = Error;
    fn try_from(r: RegionRepr) -> Result<Self> {
        let region = match r {
            RegionRepr::Point { p } => Region::FixedPoint(p),
            RegionRepr::Pair { a, b } => Region::PointPair(a, b),
            RegionRepr::Segment { a, b } => Region::Segment(Segment::new(a, b)),
            RegionRepr::Disk { center, radius } if radius == 1.0 => Region::UnitDisk(center),
            RegionRepr::Disk { center, radius } => Region::Disk { center, radius },
            RegionRepr::Square { corner, side } => Region::Square { corner, side },
        };
        region.check()?;
        Ok(region)
    }
}

impl Region {
    pub fn kind(&self) -> &'static str {
        match self {
            Region::FixedPoint(_) => "point",
            Region::PointPair(..) => "pair",
            Region::Segment(_) => "segment",
            Region::UnitDisk(_) | Region::Disk { .. } => "disk",
            Region::Square { .. } => "square",
        }
    }

    /// Validates the region's own invariants.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidInstance(format!("{} region: {msg}", self.kind())));
        let finite = match *self {
            Region::FixedPoint(p) | Region::UnitDisk(p) => p.is_finite(),
            Region::PointPair(a, b) => a.is_finite() && b.is_finite(),
            Region::Segment(s) => s.a.is_finite() && s.b.is_finite(),
            Region::Disk { center, radius } => center.is_finite() && radius.is_finite(),
            Region::Square { corner, side } => corner.is_finite() && side.is_finite(),
        };
        if !finite {
            return bad("non-finite coordinate");
        }
        match *self {
            Region::PointPair(a, b) if a == b => bad("coincident pair points"),
            Region::Segment(s) if s.is_degenerate() => bad("zero-length segment"),
            Region::Disk { radius, .. } if radius <= 0.0 => bad("radius must be positive"),
            Region::Square { side, .. } if side <= 0.0 => bad("side must be positive"),
            _ => Ok(()),
        }
    }

    /// Representative point used by the center heuristics; always inside the region.
    pub fn center(&self) -> Point2 {
        match *self {
            Region::FixedPoint(p) | Region::UnitDisk(p) => p,
            Region::PointPair(a, _) => a,
            Region::Segment(s) => s.midpoint(),
            Region::Disk { center, .. } => center,
            Region::Square { corner, side } => corner + Point2::new(side / 2.0, side / 2.0),
        }
    }

    /// Largest distance from [`Region::center`] to a point of the region.
    pub fn radius(&self) -> f64 {
        match *self {
            Region::FixedPoint(_) => 0.0,
            Region::PointPair(a, b) => dist(a, b),
            Region::Segment(s) => s.len() / 2.0,
            Region::UnitDisk(_) => 1.0,
            Region::Disk { radius, .. } => radius,
            Region::Square { side, .. } => side * std::f64::consts::FRAC_1_SQRT_2,
        }
    }

    pub fn is_unit_disk(&self) -> bool {
        matches!(self, Region::UnitDisk(_))
    }

    pub fn bbox(&self) -> BBox {
        let mut b = BBox::empty();
        match *self {
            Region::FixedPoint(p) => b.include(p),
            Region::PointPair(p, q) => {
                b.include(p);
                b.include(q);
            }
            Region::Segment(s) => {
                b.include(s.a);
                b.include(s.b);
            }
            Region::UnitDisk(_) | Region::Disk { .. } => {
                let (c, r) = (self.center(), self.radius());
                b.include(c - Point2::new(r, r));
                b.include(c + Point2::new(r, r));
            }
            Region::Square { corner, side } => {
                b.include(corner);
                b.include(corner + Point2::new(side, side));
            }
        }
        b
    }

    /// Distance from `p` to the region (zero inside).
    pub fn distance_to(&self, p: Point2) -> f64 {
        dist(p, containment_project(self, p))
    }

    pub fn contains(&self, p: Point2, eps: f64) -> bool {
        self.distance_to(p) <= eps
    }

    /// Smallest distance between a point of `self` and a point of `other`.
    pub fn min_distance(&self, other: &Region) -> f64 {
        use crate::geometry::segment_segment_closest;
        match (self.as_segments(), other.as_segments()) {
            (Some(a), Some(b)) => {
                let mut best = f64::INFINITY;
                for s in &a {
                    for t in &b {
                        best = best.min(segment_segment_closest(s, t).0);
                    }
                }
                best
            }
            _ => {
                // Disk or square against anything: reduce to point/segment queries.
                match (self, other) {
                    (Region::UnitDisk(_) | Region::Disk { .. }, _) => {
                        (other.distance_to_center_set(self.center()) - self.radius()).max(0.0)
                    }
                    (_, Region::UnitDisk(_) | Region::Disk { .. }) => other.min_distance(self),
                    _ => square_min_distance(self, other),
                }
            }
        }
    }

    /// Extreme points of the convex hull plus a padding radius (disks are their center padded by the radius).
    fn hull(&self) -> (Vec<Point2>, f64) {
        match *self {
            Region::FixedPoint(p) => (vec![p], 0.0),
            Region::PointPair(a, b) => (vec![a, b], 0.0),
            Region::Segment(s) => (vec![s.a, s.b], 0.0),
            Region::UnitDisk(c) => (vec![c], 1.0),
            Region::Disk { center, radius } => (vec![center], radius),
            Region::Square { corner, side } => (
                vec![corner, corner + Point2::new(side, 0.0), corner + Point2::new(0.0, side), corner + Point2::new(side, side)],
                0.0,
            ),
        }
    }

    /// Upper bound on the distance from `p` to any point of the region (exact except for rounding).
    pub fn max_distance_to(&self, p: Point2) -> f64 {
        let (h, pad) = self.hull();
        h.iter().map(|q| dist(p, *q)).fold(0.0, f64::max) + pad
    }

    /// Upper bound on the distance between a point of `self` and a point of `other`.
    pub fn max_distance(&self, other: &Region) -> f64 {
        let (h, pad) = self.hull();
        h.iter().map(|q| other.max_distance_to(*q)).fold(0.0, f64::max) + pad
    }

    /// Distance from `p` to the region, used for disk/segment reductions.
    fn distance_to_center_set(&self, p: Point2) -> f64 {
        match self {
            Region::UnitDisk(_) | Region::Disk { .. } => (dist(p, self.center()) - self.radius()).max(0.0),
            _ => self.distance_to(p),
        }
    }

    /// The region as a union of (possibly degenerate) segments, when it is one-dimensional.
    pub fn as_segments(&self) -> Option<Vec<Segment>> {
        match *self {
            Region::FixedPoint(p) => Some(vec![Segment::point(p)]),
            Region::PointPair(a, b) => Some(vec![Segment::point(a), Segment::point(b)]),
            Region::Segment(s) => Some(vec![s]),
            _ => None,
        }
    }
}

fn square_edges(corner: Point2, side: f64) -> [Segment; 4] {
    let c = [corner, corner + Point2::new(side, 0.0), corner + Point2::new(side, side), corner + Point2::new(0.0, side)];
    [Segment::new(c[0], c[1]), Segment::new(c[1], c[2]), Segment::new(c[2], c[3]), Segment::new(c[3], c[0])]
}

/// Minimum distance when at least one side is a square (and neither is a disk).
fn square_min_distance(a: &Region, b: &Region) -> f64 {
    use crate::geometry::segment_segment_closest;
    let boundary = |r: &Region| -> Vec<Segment> {
        match *r {
            Region::Square { corner, side } => square_edges(corner, side).to_vec(),
            _ => r.as_segments().unwrap_or_default(),
        }
    };
    // Containment of any vertex means overlap.
    let probes = |r: &Region| -> Vec<Point2> { boundary(r).iter().map(|s| s.a).collect() };
    if probes(a).iter().any(|p| b.contains(*p, 0.0)) || probes(b).iter().any(|p| a.contains(*p, 0.0)) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for s in boundary(a) {
        for t in boundary(b) {
            best = best.min(segment_segment_closest(&s, &t).0);
        }
    }
    best
}

/// Nearest point of `r` to `p`. For a pair, ties go to the first point.
pub fn containment_project(r: &Region, p: Point2) -> Point2 {
    match *r {
        Region::FixedPoint(q) => q,
        Region::PointPair(a, b) => {
            if dist(p, b) < dist(p, a) {
                b
            } else {
                a
            }
        }
        Region::Segment(s) => point_segment_distance(p, &s).1,
        Region::UnitDisk(_) | Region::Disk { .. } => {
            let (c, rad) = (r.center(), r.radius());
            let d = dist(p, c);
            if d <= rad {
                p
            } else {
                c + (p - c) * (rad / d)
            }
        }
        Region::Square { corner, side } => {
            Point2::new(p.x.clamp(corner.x, corner.x + side), p.y.clamp(corner.y, corner.y + side))
        }
    }
}

/// Finite candidate set for a region at lattice resolution `g` (`g >= 1`).
///
/// point: 1, pair: 2, segment: `g + 1` evenly spaced, disk: the `(g+1)^2` lattice over its
/// bounding square restricted to the disk, plus the center when `g` is odd, square: `(g+1)^2`.
pub fn discretize(r: &Region, g: usize) -> Vec<Point2> {
    let g = g.max(1);
    match *r {
        Region::FixedPoint(p) => vec![p],
        Region::PointPair(a, b) => vec![a, b],
        Region::Segment(s) => (0..=g).map(|i| s.at(i as f64 / g as f64)).collect(),
        Region::UnitDisk(_) | Region::Disk { .. } => {
            let (c, rad) = (r.center(), r.radius());
            let gi = g as i64;
            let mut out = Vec::new();
            if gi % 2 == 1 {
                out.push(c);
            }
            for i in 0..=gi {
                for j in 0..=gi {
                    let (a, b) = (2 * i - gi, 2 * j - gi);
                    if a * a + b * b <= gi * gi {
                        let k = rad / g as f64;
                        out.push(Point2::new(c.x + a as f64 * k, c.y + b as f64 * k));
                    }
                }
            }
            out
        }
        Region::Square { corner, side } => {
            let h = side / g as f64;
            let mut out = Vec::with_capacity((g + 1) * (g + 1));
            for i in 0..=g {
                for j in 0..=g {
                    out.push(Point2::new(corner.x + i as f64 * h, corner.y + j as f64 * h));
                }
            }
            out
        }
    }
}

/// A collection of at least two regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRepr")]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub regions: Vec<Region>,
}

#[derive(Deserialize)]
struct InstanceRepr {
    #[serde(default)]
    name: Option<String>,
    regions: Vec<Region>,
}

impl TryFrom<InstanceRepr> for Instance {
    type Error = Error;
    fn try_from(r: InstanceRepr) -> Result<Self> {
        Instance::new(r.name, r.regions)
    }
}

impl Instance {
    pub fn new(name: Option<String>, regions: Vec<Region>) -> Result<Self> {
        if regions.len() < 2 {
            return Err(Error::InvalidInstance(format!("an instance needs at least 2 regions, got {}", regions.len())));
        }
        for (i, r) in regions.iter().enumerate() {
            r.check().map_err(|e| Error::InvalidInstance(format!("region {i}: {e}")))?;
        }
        Ok(Instance { name, regions })
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn bbox(&self) -> BBox {
        self.regions.iter().fold(BBox::empty(), |b, r| b.union(&r.bbox()))
    }

    /// Default tolerance: `1e-9` times the bounding-box diameter.
    pub fn eps(&self) -> f64 {
        crate::geometry::default_eps(self.bbox().diameter())
    }

    pub fn all_unit_disks(&self) -> bool {
        self.regions.iter().all(Region::is_unit_disk)
    }

    pub fn centers(&self) -> Vec<Point2> {
        self.regions.iter().map(Region::center).collect()
    }
}

/// One chosen point per region, in region order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub points: Vec<Point2>,
}

impl Selection {
    pub fn new(points: Vec<Point2>) -> Self {
        Selection { points }
    }
}

/// A selected point that lies outside its region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub excess: f64,
}

/// Lists every point of `sel` farther than `eps` from its region.
pub fn validate_selection(inst: &Instance, sel: &Selection, eps: f64) -> Result<Vec<Violation>> {
    if sel.points.len() != inst.regions.len() {
        return Err(Error::InvalidSelection(format!(
            "selection has {} points but the instance has {} regions",
            sel.points.len(),
            inst.regions.len()
        )));
    }
    Ok(inst
        .regions
        .iter()
        .zip(&sel.points)
        .enumerate()
        .filter_map(|(index, (r, p))| {
            let d = r.distance_to(*p);
            (d > eps || !p.is_finite()).then_some(Violation { index, excess: d })
        })
        .collect())
}
