use proptest::prelude::*;
use ubc_core::geometry::{capsule_segment_intersection, point_segment_distance, segment_segment_closest, Capsule, SegmentOverlap};
use ubc_core::{dist, Point2, Segment};

const EPS: f64 = 1e-9;

fn point() -> impl Strategy<Value = Point2> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

fn segment() -> impl Strategy<Value = Segment> {
    (point(), point(), 0..6u8).prop_map(|(a, b, k)| match k {
        0 => Segment::point(a),
        1 => Segment::new(a, Point2::new(b.x, a.y)),
        _ => Segment::new(a, b),
    })
}

fn on_segment(p: Point2, s: &Segment) -> bool {
    point_segment_distance(p, s).0 <= 1e-7
}

proptest! {
    #[test]
    fn closest_points_are_on_their_segments(s in segment(), t in segment()) {
        let (d, p, q) = segment_segment_closest(&s, &t);
        prop_assert!(on_segment(p, &s) && on_segment(q, &t));
        prop_assert!((dist(p, q) - d).abs() <= 1e-9);
        let (e, _, _) = segment_segment_closest(&t, &s);
        prop_assert!((d - e).abs() <= 1e-9);
        for i in 0..=8 {
            for j in 0..=8 {
                prop_assert!(d <= dist(s.at(i as f64 / 8.0), t.at(j as f64 / 8.0)) + 1e-9);
            }
        }
    }

    #[test]
    fn capsule_clip_keeps_exactly_the_inside(base in segment(), s in segment(), r in 0.1..6.0f64) {
        let c = Capsule::new(base, r);
        let overlap = capsule_segment_intersection(&c, &s, EPS);
        if let Some(o) = overlap.as_segment() {
            prop_assert!(on_segment(o.a, &s) && on_segment(o.b, &s));
            prop_assert!(c.contains(o.a, 1e-7) && c.contains(o.b, 1e-7));
        }
        for i in 0..=32 {
            let x = s.at(i as f64 / 32.0);
            if c.boundary_offset(x) < -1e-6 {
                match overlap {
                    SegmentOverlap::Empty => prop_assert!(false, "{x:?} is inside but the overlap is empty"),
                    _ => prop_assert!(on_segment(x, &overlap.as_segment().unwrap())),
                }
            }
        }
    }
}
