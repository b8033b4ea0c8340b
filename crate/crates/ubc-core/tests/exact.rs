use ubc_core::exact::*;
use ubc_core::geometry::{dist, Point2, Segment};
use ubc_core::{Instance, Region};

fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
    Segment::new(p(ax, ay), p(bx, by))
}

fn seq(v: Vec<Element>) -> SupportSequence {
    SupportSequence::new(v).unwrap()
}

const EPS: f64 = 1e-9;
const DELTA: f64 = 1e-10;

#[test]
fn propagate_single_point() {
    let s = ReachState::initial(&Element::fixed(0, p(0.0, 0.0)), 2.0);
    let r = propagate_reach(&s, &Element::seg(1, seg(2.0, -1.0, 2.0, 1.0)), 2.0, EPS).unwrap();
    assert!(r.capsule.base.is_degenerate());
    assert!(dist(r.capsule.base.a, p(2.0, 0.0)) < 1e-9);
    assert!(matches!(r.s_case, SCase::B { p: q } if dist(q, p(2.0, 0.0)) < 1e-9));
}

#[test]
fn propagate_half_circle() {
    let s = ReachState::initial(&Element::fixed(0, p(0.0, 0.0)), 2.0);
    let r = propagate_reach(&s, &Element::seg(1, seg(0.0, 1.0, 2.0, 1.0)), 2.0, EPS).unwrap();
    let b = r.capsule.base;
    let r3 = 3f64.sqrt();
    assert!(dist(b.a, p(0.0, 1.0)) < 1e-9 && dist(b.b, p(r3, 1.0)) < 1e-9);
    match r.s_case {
        SCase::C { extremity, direction } => {
            assert!(dist(extremity, p(r3, 1.0)) < 1e-9);
            assert!(dist(direction, p(1.0, 0.0)) < 1e-9);
        }
        c => panic!("{c:?}"),
    }
}

#[test]
fn propagate_out_of_reach() {
    let s = ReachState::initial(&Element::fixed(0, p(0.0, 0.0)), 1.0);
    assert!(propagate_reach(&s, &Element::seg(1, seg(2.0, -1.0, 2.0, 1.0)), 1.0, EPS).is_none());
}

#[test]
fn min_lambda_examples() {
    let a = seq(vec![Element::fixed(0, p(0.0, 0.0)), Element::fixed(1, p(3.0, 0.0))]);
    assert!((min_lambda(&a, DELTA, EPS).unwrap().lambda - 3.0).abs() < 1e-9);
    let b = seq(vec![Element::fixed(0, p(0.0, 0.0)), Element::seg(1, seg(2.0, -1.0, 2.0, 1.0)), Element::fixed(2, p(4.0, 0.0))]);
    assert!((min_lambda(&b, DELTA, EPS).unwrap().lambda - 2.0).abs() < 1e-9);
    let c = seq(vec![Element::fixed(0, p(0.0, 0.0)), Element::seg(1, seg(0.0, 1.0, 2.0, 1.0)), Element::fixed(2, p(0.0, 3.0))]);
    let r = min_lambda(&c, DELTA, EPS).unwrap();
    assert!((r.lambda - 2.0).abs() < 1e-8, "{}", r.lambda);
    assert!(r.is_monotone());
}

#[test]
fn critical_path_examples() {
    let b = seq(vec![Element::fixed(0, p(0.0, 0.0)), Element::seg(1, seg(2.0, -1.0, 2.0, 1.0)), Element::fixed(2, p(4.0, 0.0))]);
    let cp = critical_path(&b, DELTA, EPS).unwrap();
    assert_eq!(cp.outcome, Outcome::Beta);
    for (q, r) in cp.points.iter().zip([p(0.0, 0.0), p(2.0, 0.0), p(4.0, 0.0)]) {
        assert!(dist(*q, r) < 1e-8);
    }
    let c = seq(vec![Element::fixed(0, p(0.0, 0.0)), Element::seg(1, seg(0.0, 1.0, 2.0, 1.0)), Element::fixed(2, p(0.0, 3.0))]);
    assert_eq!(critical_path(&c, DELTA, EPS).unwrap().outcome, Outcome::GammaFail);
    let d = seq(vec![Element::fixed(0, p(0.0, 0.0)), Element::fixed(1, p(5.0, 0.0))]);
    let cp = critical_path(&d, DELTA, EPS).unwrap();
    assert_eq!(cp.outcome, Outcome::Beta);
    assert!((cp.lambda - 5.0).abs() < 1e-9);
}

#[test]
fn alpha_fail_when_prefix_dominates() {
    // The first hop needs 5; the last point sits well inside the reach by then.
    let s = seq(vec![Element::fixed(0, p(0.0, 0.0)), Element::seg(1, seg(5.0, -1.0, 5.0, 1.0)), Element::fixed(2, p(6.0, 0.0))]);
    assert_eq!(critical_path(&s, DELTA, EPS).unwrap().outcome, Outcome::AlphaFail);
}

#[test]
fn delta_fail_on_parallel_contact() {
    let s = seq(vec![Element::seg(0, seg(0.0, 0.0, 4.0, 0.0)), Element::seg(1, seg(1.0, 2.0, 3.0, 2.0))]);
    assert_eq!(critical_path(&s, DELTA, EPS).unwrap().outcome, Outcome::DeltaFail);
}

#[test]
fn beta_edges_equal_and_types_valid() {
    let s = seq(vec![
        Element::fixed(0, p(0.0, 0.0)),
        Element::seg(1, seg(1.0, -5.0, 3.0, 5.0)),
        Element::seg(2, seg(5.0, 3.0, 7.0, 4.0)),
        Element::fixed(3, p(9.0, 1.0)),
    ]);
    let cp = critical_path(&s, DELTA, EPS).unwrap();
    assert_eq!(cp.outcome, Outcome::Beta);
    for w in cp.points.windows(2) {
        assert!((dist(w[0], w[1]) - cp.lambda).abs() < 1e-4, "{:?}", cp);
    }
    for j in 1..cp.points.len() - 1 {
        let sg = s.elements[j].segment();
        let t = classify_point_type(cp.points[j], &sg, &[cp.points[j - 1], cp.points[j + 1]], 1e-7).unwrap();
        assert_ne!(t, PointType::NotLocallyOptimal);
    }
    // Deriving from the other end gives the same witnesses.
    let rev = critical_path(&s.reversed(), DELTA, EPS).unwrap();
    assert_eq!(rev.outcome, Outcome::Beta);
    for (a, b) in cp.points.iter().zip(rev.points.iter().rev()) {
        assert!(dist(*a, *b) < 1e-3, "{a:?} {b:?}");
    }
}

#[test]
fn s_samples_lie_on_boundary() {
    let s = ReachState::initial(&Element::fixed(0, p(0.0, 0.0)), 2.0);
    let r = propagate_reach(&s, &Element::seg(1, seg(0.0, 1.0, 2.0, 1.0)), 2.0, EPS).unwrap();
    let pts = r.s_case.sample(&r.capsule, 64);
    assert_eq!(pts.len(), 64);
    for q in pts {
        assert!(r.capsule.boundary_offset(q).abs() < 1e-9);
    }
}

#[test]
fn point_types() {
    let sg = seg(0.0, 0.0, 1.0, 0.0);
    assert_eq!(classify_point_type(p(0.0, 0.0), &sg, &[p(-2.0, 0.0)], EPS).unwrap(), PointType::Type1);
    assert_eq!(classify_point_type(p(0.5, 0.0), &sg, &[p(0.5, 3.0)], EPS).unwrap(), PointType::Type2);
    assert_eq!(classify_point_type(p(0.5, 0.0), &sg, &[p(-1.0, 1.0), p(2.0, 1.0)], EPS).unwrap(), PointType::Type3);
    assert_eq!(classify_point_type(p(0.5, 0.0), &sg, &[p(2.0, 1.0)], EPS).unwrap(), PointType::NotLocallyOptimal);
    assert!(classify_point_type(p(0.5, 0.0), &sg, &[], EPS).is_err());
}

#[test]
fn sequence_counts() {
    let f = |i| Element::fixed(i, p(i as f64, 0.0));
    let s = |i| Element::seg(i, seg(i as f64, 1.0, i as f64, 2.0));
    assert_eq!(enumerate_sequences(&[f(0), f(1)]).len(), 1);
    assert_eq!(enumerate_sequences(&[f(0), f(1), s(2)]).len(), 4);
    assert_eq!(enumerate_sequences(&[s(0), s(1)]).len(), 1);
    let all = enumerate_sequences(&[f(0), f(1), s(2)]);
    assert_eq!(all.last().unwrap().indices(), vec![0, 2, 1]);
}

fn inst(regions: Vec<Region>) -> Instance {
    Instance::new(None, regions).unwrap()
}

#[test]
fn solve_examples() {
    let r = solve_exact(
        &inst(vec![Region::FixedPoint(p(0.0, 0.0)), Region::FixedPoint(p(4.0, 0.0)), Region::Segment(seg(2.0, -1.0, 2.0, 1.0))]),
        &ExactOptions::default(),
    )
    .unwrap();
    assert!((r.alpha - 1.0).abs() < 1e-9);

    let r = solve_exact(&inst(vec![Region::FixedPoint(p(0.0, 0.0)), Region::Segment(seg(3.0, -1.0, 3.0, 1.0))]), &ExactOptions::default()).unwrap();
    assert!(dist(r.selection.points[1], p(3.0, 0.0)) < 1e-6);
    assert!((r.solution.bottleneck - 3.0).abs() < 1e-9);

    let r = solve_exact(
        &inst(vec![Region::FixedPoint(p(0.0, 0.0)), Region::FixedPoint(p(10.0, 0.0)), Region::Segment(seg(5.0, -4.0, 5.0, 4.0))]),
        &ExactOptions::default(),
    )
    .unwrap();
    assert!(dist(r.selection.points[2], p(5.0, 0.0)) < 1e-6);
    assert!((r.solution.bottleneck - 5.0).abs() < 1e-9);
}

#[test]
fn solve_beats_single_greedy_path() {
    let r = solve_exact(
        &inst(vec![Region::FixedPoint(p(0.0, 0.0)), Region::Segment(seg(1.0, 0.0, 1.0, 5.0)), Region::FixedPoint(p(10.0, 10.0))]),
        &ExactOptions::default(),
    )
    .unwrap();
    // Optimum puts the segment point at (1, 5): bottleneck sqrt(106).
    assert!((r.solution.bottleneck - 106f64.sqrt()).abs() < 1e-6, "{}", r.solution.bottleneck);
}

#[test]
fn solve_pairs_and_rejects_disks() {
    let r = solve_exact(
        &inst(vec![Region::FixedPoint(p(0.0, 0.0)), Region::PointPair(p(9.0, 0.0), p(1.0, 0.0)), Region::FixedPoint(p(2.0, 0.0))]),
        &ExactOptions::default(),
    )
    .unwrap();
    assert!((r.solution.bottleneck - 1.0).abs() < 1e-12);
    assert_eq!(r.pair_branches, 2);
    assert!(solve_exact(&inst(vec![Region::UnitDisk(p(0.0, 0.0)), Region::FixedPoint(p(3.0, 0.0))]), &ExactOptions::default()).is_err());
}
