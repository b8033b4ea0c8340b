use ubc_core::geometry::{Point2, Segment};
use ubc_core::oracle::*;
use ubc_core::{connectivity::mbst, Instance, Region};

fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn inst(r: Vec<Region>) -> Instance {
    Instance::new(None, r).unwrap()
}

#[test]
fn bcu_examples() {
    let i = inst(vec![
        Region::FixedPoint(p(0.0, 0.0)),
        Region::FixedPoint(p(4.0, 0.0)),
        Region::Segment(Segment::new(p(2.0, -1.0), p(2.0, 1.0))),
    ]);
    let r = brute_force_bcu(&i, 40, DEFAULT_BUDGET).unwrap();
    assert!((r.alpha - 1.0).abs() <= 0.025);
    // A tighter gap than alpha = 1 requires (0,1) and (0,2), a witness for alpha = 0.5.
    let i = inst(vec![Region::PointPair(p(0.0, 0.0), p(0.0, 1.0)), Region::PointPair(p(0.0, 2.0), p(0.0, 3.0))]);
    match pair_decision(&i, 0.5, DecisionMode::Exhaustive).unwrap() {
        PairDecision::ConnectableYes { witness } => assert_eq!(witness.points, vec![p(0.0, 1.0), p(0.0, 2.0)]),
        d => panic!("{d:?}"),
    }

    let i = inst(vec![Region::UnitDisk(p(0.0, 0.0)), Region::UnitDisk(p(1.0, 0.0))]);
    assert!(brute_force_bcu(&i, 40, DEFAULT_BUDGET).unwrap().alpha < 1e-12);

    let i = inst(vec![Region::PointPair(p(0.0, 0.0), p(0.0, 1.0)), Region::PointPair(p(0.0, 2.0), p(0.0, 3.0))]);
    let r = brute_force_bcu(&i, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.alpha, 0.5);
    assert_eq!(r.selection.points, vec![p(0.0, 1.0), p(0.0, 2.0)]);
    assert!(r.exhaustive);
}

#[test]
fn wcu_examples() {
    let i = inst(vec![Region::UnitDisk(p(0.0, 0.0)), Region::UnitDisk(p(6.0, 0.0))]);
    let r = brute_force_wcu(&i, 60, DEFAULT_BUDGET).unwrap();
    assert!((r.alpha - 4.0).abs() < 1e-9);
    assert!(!r.exhaustive);

    let i = inst(vec![Region::PointPair(p(0.0, 0.0), p(0.0, 1.0)), Region::PointPair(p(0.0, 3.0), p(0.0, 4.0))]);
    let r = brute_force_wcu(&i, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.alpha, 2.0);
    assert_eq!(r.selection.points, vec![p(0.0, 0.0), p(0.0, 4.0)]);
}

#[test]
fn budget_is_reported() {
    let i = inst(vec![Region::UnitDisk(p(0.0, 0.0)), Region::UnitDisk(p(6.0, 0.0))]);
    match brute_force_bcu(&i, 200, 1000) {
        Err(ubc_core::Error::BudgetExceeded { required, .. }) => assert!(required > 1e8),
        r => panic!("{r:?}"),
    }
}

#[test]
fn pruned_scan_matches_plain_scan() {
    let i = inst(vec![
        Region::FixedPoint(p(0.0, 0.0)),
        Region::Segment(Segment::new(p(1.0, 3.0), p(4.0, -1.0))),
        Region::Segment(Segment::new(p(5.0, 5.0), p(7.0, 2.0))),
        Region::FixedPoint(p(8.0, 8.0)),
        Region::Square { corner: p(2.0, 6.0), side: 1.0 },
    ]);
    for obj in [Objective::Min, Objective::Max] {
        let a = brute_force(&i, 12, DEFAULT_BUDGET, obj, true).unwrap();
        let b = brute_force(&i, 12, DEFAULT_BUDGET, obj, false).unwrap();
        assert_eq!(a.alpha, b.alpha);
        assert_eq!(a.selection, b.selection);
        assert!(a.evaluated <= b.evaluated);
    }
}

#[test]
fn witness_reproduces_alpha() {
    let i = inst(vec![
        Region::FixedPoint(p(0.0, 0.0)),
        Region::Segment(Segment::new(p(3.0, 3.0), p(4.0, -1.0))),
        Region::UnitDisk(p(6.0, 1.0)),
    ]);
    let r = brute_force_bcu(&i, 20, DEFAULT_BUDGET).unwrap();
    assert_eq!(mbst(&r.selection.points).alpha, r.alpha);
}

#[test]
fn refinement_never_worsens_nested_lattices() {
    let i = inst(vec![
        Region::FixedPoint(p(0.0, 0.0)),
        Region::Segment(Segment::new(p(2.0, 3.0), p(4.0, -1.0))),
        Region::Segment(Segment::new(p(5.0, 5.0), p(7.0, 2.0))),
    ]);
    let eps = i.eps();
    for g in [5, 10, 20] {
        let a = brute_force_bcu(&i, g, DEFAULT_BUDGET).unwrap().alpha;
        let b = brute_force_bcu(&i, 2 * g, DEFAULT_BUDGET).unwrap().alpha;
        assert!(b <= a + eps);
    }
}

#[test]
fn three_tangent_disks() {
    let s3 = 3f64.sqrt();
    let i = inst(vec![Region::UnitDisk(p(0.0, 0.0)), Region::UnitDisk(p(2.0, 0.0)), Region::UnitDisk(p(1.0, s3))]);
    let r = topology_bcu(&i, &TopologyOptions::default()).unwrap();
    let expect = ((1.0 + (s3 - 1.0).powi(2)).sqrt() - 1.0) / 2.0;
    assert!((r.alpha - expect).abs() < 1e-6, "{} vs {expect}", r.alpha);
}

#[test]
fn topology_agrees_with_lattice() {
    let i = inst(vec![
        Region::FixedPoint(p(0.0, 0.0)),
        Region::Segment(Segment::new(p(2.0, 3.0), p(4.0, -1.0))),
        Region::UnitDisk(p(6.0, 4.0)),
        Region::PointPair(p(9.0, 0.0), p(3.0, 6.0)),
    ]);
    let t = topology_bcu(&i, &TopologyOptions::default()).unwrap();
    let l = brute_force_bcu(&i, 40, DEFAULT_BUDGET).unwrap();
    assert!(t.alpha <= l.alpha + 1e-9);
    assert!(l.alpha - t.alpha < 0.1, "{} {}", t.alpha, l.alpha);
}

#[test]
fn tree_counts() {
    assert_eq!(labeled_trees(4).len(), 16);
    for t in labeled_trees(5) {
        assert_eq!(t.len(), 4);
        assert!(ubc_core::connectivity::is_connected(5, &t));
    }
}

#[test]
fn pair_decisions() {
    let i = inst(vec![Region::PointPair(p(0.0, 0.0), p(0.0, 1.0)), Region::PointPair(p(0.0, 2.0), p(0.0, 3.0))]);
    match pair_decision(&i, 1.0, DecisionMode::Exhaustive).unwrap() {
        PairDecision::ConnectableYes { witness } => assert!(ubc_core::connectivity::connected_at(&witness.points, 1.0, 0.0)),
        d => panic!("{d:?}"),
    }
    let i = inst(vec![Region::PointPair(p(0.0, 0.0), p(0.0, 1.0)), Region::PointPair(p(0.0, 10.0), p(0.0, 11.0))]);
    assert_eq!(pair_decision(&i, 1.0, DecisionMode::Exhaustive).unwrap(), PairDecision::ConnectableNo);
    assert_eq!(
        pair_decision(&i, 1.0, DecisionMode::Randomized { trials: 50, seed: 3 }).unwrap(),
        PairDecision::Unknown { trials: 50 }
    );
    let many = inst((0..25).map(|k| Region::PointPair(p(k as f64, 0.0), p(k as f64, 1.0))).collect());
    assert!(pair_decision(&many, 1.0, DecisionMode::Exhaustive).is_err());
}
