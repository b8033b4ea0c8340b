use ubc_core::connectivity::connected_at;
use ubc_gadgets::audit::{link_signatures, LinkSignature};
use ubc_gadgets::{build, bundled, bundled_layouts, clause_gate_report, variable_block, Family, RoleTag};

#[test]
fn single_open_gate_joins_and_closed_gates_separate() {
    for family in Family::ALL {
        for b in bundled_layouts() {
            let g = build(family, &b.formula, &b.layout).unwrap();
            let report = clause_gate_report(&g);
            assert_eq!(report.len(), 3 * b.formula.clauses.len());
            for r in report {
                assert!(r.open_joins, "{family} {} {r:?}", b.name);
                assert!(r.closed_separates, "{family} {} {r:?}", b.name);
            }
        }
    }
}

#[test]
fn connectors_touch_gates_only_across_states() {
    let b = bundled("tri").unwrap();
    for family in [Family::Pairs, Family::Squares] {
        let g = build(family, &b.formula, &b.layout).unwrap();
        let sigs = link_signatures(&g);
        let conn: Vec<&LinkSignature> = sigs.iter().filter(|s| s.kinds.0 == "connector" || s.kinds.1 == "connector").collect();
        assert!(!conn.is_empty());
        for s in conn {
            let other = if s.kinds.0 == "connector" { &s.kinds.1 } else { &s.kinds.0 };
            assert!(other == "clause-gate" || other == "variable", "{family}: {s:?}");
        }
        let gate: Vec<_> = sigs.iter().filter(|s| s.kinds == ("clause-gate".into(), "connector".into())).collect();
        assert!(gate.iter().all(|s| s.candidates.0 != s.candidates.1), "{family}: {gate:?}");
    }
}

#[test]
fn reference_region_is_first_of_each_variable() {
    let b = bundled("tri").unwrap();
    let g = build(Family::Squares, &b.formula, &b.layout).unwrap();
    let refs = g.indices_where(|t| matches!(t, RoleTag::Reference { .. }));
    assert_eq!(refs.len(), 3);
    for (v, &i) in refs.iter().enumerate() {
        assert_eq!(g.role_tags[i].variable(), Some(v));
        assert_eq!(g.indices_where(|t| t.variable() == Some(v))[0], i);
    }
}

fn block_points(family: Family, blue: impl Fn(usize) -> bool) -> Vec<ubc_core::Point2> {
    variable_block(family)
        .iter()
        .enumerate()
        .map(|(i, &(x, y, up))| {
            let upper = blue(i) == up;
            ubc_core::Point2::new(x as f64, (y + i32::from(upper)) as f64)
        })
        .collect()
}

#[test]
fn variable_block_connects_only_in_pure_colors() {
    for family in [Family::Pairs, Family::Squares] {
        let alpha = family.alpha_star();
        assert!(connected_at(&block_points(family, |_| true), alpha, 1e-9), "{family} blue");
        assert!(connected_at(&block_points(family, |_| false), alpha, 1e-9), "{family} red");
        // The reference row blue, everything else red.
        assert!(!connected_at(&block_points(family, |i| i < 4), alpha, 1e-9), "{family} mixed");
        assert!(!connected_at(&block_points(family, |i| i >= 4), alpha, 1e-9), "{family} mixed");
    }
}

#[test]
fn role_tags_round_trip_as_json() {
    let b = bundled("pair").unwrap();
    let g = build(Family::Segments, &b.formula, &b.layout).unwrap();
    let text = serde_json::to_string(&g.sidecar()).unwrap();
    assert!(text.contains("\"role\":\"clause-gate\""));
    let back: ubc_gadgets::RoleTagFile = serde_json::from_str(&text).unwrap();
    let g2 = ubc_gadgets::GadgetInstance::from_parts(g.instance.clone(), back).unwrap();
    assert_eq!(g, g2);
}
