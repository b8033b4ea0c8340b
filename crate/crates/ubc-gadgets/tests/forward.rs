use ubc_core::connectivity::connected_at;
use ubc_gadgets::audit::assignment_connected;
use ubc_gadgets::{assignment_to_selection, build, bundled, bundled_layouts, forward_check, geometry_audit, Family};

#[test]
fn region_counts_are_stable() {
    let expected = [
        (Family::Pairs, [348, 507, 1605, 970]),
        (Family::Segments, [348, 507, 1605, 970]),
        (Family::Squares, [290, 442, 1226, 832]),
    ];
    for (family, counts) in expected {
        for (b, want) in bundled_layouts().iter().zip(counts) {
            let g = build(family, &b.formula, &b.layout).unwrap();
            assert_eq!(g.len(), want, "{family} {}", b.name);
            assert_eq!(g.instance.len(), g.role_tags.len());
        }
    }
}

#[test]
fn satisfying_assignments_connect() {
    for family in Family::ALL {
        for b in bundled_layouts() {
            let g = build(family, &b.formula, &b.layout).unwrap();
            let results = forward_check(&g, &b.formula).unwrap();
            assert_eq!(results.is_empty(), !b.satisfiable);
            for (a, ok) in results {
                assert!(ok, "{family} {} {a:?}", b.name);
            }
        }
    }
}

#[test]
fn falsifying_assignments_disconnect() {
    for family in Family::ALL {
        for b in bundled_layouts() {
            let g = build(family, &b.formula, &b.layout).unwrap();
            for bits in 0..1u32 << b.formula.num_vars {
                let a: Vec<bool> = (0..b.formula.num_vars).map(|i| bits >> i & 1 == 1).collect();
                let sat = b.formula.evaluate(&a).unwrap();
                assert_eq!(assignment_connected(&g, &b.formula, &a).unwrap(), sat, "{family} {} {a:?}", b.name);
            }
        }
    }
}

#[test]
fn single_all_blue_connects() {
    let b = bundled("single").unwrap();
    let g = build(Family::Pairs, &b.formula, &b.layout).unwrap();
    let sel = assignment_to_selection(&g, &b.formula, &[true]).unwrap();
    assert!(connected_at(&sel.points, 1.0, 1e-9));
    assert!(!connected_at(&sel.points, 0.99, 1e-9));
}

#[test]
fn single_variable_both_values_give_connected_blocks() {
    for family in Family::ALL {
        let b = bundled("single").unwrap();
        let g = build(family, &b.formula, &b.layout).unwrap();
        for value in [false, true] {
            let sel = assignment_to_selection(&g, &b.formula, &[value]).unwrap();
            let pts: Vec<_> = g.indices_where(|t| t.variable().is_some()).into_iter().map(|i| sel.points[i]).collect();
            assert!(connected_at(&pts, g.alpha_star, 1e-9), "{family} {value}");
        }
    }
}

#[test]
fn flipping_a_variable_isolates_a_clause() {
    let b = bundled("pair").unwrap();
    for family in Family::ALL {
        let g = build(family, &b.formula, &b.layout).unwrap();
        // (x1 or x1 or not x2) holds for x1 = false, x2 = false; flipping x2 falsifies it.
        assert!(assignment_connected(&g, &b.formula, &[false, false]).unwrap());
        assert!(!assignment_connected(&g, &b.formula, &[false, true]).unwrap());
    }
}

#[test]
fn geometry_audits_are_clean() {
    for family in Family::ALL {
        for b in bundled_layouts() {
            let g = build(family, &b.formula, &b.layout).unwrap();
            let v = geometry_audit(&g);
            assert!(v.is_empty(), "{family} {}: {:?}", b.name, &v[..v.len().min(5)]);
        }
    }
}

#[test]
fn wrong_assignment_length_is_rejected() {
    let b = bundled("tri").unwrap();
    let g = build(Family::Pairs, &b.formula, &b.layout).unwrap();
    assert!(assignment_to_selection(&g, &b.formula, &[true]).is_err());
}
