use ubc_gadgets::{build, bundled, random_selection_smoke, Family};

#[test]
fn random_selections_on_unsat_never_connect() {
    let b = bundled("tri-unsat").unwrap();
    assert!(!b.satisfiable);
    for family in [Family::Pairs, Family::Squares] {
        let g = build(family, &b.formula, &b.layout).unwrap();
        let r = random_selection_smoke(&g, 100_000, 7);
        assert_eq!(r.trials, 100_000);
        assert_eq!(r.connected, 0, "{family}");
    }
}

#[test]
fn smoke_is_deterministic() {
    let b = bundled("single").unwrap();
    let g = build(Family::Pairs, &b.formula, &b.layout).unwrap();
    assert_eq!(random_selection_smoke(&g, 500, 3), random_selection_smoke(&g, 500, 3));
}
