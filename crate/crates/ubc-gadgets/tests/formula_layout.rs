use proptest::prelude::*;
use ubc_gadgets::{bundled, bundled_layouts, EdgeKind, Formula, FormulaLayout, GadgetError, EXTENT_FACTOR};

#[test]
fn dimacs_parses_comments_and_split_clauses() {
    let f = Formula::parse_dimacs("c demo\np cnf 3 2\n1 -2 3 0\n-1\n2 -3 0\n").unwrap();
    assert_eq!(f.num_vars, 3);
    assert_eq!(f.clauses, vec![[1, -2, 3], [-1, 2, -3]]);
}

#[test]
fn dimacs_errors_name_the_line() {
    let cases = [
        ("p cnf 2 1\n1 2 0\n", 2),
        ("1 2 3 0\n", 1),
        ("p cnf 3 1\n1 2 x 0\n", 2),
        ("p cnf 3 2\n1 2 3 0\n", 2),
        ("p cnf 3 1\n1 2 3\n", 2),
    ];
    for (text, line) in cases {
        match Formula::parse_dimacs(text) {
            Err(GadgetError::Dimacs { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(matches!(Formula::parse_dimacs("p cnf 2 1\n1 2 3 0\n"), Err(GadgetError::Formula(_))));
}

#[test]
fn truth_tables() {
    let unsat = Formula::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
    assert!(!unsat.is_satisfiable().unwrap());
    let f = Formula::new(2, vec![[1, 1, -2]]).unwrap();
    assert_eq!(f.satisfying_assignments().unwrap().len(), 3);
    assert_eq!(f.first_true_slot(0, &[false, false]), Some(2));
}

proptest! {
    #[test]
    fn dimacs_round_trip(n in 1usize..8, raw in prop::collection::vec((0usize..1000, 0usize..1000, 0usize..1000, 0u8..8), 0..12)) {
        let lit = |k: usize, neg: bool| { let v = (k % n + 1) as i32; if neg { -v } else { v } };
        let clauses: Vec<[i32; 3]> = raw.iter().map(|&(a, b, c, s)| [lit(a, s & 1 != 0), lit(b, s & 2 != 0), lit(c, s & 4 != 0)]).collect();
        let f = Formula::new(n, clauses).unwrap();
        prop_assert_eq!(Formula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}

#[test]
fn bundled_layouts_are_valid_and_small() {
    let all = bundled_layouts();
    assert_eq!(all.len(), 4);
    for b in &all {
        b.layout.validate(&b.formula).unwrap();
        let (w, h) = b.layout.extent();
        let bound = EXTENT_FACTOR * (b.formula.num_vars + b.formula.clauses.len()) as i32;
        assert!(w <= bound && h <= bound, "{}: {w}x{h} > {bound}", b.name);
    }
    let sat: Vec<bool> = all.iter().map(|b| b.satisfiable).collect();
    assert_eq!(sat, [true, true, true, false]);
    assert!(matches!(bundled("nope"), Err(GadgetError::UnknownBundled(_))));
}

#[test]
fn layout_json_round_trip() {
    let b = bundled("tri").unwrap();
    let text = serde_json::to_string(&b.layout).unwrap();
    assert!(text.contains("\"kind\":\"variable_variable\""));
    let back: FormulaLayout = serde_json::from_str(&text).unwrap();
    assert_eq!(back, b.layout);
}

fn expect_layout_error(layout: &FormulaLayout, f: &Formula, needle: &str) {
    match layout.validate(f) {
        Err(GadgetError::Layout(m)) => assert!(m.contains(needle), "{m}"),
        other => panic!("expected layout error containing {needle:?}, got {other:?}"),
    }
}

#[test]
fn broken_layouts_are_rejected() {
    let b = bundled("tri").unwrap();
    let f = &b.formula;

    let mut l = b.layout.clone();
    l.edges.pop();
    expect_layout_error(&l, f, "loose links");

    let mut l = b.layout.clone();
    l.edges.remove(0);
    expect_layout_error(&l, f, "no edge");

    let mut l = b.layout.clone();
    l.edges[0].column = 8;
    expect_layout_error(&l, f, "outside");

    let mut l = b.layout.clone();
    l.variables[1].row = 1;
    expect_layout_error(&l, f, "overlap");

    let mut l = b.layout.clone();
    l.clauses[0].x_max = 1000;
    expect_layout_error(&l, f, "outside the grid");

    // Column 2 leads from clause 0 down to variable 0 through variable 1.
    let mut l = b.layout.clone();
    l.edges[0].column = 2;
    expect_layout_error(&l, f, "crosses");

    let mut l = b.layout.clone();
    l.edges.push(l.edges[0]);
    expect_layout_error(&l, f, "two edges");

    let mut l = b.layout.clone();
    for e in &mut l.edges {
        if let EdgeKind::VariableVariable { lower, upper } = &mut e.kind {
            std::mem::swap(lower, upper);
        }
    }
    expect_layout_error(&l, f, "not below");

    let mut l = b.layout.clone();
    l.variables.pop();
    expect_layout_error(&l, f, "variables");
}
