use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn ubc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ubc")).args(args).output().expect("run ubc")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ubc-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> String {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn alpha(r: &Value) -> f64 {
    r["result"]["alpha"].as_f64().unwrap()
}

const SYMMETRIC: &str = r#"{"regions":[
 {"type":"point","p":[0,0]},{"type":"point","p":[4,0]},
 {"type":"segment","a":[2,-1],"b":[2,1]}]}"#;

#[test]
fn solve_exact_symmetric() {
    let input = write("sym.json", SYMMETRIC);
    let r = report(&ubc(&["solve-exact", &input]));
    assert!((alpha(&r) - 1.0).abs() < 1e-6);
    assert_eq!(r["instance"]["kinds"]["segment"], 1);
    assert_eq!(r["params"]["seed"], 0);
}

#[test]
fn solve_exact_points_only_is_the_mbst() {
    let input = write("pts.json", r#"{"regions":[{"type":"point","p":[0,0]},{"type":"point","p":[3,4]},{"type":"point","p":[3,0]}]}"#);
    let r = report(&ubc(&["solve-exact", &input]));
    assert!((alpha(&r) - 2.0).abs() < 1e-12);
}

#[test]
fn solve_exact_rejects_disks_with_usage_code() {
    let input = write("disk.json", r#"{"regions":[{"type":"point","p":[0,0]},{"type":"disk","center":[3,0]}]}"#);
    let out = ubc(&["solve-exact", &input]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_is_an_io_error() {
    let out = ubc(&["approx", "/nonexistent/ubc.json", "--method", "center"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn bad_flag_is_a_usage_error() {
    assert_eq!(ubc(&["approx", "--method", "nope", "x.json"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_has_its_own_code() {
    let input = write("seg3.json", r#"{"regions":[{"type":"segment","a":[0,0],"b":[0,5]},{"type":"segment","a":[3,0],"b":[3,5]},{"type":"segment","a":[6,0],"b":[6,5]}]}"#);
    let out = ubc(&["oracle", &input, "--grid", "1000", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn approx_examples() {
    let far = write("far.json", r#"{"regions":[{"type":"disk","center":[0,0]},{"type":"disk","center":[4,0]}]}"#);
    let r = report(&ubc(&["approx", &far, "--method", "center"]));
    assert!((alpha(&r) - 2.0).abs() < 1e-12);
    assert_eq!(r["result"]["certificates"][0], "<= OPT + 1");
    let r = report(&ubc(&["approx", &far, "--method", "wcu-center"]));
    assert!((alpha(&r) - 3.0).abs() < 1e-12);
    assert_eq!(r["result"]["certificates"].as_array().unwrap().len(), 2);
    let tangent = write("tangent.json", r#"{"regions":[{"type":"disk","center":[0,0]},{"type":"disk","center":[2,0]}]}"#);
    let r = report(&ubc(&["approx", &tangent, "--method", "cinch"]));
    assert!(alpha(&r).abs() < 1e-12);
}

#[test]
fn oracle_modes() {
    let input = write("sym2.json", SYMMETRIC);
    let r = report(&ubc(&["oracle", &input, "--grid", "40"]));
    assert!((alpha(&r) - 1.0).abs() < 1e-9);
    let r = report(&ubc(&["oracle", &input, "--mode", "wcu", "--grid", "40"]));
    assert!(alpha(&r) > 1.0);
    let pairs = write("pairs.json", r#"{"regions":[{"type":"pair","a":[0,0],"b":[0,5]},{"type":"pair","a":[2,0],"b":[9,9]}]}"#);
    let r = report(&ubc(&["oracle", &pairs, "--mode", "pair-decision", "--alpha", "1"]));
    assert_eq!(r["result"]["answer"], "connectable_yes");
    let r = report(&ubc(&["pair-decision", &pairs, "--alpha", "0.5"]));
    assert_eq!(r["result"]["answer"], "connectable_no");
}

#[test]
fn randomized_decision_follows_the_seed() {
    let pairs = write("pairs3.json", r#"{"regions":[{"type":"pair","a":[0,0],"b":[0,5]},{"type":"pair","a":[2,0],"b":[2,5]},{"type":"pair","a":[4,0],"b":[4,5]}]}"#);
    let run = |seed: &str| report(&ubc(&["pair-decision", &pairs, "--alpha", "1", "--trials", "50", "--seed", seed]))["result"].clone();
    assert_eq!(run("11"), run("11"));
}

#[test]
fn gadget_generation_and_rendering() {
    let inst = scratch("single.json");
    let sel = scratch("single.sel.json");
    let r = report(&ubc(&[
        "gen-gadget",
        "--family",
        "pairs",
        "--bundled",
        "single",
        "--assignment",
        "1",
        "--selection-out",
        sel.to_str().unwrap(),
        "--out",
        inst.to_str().unwrap(),
    ]));
    assert_eq!(r["result"]["selection_connected"], true);
    let tags = scratch("single.tags.json");
    assert!(tags.exists());
    let svg = scratch("single.svg");
    let args = [
        "render",
        inst.to_str().unwrap(),
        "--selection",
        sel.to_str().unwrap(),
        "--tags",
        tags.to_str().unwrap(),
        "--alpha",
        "1",
        "--out",
        svg.to_str().unwrap(),
    ];
    report(&ubc(&args));
    let first = std::fs::read(&svg).unwrap();
    report(&ubc(&args));
    assert_eq!(first, std::fs::read(&svg).unwrap());
    let text = String::from_utf8(first).unwrap();
    assert!(text.contains("#2e9a3e"), "gate colors");
}

#[test]
fn gadget_from_files() {
    let cnf = write("f.cnf", "p cnf 2 1\n1 1 -2 0\n");
    let layout = write(
        "f.layout.json",
        r#"{"variables":[{"row":0,"x_min":0,"x_max":3},{"row":1,"x_min":2,"x_max":3}],
            "clauses":[{"row":2,"x_min":0,"x_max":2}],
            "edges":[{"kind":"clause_variable","clause":0,"slot":0,"column":0},
                     {"kind":"clause_variable","clause":0,"slot":1,"column":1},
                     {"kind":"clause_variable","clause":0,"slot":2,"column":2},
                     {"kind":"variable_variable","lower":0,"upper":1,"column":3}]}"#,
    );
    let inst = scratch("f.json");
    let r = report(&ubc(&["gen-gadget", "--family", "squares", "--formula", &cnf, "--layout", &layout, "--out", inst.to_str().unwrap()]));
    assert_eq!(r["result"]["regions"], 442);
    assert_eq!(r["result"]["alpha_star"], 2.5);
    let bad = write("bad.cnf", "p cnf 2 1\n1 2 0\n");
    let out = ubc(&["gen-gadget", "--family", "pairs", "--formula", &bad, "--layout", &layout, "--out", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flower_generation() {
    let inst = scratch("flower.json");
    let r = report(&ubc(&["gen-flower", "--spacing", "2.01", "--rim-only", "--out", inst.to_str().unwrap()]));
    let b = r["result"]["ell_star_bottleneck"].as_f64().unwrap();
    let target = r["result"]["sqrt_l2_plus_4"].as_f64().unwrap();
    assert!(b < target && b > 0.99 * target);
}

#[test]
fn report_can_go_to_a_file() {
    let input = write("sym3.json", SYMMETRIC);
    let out_path = scratch("report.json");
    let out = ubc(&["approx", &input, "--method", "center", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "segments are not disks");
    let out = ubc(&["solve-exact", &input, "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!((alpha(&r) - 1.0).abs() < 1e-6);
}
