use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superlambda")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn validate_prints_labels_and_order() {
    let (code, out, _) = run(&["validate", &data("pentagon.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("gamma 0,2"));
    assert!(out.contains("order θ3 > θ2 > θ1"));
    assert!(out.contains("quiver 1->2"));
}

#[test]
fn arc_defaults_to_the_longest_arc() {
    let (_, with_arc, _) = run(&["super-expand", &data("pentagon.json"), "--arc", "0,2"]);
    let (code, without, _) = run(&["super-expand", &data("pentagon.json")]);
    assert_eq!(code, 0);
    assert_eq!(with_arc, without);
}

#[test]
fn square_expansion() {
    let (code, out, _) = run(&["super-cc", &data("square.json"), "--arc", "1,3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2*x1^(-1) + x1^(-1)*θ1θ2");
}

#[test]
fn count_on_two_tiles() {
    let (code, out, _) = run(&["count", &data("pentagon.json"), "--d", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "dimers=15 submodules=15 equal=true");
    let (_, json, _) = run(&["--format", "json", "count", &data("pentagon.json"), "--d", "2"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["dimers"], 6);
    assert_eq!(v["equal"], true);
}

#[test]
fn lattice_sides_have_matching_sizes() {
    let parse = |side: &str| -> serde_json::Value {
        let (code, out, _) = run(&[
            "--format", "json", "lattice", &data("octagon.json"), "--arc", "2,6", "--side", side,
        ]);
        assert_eq!(code, 0);
        serde_json::from_str(&out).unwrap()
    };
    let dimer = parse("dimer");
    let module = parse("module");
    assert_eq!(dimer["nodes"].as_array().unwrap().len(), module["nodes"].as_array().unwrap().len());
    assert_eq!(dimer["edges"].as_array().unwrap().len(), module["edges"].as_array().unwrap().len());
}

#[test]
fn text_lattice_is_dot() {
    let (code, out, _) = run(&["lattice", &data("square.json"), "--arc", "1,3", "--d", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert!(out.contains("n0 -> n1"));
}

#[test]
fn bijection_lists_pairs() {
    let (code, out, _) = run(&["bijection", &data("square.json"), "--arc", "1,3", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.contains("->")));
}

#[test]
fn out_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("superlambda-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("expand.txt");
    let (code, _, _) = run(&[
        "--out", path.to_str().unwrap(), "expand", &data("octagon.json"), "--arc", "2,6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim().split(" + ").count(), 7);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn input_errors_exit_with_two() {
    let (code, _, err) = run(&["validate", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));

    let dir = std::env::temp_dir().join(format!("superlambda-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, body) in [
        ("schema.json", r#"{ "vertices": 5, "arcs": [[1, 4]], "extra": 1 }"#),
        ("crossing.json", r#"{ "vertices": 5, "arcs": [[1, 3], [0, 2]] }"#),
        ("internal.json", r#"{ "vertices": 6, "arcs": [[0, 2], [2, 4], [4, 0]] }"#),
    ] {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        let (code, _, _) = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(code, 2, "{name}");
    }
    std::fs::remove_dir_all(dir).unwrap();

    for arc in ["0,9", "2,2"] {
        let (code, _, _) = run(&["expand", &data("pentagon.json"), "--arc", arc]);
        assert_eq!(code, 2, "{arc}");
    }
    let (code, out, _) = run(&["expand", &data("pentagon.json"), "--arc", "1,3"]);
    assert_eq!((code, out.trim()), (0, "x2"));
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_reports_counts() {
    let (code, out, _) = run(&["verify", "--vmax", "6", "--max-tiles", "3"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("routes: cases=")));
    assert!(out.lines().any(|l| l.starts_with("ptolemy: cases=")));
    assert!(out.lines().any(|l| l.starts_with("lattice: cases=")));
    assert!(out.ends_with("verify: ok\n"));
    let (code, json, _) = run(&["--format", "json", "verify", "--vmax", "7", "--exhaustive", "6", "--samples", "5", "--max-tiles", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["routes"]["failures"].as_array().unwrap().len(), 0);
}
