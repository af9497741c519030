use std::path::PathBuf;
use std::process::{Command, Output};

use ribbonpoly::io::MapDocument;
use ribbonpoly::{catalog, Poly, VarSet};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbonpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn tmp(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name).display().to_string()
}

#[test]
fn compute_examples() {
    assert_eq!(
        stdout(&["compute", &data("torus_bouquet.rg"), "--poly", "lv"]),
        "z^2+2*z+1\n"
    );
    assert_eq!(
        stdout(&["compute", &data("point.rg"), "--poly", "krushkal"]),
        "1\n"
    );
    let br = stdout(&["compute", &data("theta_torus.rg"), "--poly", "br"]);
    let v = VarSet::bollobas_riordan();
    assert_eq!(
        Poly::parse(br.trim(), &v).unwrap(),
        Poly::parse("X+2+3*Y+Y^2*Z^2", &v).unwrap()
    );
}

#[test]
fn compute_json() {
    let out = stdout(&[
        "--json",
        "compute",
        &data("torus_bouquet.rg"),
        "--poly",
        "krushkal",
    ]);
    let j: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["poly"]["text"], "A+B+2");
    assert_eq!(j["poly"]["vars"], serde_json::json!(["X", "Y", "A", "B"]));
    assert_eq!(j["poly"]["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn edits() {
    let contracted = tmp("contracted.rg");
    stdout(&[
        "edit",
        &data("theta_torus.rg"),
        "--contract",
        "c",
        "-o",
        &contracted,
    ]);
    let doc = MapDocument::parse(&std::fs::read_to_string(&contracted).unwrap()).unwrap();
    assert!(doc.graph.is_isomorphic(&catalog::two_loop_torus()));

    let sphere = tmp("sphere.rg");
    stdout(&[
        "edit",
        &data("theta_torus.rg"),
        "--delete-ribbon",
        "c",
        "-o",
        &sphere,
    ]);
    assert!(stdout(&["info", &sphere]).contains("genus: 0\n"));

    let unmarked = tmp("unmarked.rg");
    stdout(&[
        "edit",
        &data("theta_torus.rg"),
        "--delete-embedded",
        "c",
        "-o",
        &unmarked,
    ]);
    assert!(std::fs::read_to_string(&unmarked)
        .unwrap()
        .contains("marked: a b\n"));
    assert_eq!(
        stdout(&["compute", &unmarked, "--poly", "krushkal"]),
        "X*B+2*B+1\n"
    );
    assert_eq!(
        run(&["compute", &unmarked, "--poly", "lv"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["edit", &unmarked, "--contract", "a"]).status.code(),
        Some(3)
    );
}

#[test]
fn json_input_gives_json_output() {
    let text = std::fs::read_to_string(data("theta_torus.rg")).unwrap();
    let json = MapDocument::parse(&text)
        .unwrap()
        .to_json_value()
        .to_string();
    let path = tmp("theta.json");
    std::fs::write(&path, json).unwrap();
    let out = stdout(&["edit", &path, "--contract", "c"]);
    assert!(out.trim_start().starts_with('{'));
    assert!(MapDocument::parse(&out)
        .unwrap()
        .graph
        .is_isomorphic(&catalog::two_loop_torus()));
}

#[test]
fn verify_map_and_sweep() {
    let out = stdout(&["verify", &data("theta_torus.rg")]);
    assert!(out.lines().all(|l| l.ends_with("holds")), "{out}");
    assert!(out.contains("main_theorem: holds"));
    let sweep = stdout(&["verify", "--sweep", "3"]);
    assert!(sweep.starts_with("maps checked: 28\n"));
    let j: Value = serde_json::from_str(&stdout(&["--json", "verify", "--sweep", "2"])).unwrap();
    assert_eq!(j["maps_checked"], 8);
    assert_eq!(j["all_hold"], true);
    assert_eq!(j["results"].as_array().unwrap().len(), 8);
}

#[test]
fn verify_perspectives() {
    let good = stdout(&[
        "verify",
        "--source",
        &data("theta_bond_dual.mat"),
        "--target",
        &data("theta_cycle.mat"),
    ]);
    assert!(good.starts_with("tutte: x*z^2+2*z^2+3*z+1\n"));
    let swapped = run(&[
        "verify",
        "--source",
        &data("theta_cycle.mat"),
        "--target",
        &data("theta_bond_dual.mat"),
    ]);
    assert_eq!(swapped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&swapped.stderr).contains("not a matroid perspective"));
    let bad = run(&[
        "verify",
        "--source",
        &data("bad_axioms.mat"),
        "--target",
        &data("theta_cycle.mat"),
    ]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn search_one_vertex_one_face() {
    let out = stdout(&[
        "--json",
        "search",
        "--edges",
        "4",
        "--exact-edges",
        "--one-vertex",
        "--one-face",
        "--equal",
        "lv",
        "--distinct",
        "krushkal",
    ]);
    let j: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["pool"], 4);
    let pairs: Vec<(String, String)> = j["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| {
            assert_eq!(w["shared"]["text"], "z^4+4*z^3+6*z^2+4*z+1");
            (
                w["distinct"][0]["text"].as_str().unwrap().to_string(),
                w["distinct"][1]["text"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    assert_eq!(pairs.len(), 6);
    let kv = VarSet::krushkal();
    let want = (
        Poly::parse("A^2+4*A+2*A*B+4+4*B+B^2", &kv)
            .unwrap()
            .to_string(),
        Poly::parse("A^2+4*A+4*A*B+2+4*B+B^2", &kv)
            .unwrap()
            .to_string(),
    );
    assert!(pairs.contains(&want));
}

#[test]
fn input_errors() {
    let missing = run(&["compute", "/nonexistent.rg", "--poly", "lv"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(missing.stdout.is_empty());
    let garbled = tmp("garbled.rg");
    std::fs::write(&garbled, "ribbon v1\nvertices: 1\nvertex 0: a.0\n").unwrap();
    assert_eq!(
        run(&["compute", &garbled, "--poly", "lv"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["edit", &data("theta_torus.rg"), "--contract", "q"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["search", "--edges", "7", "--connected", "--equal", "lv"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["search", "--edges", "2", "--equal", "lv"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["compute", &data("point.rg"), "--poly", "nope"])
            .status
            .code(),
        Some(2)
    );
}
