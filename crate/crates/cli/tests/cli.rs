use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_media-kit"))
        .args(args)
        .output()
        .unwrap()
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_media-kit"))
        .args(args)
        .env(key, value)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn c6_is_mediatic() {
    let o = run(&["check", "graph", path(&fixture("c6"))]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(
        (v["g1"].as_bool(), v["g2"].as_bool(), v["g3"].as_bool()),
        (Some(true), Some(true), Some(true))
    );
}

#[test]
fn k23_fails_like_transitivity() {
    let o = run(&["check", "graph", path(&fixture("k23"))]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["g3"], Value::Bool(false));
    let triple = v["g3Witness"].as_array().unwrap();
    assert_eq!(triple.len(), 3);
    // every witness arc joins the two sides of K2,3
    for arc in triple {
        let (a, b) = (arc[0].as_str().unwrap(), arc[1].as_str().unwrap());
        assert_ne!(a.starts_with('l'), b.starts_with('l'), "{a} {b}");
    }
}

#[test]
fn q3_bounded_agrees() {
    let o = run(&["check", "medium", path(&fixture("q3-medium")), "--bounded", "6"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["agree"], Value::Bool(true));
    assert_eq!(v["exact"]["isMedium"], Value::Bool(true));
    assert_eq!(v["bounded"]["maxLen"], Value::from(6));
}

#[test]
fn arc_tokens_are_not_a_medium() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c4-arcs.json");
    let text = r#"{"states": ["0", "1", "2", "3"], "tokens": [
        {"id": "01", "moves": [["0", "1"]]}, {"id": "10", "moves": [["1", "0"]]},
        {"id": "12", "moves": [["1", "2"]]}, {"id": "21", "moves": [["2", "1"]]},
        {"id": "23", "moves": [["2", "3"]]}, {"id": "32", "moves": [["3", "2"]]},
        {"id": "30", "moves": [["3", "0"]]}, {"id": "03", "moves": [["0", "3"]]}]}"#;
    std::fs::write(&file, text).unwrap();
    let o = run(&["check", "medium", path(&file)]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["isMedium"], Value::Bool(false));
    assert_eq!(v["axiomMb"]["holds"], Value::Bool(false));
    assert_eq!(code(&run(&["convert", "m2g", path(&file)])), 1);
}

#[test]
fn output_is_deterministic() {
    let q3 = fixture("q3");
    let q3m = fixture("q3-medium");
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "medium", path(&q3m), "--bounded", "6"],
        vec!["convert", "g2m", path(&q3)],
        vec!["circuits", path(&q3m), "--max-len", "6"],
        vec!["gen-family", "--kind", "interval-order", "--n", "3", "--to-medium"],
        vec!["gen-fixture", "random-pc", "--seed", "11"],
        vec!["export", "dot", path(&q3)],
    ];
    for args in cases {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn g2m_then_m2g_reproduces_the_graph_file() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["k2", "c6", "q3", "tree15", "random-pc", "domino"] {
        let input = fixture(name);
        let medium = run(&["convert", "g2m", path(&input)]);
        assert_eq!(code(&medium), 0, "{name}");
        let mfile = dir.path().join(format!("{name}-medium.json"));
        std::fs::write(&mfile, &medium.stdout).unwrap();
        let back = run(&["convert", "m2g", path(&mfile)]);
        assert_eq!(code(&back), 0, "{name}");
        assert_eq!(
            String::from_utf8(back.stdout).unwrap(),
            std::fs::read_to_string(&input).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn g2m_rejects_non_mediatic_graphs_with_a_report() {
    let o = run(&["convert", "g2m", path(&fixture("c5"))]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["g2"], Value::Bool(false));
    assert_eq!(v["g2Witness"].as_array().unwrap().len() % 2, 1);
}

#[test]
fn iso_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let renamed = dir.path().join("c6-renamed.json");
    std::fs::write(
        &renamed,
        r#"{"vertices": ["u", "v", "w", "x", "y", "z"], "edges": [["u", "w"], ["w", "y"], ["y", "v"], ["v", "x"], ["x", "z"], ["z", "u"]]}"#,
    )
    .unwrap();
    let o = run(&["iso", "graphs", path(&fixture("c6")), path(&renamed)]);
    assert_eq!(code(&o), 0);
    let phi = stdout_json(&o)["phi"].as_object().unwrap().clone();
    assert_eq!(phi.len(), 6);
    let edges = [("u", "w"), ("w", "y"), ("y", "v"), ("v", "x"), ("x", "z"), ("z", "u")];
    for i in 0..6 {
        let (a, b) = (format!("{i}"), format!("{}", (i + 1) % 6));
        let (x, y) = (phi[&a].as_str().unwrap(), phi[&b].as_str().unwrap());
        assert!(
            edges.iter().any(|&(p, q)| (p, q) == (x, y) || (q, p) == (x, y)),
            "{x} {y}"
        );
    }
    let o = run(&["iso", "graphs", path(&fixture("q3")), path(&fixture("c8"))]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o), Value::from("non-isomorphic"));
}

#[test]
fn iso_respects_the_vertex_cap() {
    let q4 = fixture("q4");
    assert_eq!(code(&run(&["iso", "graphs", path(&q4), path(&q4)])), 2);
    assert_eq!(
        code(&run(&["iso", "graphs", path(&q4), path(&q4), "--max-vertices", "16"])),
        0
    );
}

#[test]
fn iso_media() {
    let o = run(&["iso", "media", path(&fixture("q3-medium")), path(&fixture("q3-medium"))]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["alpha"].as_object().unwrap().len(), 8);
    assert_eq!(v["beta"].as_object().unwrap().len(), 6);
}

#[test]
fn families() {
    let o = run(&["gen-family", "--kind", "partial-order", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["members"].as_array().unwrap().len(), 19);
    let o = run(&["gen-family", "--kind", "semiorder", "--n", "2", "--to-graph", "--dot"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("graph G {"));
    assert_eq!(code(&run(&["gen-family", "--kind", "semiorder", "--n", "5"])), 2);
    assert_eq!(code(&run(&["gen-family", "--kind", "lattice", "--n", "2"])), 2);
}

#[test]
fn circuits_and_content() {
    let o = run(&[
        "circuits",
        path(&fixture("q3-medium")),
        "--max-len",
        "6",
        "--minimal-only",
    ]);
    assert_eq!(code(&o), 0);
    let list = stdout_json(&o);
    let list = list.as_array().unwrap();
    // six square faces, and one isometric hexagon avoiding each of the four antipodal pairs
    assert_eq!(list.iter().filter(|c| c["length"] == 4).count(), 6);
    assert_eq!(list.iter().filter(|c| c["length"] == 6).count(), 4);
    assert!(list
        .iter()
        .all(|c| c["classification"]["isRegular"] == Value::Bool(true)));

    let o = run(&["content", path(&fixture("q3-medium")), "--state", "{}"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout_json(&o)["content"],
        serde_json::json!(["remove1", "remove2", "remove3"])
    );
    assert_eq!(
        code(&run(&["content", path(&fixture("q3-medium")), "--state", "{9}"])),
        2
    );
}

#[test]
fn input_errors_exit_2_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"vertices": ["a", "b"], "edges": [["a"]]}"#).unwrap();
    let o = run(&["check", "graph", path(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("edges[0]"));
    assert_eq!(code(&run(&["check", "graph", "/does/not/exist.json"])), 2);
    assert_eq!(code(&run(&["check", "shape", "x"])), 2);
    assert_eq!(code(&run(&["gen-fixture", "c4", "--seed", "3"])), 2);
    assert_eq!(code(&run(&["check", "graph", path(&fixture("c6")), "--dot"])), 2);
}

#[test]
fn enumeration_budget_comes_from_the_environment() {
    let o = run_env(
        &["circuits", path(&fixture("q4")), "--max-len", "8"],
        "MEDIA_KIT_MAX_ENUM",
        "10",
    );
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("budget"));
}
