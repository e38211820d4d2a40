use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use szf_core::linalg::NullspaceBasis;
use szf_core::matching::{thermal_decomposition, EdgeRankReport, ThermalDecomposition};
use szf_core::matroid::{verify_matroid, ClosedSetFamily, GammoidCertificate, MatroidReport};
use szf_core::Graph;

struct Run {
    code: i32,
    json: Value,
    stdout: String,
}

fn szf(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_szf"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    // Help text and usage errors are not JSON.
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().unwrap(),
        json,
        stdout,
    }
}

fn manifest(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../manifests")
        .join(name)
}

#[test]
fn closure_of_empty_set_on_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("path4.json");
    fs::write(&file, r#"{"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}"#).unwrap();
    let r = szf(&["szf", "close", file.to_str().unwrap(), "--set", ""]);
    assert_eq!(r.code, 0);
    assert!(!r.json.is_null());
    assert!(r.stdout.ends_with('\n') && r.stdout.lines().count() == 1);
    assert_eq!(r.json["closure"], json!([0, 1, 2, 3]));
    assert_eq!(r.json["trace"]["initial"], json!([]));
}

#[test]
fn six_routes_on_path_three() {
    let r = szf(&["tree", "generating-set", "path:3", "--method", "all"]);
    assert_eq!(r.code, 0);
    let routes = r.json["routes"].as_array().unwrap();
    assert_eq!(routes.len(), 6);
    assert!(routes.iter().all(|x| x["set"] == json!([1])));
    assert_eq!(r.json["agree"], json!(true));

    let one = szf(&["tree", "generating-set", "path:3", "--method", "dm"]);
    assert_eq!(one.json, json!({"method": "dm", "set": [1]}));
    assert_eq!(
        szf(&["tree", "generating-set", "path:3", "--method", "nope"]).code,
        2
    );
}

#[test]
fn complete_hypergraph_report() {
    let r = szf(&["hyper", "complete-report", "--n", "4", "--k", "3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["components"], json!(4));
    assert_eq!(r.json["stalled_excluded_sizes"], json!([1, 2]));
}

#[test]
fn exit_codes() {
    let domain = szf(&["tree", "thermal", "cycle:4"]);
    assert_eq!(domain.code, 1);
    assert!(domain.json["error"]["kind"].is_string());
    assert!(domain.json["error"]["message"].is_string());

    let cap = szf(&["szf", "closed-sets", "path:12", "--cap", "10"]);
    assert_eq!(
        (cap.code, cap.json["error"]["kind"].clone()),
        (1, json!("cap_exceeded"))
    );

    let missing = szf(&["kernel", "witness", "path:4", "--set", "0,3"]);
    assert_eq!(missing.json["error"]["kind"], json!("not_realizable"));

    assert_eq!(szf(&["szf", "close", "path:4", "--set", "0,x"]).code, 2);
    assert_eq!(szf(&["szf", "close", "path:4"]).code, 2);
    assert_eq!(szf(&["frobnicate"]).code, 2);
    assert_eq!(
        szf(&["tree", "rank-class", "path:4", "--edge", "1"]).code,
        2
    );
    let help = szf(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn payloads_round_trip() {
    let g: Graph =
        serde_json::from_value(szf(&["gen", "random_tree:9", "--seed", "5"]).json).unwrap();
    assert!(g.is_tree() && g.n() == 9);
    let again = szf(&["gen", "random_tree:9", "--seed", "5"]).json;
    assert_eq!(serde_json::to_value(&g).unwrap(), again);

    let fam: ClosedSetFamily =
        serde_json::from_value(szf(&["szf", "closed-sets", "path:5", "--verify"]).json).unwrap();
    assert!(fam.report().is_some());
    let _: ClosedSetFamily =
        serde_json::from_value(szf(&["kernel", "matroid", "cycle:6"]).json).unwrap();

    let d: ThermalDecomposition =
        serde_json::from_value(szf(&["tree", "thermal", "random_tree:10", "--seed", "2"]).json)
            .unwrap();
    let t = szf_core::generate::random_tree(10, 2).unwrap();
    assert_eq!(d, thermal_decomposition(&t).unwrap());

    let _: NullspaceBasis =
        serde_json::from_value(szf(&["kernel", "nullspace", "path:5"]).json).unwrap();
    let rc: EdgeRankReport =
        serde_json::from_value(szf(&["tree", "rank-class", "path:4", "--edge", "0,1"]).json)
            .unwrap();
    assert_eq!((rc.rank, rc.rank_deleted), (4, 2));
    let _: GammoidCertificate =
        serde_json::from_value(szf(&["matroid", "gammoid", "path:4"]).json).unwrap();
}

#[test]
fn matroid_verify_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("family.json");
    let family = szf(&["szf", "closed-sets", "cycle:6"]).json;
    fs::write(&file, family.to_string()).unwrap();
    let r = szf(&["matroid", "verify", "--family", file.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let report: MatroidReport = serde_json::from_value(r.json).unwrap();
    let fam: ClosedSetFamily = serde_json::from_value(family).unwrap();
    assert_eq!(report, verify_matroid(&fam, 14).unwrap());

    fs::write(&file, r#"{"n": 3, "family": [[0], [1]]}"#).unwrap();
    let r = szf(&["matroid", "verify", "--family", file.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let custom: ClosedSetFamily =
        serde_json::from_value(json!({"n": 3, "provenance": "custom", "family": [[0], [1]]}))
            .unwrap();
    assert_eq!(
        serde_json::from_value::<MatroidReport>(r.json).unwrap(),
        verify_matroid(&custom, 14).unwrap()
    );
}

#[test]
fn thermal_dot_is_edge_complete() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..10 {
        let dot = dir.path().join(format!("t{seed}.dot"));
        let seed_s = seed.to_string();
        let r = szf(&[
            "tree",
            "thermal",
            "random_tree:11",
            "--seed",
            &seed_s,
            "--dot",
            dot.to_str().unwrap(),
        ]);
        assert_eq!(r.code, 0);
        let d: ThermalDecomposition = serde_json::from_value(r.json).unwrap();
        let text = fs::read_to_string(&dot).unwrap();
        assert!(text.starts_with("graph thermal {\n") && text.ends_with("}\n"));
        assert_eq!(text.matches('{').count(), text.matches('}').count());
        let edge_lines: Vec<&str> = text.lines().filter(|l| l.contains(" -- ")).collect();
        assert_eq!(edge_lines.len(), d.edges.len());
        for e in &d.edges {
            let style = match e.class {
                szf_core::matching::EdgeClass::M => "solid",
                szf_core::matching::EdgeClass::O => "dashed",
                szf_core::matching::EdgeClass::F => "dotted",
            };
            let line = format!("  {} -- {} [style={}];", e.u, e.v, style);
            assert_eq!(
                edge_lines.iter().filter(|l| **l == line).count(),
                1,
                "{line}"
            );
        }
        let filled: Vec<usize> = text
            .lines()
            .filter(|l| l.contains("style=filled"))
            .map(|l| l.trim().split(' ').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(filled, d.generating_set().members());
    }
}

#[test]
fn hyper_nullvector_round_trip() {
    let family = szf(&["hyper", "stalled", "hyperstar:3,3"]).json;
    let sets = family["family"].as_array().unwrap();
    assert!(!sets.is_empty());
    for s in sets {
        let set: Vec<String> = s
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect();
        let set = set.join(",");
        let built = szf(&["hyper", "nullvector", "hyperstar:3,3", "--set", &set]);
        assert_eq!(built.code, 0, "{}", built.stdout);
        assert_eq!(&built.json["zero_locus"], s);
        let vector: Vec<&str> = built.json["vector"]
            .as_array()
            .unwrap()
            .iter()
            .map(|q| q.as_str().unwrap())
            .collect();
        let check = szf(&[
            "hyper",
            "nullvector",
            "hyperstar:3,3",
            "--vector",
            &vector.join(","),
        ]);
        assert_eq!(check.json["nullvector"], json!(true));
        let stalled = szf(&["hyper", "stalled", "hyperstar:3,3", "--set", &set]);
        assert_eq!(stalled.json["stalled"], json!(true));
    }
    let not = szf(&["hyper", "nullvector", "hyperstar:3,3", "--set", ""]);
    assert_eq!(not.json["error"]["kind"], json!("not_stalled"));
}

#[test]
fn batch_manifests() {
    let cycles = szf(&[
        "batch",
        manifest("cycles.json").to_str().unwrap(),
        "--jobs",
        "4",
    ]);
    assert_eq!(cycles.code, 0, "{}", cycles.stdout);
    assert_eq!(
        (
            cycles.json["instances"].clone(),
            cycles.json["failed"].clone()
        ),
        (json!(10), json!(0))
    );
    let order: Vec<i64> = cycles.json["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["index"].as_i64().unwrap())
        .collect();
    assert_eq!(order, (0..10).collect::<Vec<_>>());

    let trees = szf(&[
        "batch",
        manifest("trees.json").to_str().unwrap(),
        "--jobs",
        "3",
    ]);
    assert_eq!(trees.code, 0);
    assert_eq!(trees.json["passed"], json!(50));

    let empty = szf(&["batch", manifest("empty.json").to_str().unwrap()]);
    assert_eq!(empty.code, 0);
    assert_eq!(empty.json["instances"], json!(0));
}

#[test]
fn batch_failures_and_schema_errors() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    fs::write(
        &file,
        json!([
            {"command": "complete check", "input": "cycle:6", "expect": {"verdict": true}},
            {"command": "tree thermal", "input": "cycle:4", "expect_error": "unsupported_class"},
            {"command": "szf close", "input": {"n": 2, "edges": [[0, 1]]}, "flags": {"set": "0"},
             "expect": {"closure": [0, 1]}},
        ])
        .to_string(),
    )
    .unwrap();
    let r = szf(&["batch", file.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(r.code, 1);
    let pass: Vec<bool> = r.json["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["pass"].as_bool().unwrap())
        .collect();
    assert_eq!(pass, vec![false, true, true]);
    assert_eq!(r.json["failed"], json!(1));

    fs::write(&file, r#"{"instances": [{"cmd": "x"}]}"#).unwrap();
    let bad = szf(&["batch", file.to_str().unwrap()]);
    assert_eq!(
        (bad.code, bad.json["error"]["kind"].clone()),
        (1, json!("invalid_input"))
    );
}
