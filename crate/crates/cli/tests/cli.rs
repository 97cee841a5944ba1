use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mtheta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtheta")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mtheta-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn analyze_mk4() {
    let out = mtheta(&["analyze", "MK4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["levelness"]["value"], 3);
    for key in ["levelness", "excluded_minors", "decomposition", "generation_degree"] {
        assert_eq!(r["two_level"][key], false, "{key}");
    }
    assert_eq!(r["two_level"]["agree"], true);
    assert_eq!(r["theta"]["lower"], 2);
    assert_eq!(r["matroid"]["basis_count"], 16);
}

#[test]
fn analyze_uniform_is_two_level() {
    let out = mtheta(&["analyze", "U(5,2)", "--hrk", "--slack", "--ideal"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["levelness"]["value"], 2);
    for key in ["levelness", "excluded_minors", "decomposition", "generation_degree"] {
        assert_eq!(r["two_level"][key], true, "{key}");
    }
    assert_eq!(r["hrk"]["psd_minimal"], true);
    assert_eq!(r["slack"]["zero_one"], true);
    assert_eq!(r["ideal"]["generation_degree"], 2);
    assert_eq!(r["decomposition"]["kind"], "leaf");
}

#[test]
fn analyze_wheel5_with_sos() {
    let out = mtheta(&["analyze", "wheel5", "--sos", "--max-k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["theta"]["lower"], 3);
    assert_eq!(r["theta"]["upper"], 3);
    assert_eq!(r["theta"]["separation_degree"], 5);
    assert_eq!(r["theta"]["numerical"], true);
}

#[test]
fn gram_matrices_written_on_request() {
    let dir = std::env::temp_dir().join(format!("mtheta-gram-{}", std::process::id()));
    let out = mtheta(&["analyze", "wheel5", "--sos", "--gram-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("gram_0_1_2_3_4.csv")).unwrap();
    assert!(csv.starts_with(",1,"));
}

#[test]
fn analyze_text_format() {
    let out = mtheta(&["analyze", "MK4", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("levelness: 3"));
    assert!(text.contains("excluded minors: MK4"));
}

#[test]
fn file_inputs() {
    let json = temp_file("m.json", r#"{"n":4,"bases":[[0,1],[0,2],[0,3],[1,2],[1,3]]}"#);
    let r = json_of(&mtheta(&["analyze", json.to_str().unwrap()]));
    assert_eq!(r["input"]["kind"], "json");
    assert_eq!(r["matroid"]["bases"], serde_json::json!([[0, 1], [0, 2], [0, 3], [1, 2], [1, 3]]));

    // K4 as an edge list is MK4
    let edges = temp_file("k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let r = json_of(&mtheta(&["analyze", edges.to_str().unwrap()]));
    assert_eq!(r["input"]["kind"], "edge_list");
    assert_eq!(r["levelness"]["value"], 3);
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(mtheta(&["analyze", "no-such-matroid"]).status.code(), Some(2));
    let broken = temp_file("broken.json", r#"{"n":3,"bases":[[0],[0,1]]}"#);
    assert_eq!(mtheta(&["analyze", broken.to_str().unwrap()]).status.code(), Some(2));
    let exchange = temp_file("exchange.json", r#"{"n":4,"bases":[[0,1],[2,3]]}"#);
    assert_eq!(mtheta(&["analyze", exchange.to_str().unwrap()]).status.code(), Some(2));
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn enumerate_minimally_level() {
    let out = mtheta(&["enumerate", "--n", "6", "--minimally-level", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let found = lines(&out);
    assert_eq!(found.len(), 4);
    for l in &found {
        assert_eq!(l["levelness"], 3);
        assert_eq!(l["rank"], 3);
        assert_eq!(l["witness"]["level_values"], serde_json::json!([0, 1, 2]));
    }
    assert!(lines(&mtheta(&["enumerate", "--n", "5", "--minimally-level", "3"])).is_empty());
    assert!(lines(&mtheta(&["enumerate", "--n", "4", "--minimally-level", "2"])).is_empty());
    assert_eq!(lines(&mtheta(&["enumerate", "--n", "5"])).len(), 38);
}

#[test]
fn enumerate_size_limit_exits_3() {
    assert_eq!(mtheta(&["enumerate", "--n", "8"]).status.code(), Some(3));
}

#[test]
fn verify_suites_pass() {
    for suite in ["paper-props", "graphs-k-level", "psd", "ideals"] {
        let out = mtheta(&["verify", suite]);
        let table = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{suite}:\n{table}");
        assert!(!table.contains("FAIL"));
    }
    assert_ne!(mtheta(&["verify", "nonsense"]).status.code(), Some(0));
}

#[test]
fn thread_cap_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_mtheta"))
        .env("MATROID_THREADS", "1")
        .args(["analyze", "Q6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["levelness"]["value"], 3);
}
