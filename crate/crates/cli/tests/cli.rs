use std::process::{Command, Output};

fn spturan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spturan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = spturan(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn build_and_rho() {
    let o = spturan(&["build", "snk:13,2"]);
    assert_eq!(o.status.code(), Some(0));
    let g6 = stdout(&o).trim().to_string();
    let v = json(&["rho", &g6, "snk:13,2"]);
    let closed = (1.0 + 89f64.sqrt()) / 2.0;
    for row in v.as_array().unwrap() {
        assert!((row["rho"].as_f64().unwrap() - closed).abs() < 1e-9);
    }
    assert!((v[1]["exact"].as_f64().unwrap() - closed).abs() < 1e-12);
    assert!(v[0]["exact"].is_null());
}

#[test]
fn free_reports_witnesses() {
    let v = json(&["free", "fan:5", "cycle:5", "snkt:14,2,2"]);
    assert_eq!(v[0]["free"], false);
    assert_eq!(v[0]["witness"].as_array().unwrap().len(), 5);
    assert_eq!(v[1]["free"], true);
    assert_eq!(v[2]["free"], true);
    let v = json(&["free", "--pattern", "cycle:4", "kbip:2,3"]);
    assert_eq!(v[0]["free"], false);
}

#[test]
fn enumeration_counts_and_lines() {
    assert_eq!(stdout(&spturan(&["enum", "3"])).lines().count(), 3);
    assert_eq!(stdout(&spturan(&["enum", "7", "--count", "--pattern", "none"])).trim(), "79");
    assert_eq!(stdout(&spturan(&["enum", "4", "--all", "--pattern", "none", "--count"])).trim(), "11");
    let o = spturan(&["enum", "17", "--count"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
}

#[test]
fn certification_exit_codes() {
    let o = spturan(&["certify", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: pass"));
    // a margin wider than the true gap makes the ranking indistinguishable
    let o = spturan(&["--margin", "1.0", "certify", "11"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("indistinguishable"));
    assert_eq!(spturan(&["certify", "24", "--mode", "pool"]).status.code(), Some(1));
    assert_eq!(spturan(&["certify", "12"]).status.code(), Some(0));
}

#[test]
fn pool_certification_json() {
    let v = json(&["certify", "23", "--mode", "pool", "--restarts", "4"]);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["label"], "pool evidence, not proof");
    assert_eq!(v["records"][1]["verdict"], "pass");
    assert_eq!(v["records"][0]["method"], "construction-pool");
}

#[test]
fn lemma22_ranges_and_parity() {
    let v = json(&["check-lemma22", "23..41"]);
    assert_eq!(v.as_array().unwrap().len(), 10);
    assert!(v.as_array().unwrap().iter().all(|r| r["dominance"].as_array().unwrap().len() == 4));
    assert_eq!(spturan(&["check-lemma22", "22"]).status.code(), Some(1));
    assert_eq!(spturan(&["check-lemma22", "22", "--probe"]).status.code(), Some(0));
    assert_eq!(spturan(&["check-lemma22", "23", "--t", "3"]).status.code(), Some(1));
}

#[test]
fn identity_check_rows() {
    let v = json(&["identity-check", "snk:7,2", "complete:4"]);
    for row in v.as_array().unwrap() {
        assert!(row["max_residual"].as_f64().unwrap() < 1e-8);
    }
    assert_eq!(v[1]["components"], serde_json::json!(["Triangle"]));
}

#[test]
fn search_store_and_query() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("r.jsonl");
    let store = store.to_str().unwrap();
    let args = ["--seed", "5", "search", "23", "--restarts", "4", "--exclude-book", "--store", store];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a["restarts"], b["restarts"]);
    assert_eq!(a["best"]["rank"], 2);
    let g6 = a["best"]["graph6"].as_str().unwrap().to_string();

    let scan = spturan(&["scan", "9", "--store", store]);
    assert_eq!(scan.status.code(), Some(0));

    let rows = json(&["query", "--store", store, "--method", "local-search"]);
    assert_eq!(rows.as_array().unwrap().len(), 1);
    assert_eq!(rows[0]["graph6"], g6.as_str());
    let rows = json(&["query", "--store", store, "--m-min", "9", "--m-max", "9"]);
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert_eq!(spturan(&["query", "--store", store, "--verdict", "maybe"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(spturan(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(spturan(&["rho", "not a graph!"]).status.code(), Some(1));
    assert_eq!(spturan(&["build", "snk:1,5"]).status.code(), Some(1));
    assert_eq!(spturan(&["--help"]).status.code(), Some(0));
}
