use std::process::Command;

fn torifan(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_torifan")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, out, err) = torifan(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn degree_of_x3_0() {
    let (code, out, _) = torifan(&["degree", "catalog:X3_0", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"anticanonical_degree":52}"#);
}

#[test]
fn weakened_product() {
    let v = json(&["is-weakened-fano", "catalog:P1xF2", "--json"]);
    assert_eq!(v["is_weakened"], true);
    assert_eq!(v["crepant_contractions"][0]["kind"]["kind"], "zero_two");
}

#[test]
fn predicates_report_false_with_exit_zero() {
    assert_eq!(json(&["is-fano", "catalog:X4_0", "--json"])["is_fano"], false);
    assert_eq!(json(&["is-weak-fano", "catalog:X4_0", "--json"])["is_weak_fano"], true);
    // surfaces are outside the 3-fold predicate: an error, not `false`
    let (code, out, _) = torifan(&["is-weakened-fano", "catalog:P2", "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "error");
}

#[test]
fn validate_reports_missing_cone() {
    let dir = std::env::temp_dir().join(format!("torifan-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("holed.json");
    std::fs::write(
        &path,
        r#"{"dim":2,"rays":[[1,0],[0,1],[-1,0],[0,-1]],"max_cones":[[0,1],[1,2],[2,3]]}"#,
    )
    .unwrap();
    let (code, out, _) = torifan(&["validate", path.to_str().unwrap(), "--json"]);
    assert_ne!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["is_complete"], false);
    let (_, _, err) = torifan(&["validate", path.to_str().unwrap()]);
    assert!(err.contains("not complete"), "{err}");

    let good = dir.join("p1xp1.json");
    let (_, dumped, _) = torifan(&["catalog", "P1xP1", "--json"]);
    std::fs::write(&good, &dumped).unwrap();
    assert_eq!(json(&["validate", good.to_str().unwrap(), "--json"])["is_complete"], true);
    let iso = json(&["isomorphic", good.to_str().unwrap(), "catalog:P1xP1", "--json"]);
    assert_eq!(iso["isomorphic"], true);
}

#[test]
fn malformed_input_is_an_error() {
    let dir = std::env::temp_dir().join(format!("torifan-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\"dim\": 2, \"rays\": [[1,0]]").unwrap();
    let (code, _, err) = torifan(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    let (code, _, err) = torifan(&["degree", "catalog:X9_9"]);
    assert_eq!(code, 1);
    assert!(err.contains("X9_9"));
}

#[test]
fn isomorphism_witness() {
    let v = json(&["isomorphic", "catalog:F1", "catalog:F2", "--json"]);
    assert_eq!(v["isomorphic"], false);
    assert!(v["matrix"].is_null());
}

#[test]
fn analyze_lists_relations() {
    let v = json(&["analyze", "catalog:F2", "--json"]);
    let rels = v["relations"].as_array().unwrap();
    assert_eq!(rels.len(), 2);
    assert!(rels.iter().any(|r| r["degree"] == 0 && r["coeffs"]["0"] == 2));
}

#[test]
fn catalog_listing_and_stability() {
    let list = json(&["catalog", "--list", "--json"]);
    assert_eq!(list.as_array().unwrap().len(), 31);
    let (_, a, _) = torifan(&["classify-surfaces", "--json"]);
    let (_, b, _) = torifan(&["classify-surfaces", "--json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["count"], 16);
}

#[test]
fn twist_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_torifan"))
        .args(["classify-3folds", "--json"])
        .env("TORIFAN_TWIST_BOUND", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("below the minimum"));
}
