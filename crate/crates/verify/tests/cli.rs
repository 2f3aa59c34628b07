use std::process::{Command, Output};

fn dlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dlat"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn last_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text.lines().rev().find(|l| l.starts_with('{')).expect("a JSON line");
    serde_json::from_str(line).unwrap()
}

fn verify_euler(args: &[&str]) -> (i32, String) {
    let out = dlat(&[&["verify"], args].concat());
    let json = last_json(&out);
    assert_eq!(json["computed"], json["formula"]);
    (out.status.code().unwrap(), json["computed"]["euler"].as_str().unwrap().to_string())
}

#[test]
fn identities_report_euler_characteristics() {
    assert_eq!(verify_euler(&["opd-gl", "q=2", "n=3"]), (0, "-64".into()));
    assert_eq!(verify_euler(&["hyperforest", "n=4"]), (0, "-2".into()));
    assert_eq!(verify_euler(&["solomon", "q=2", "n=3"]), (0, "-8".into()));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dlat(&["suite", "--scope", "bogus"]).status.code(), Some(2));
    assert_eq!(dlat(&["verify", "no-such-identity"]).status.code(), Some(2));
    assert_eq!(dlat(&["verify", "opd-gl", "q=6"]).status.code(), Some(2));
    assert_eq!(dlat(&["build", "torus:n=3"]).status.code(), Some(2));
    assert_eq!(
        dlat(&["compute", "--spec", "boolean:n=2", "--object", "nothing", "--stat", "euler"]).status.code(),
        Some(2)
    );
}

#[test]
fn registry_lists_every_identity() {
    let out = dlat(&["verify", "--list"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), dlat_verify::REGISTRY.len());
    assert!(text.lines().any(|l| l.starts_with("unitary-d-euler")));
}

#[test]
fn dot_export_of_a_square() {
    let out = dlat(&["export", "--spec", "boolean:n=2", "--object", "base", "--format", "dot"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), 4);
    for node in ["\"{}\"", "\"{1}\"", "\"{2}\"", "\"{1,2}\""] {
        assert!(text.contains(node), "missing {node}");
    }
}

#[test]
fn partial_decompositions_as_json() {
    let out = dlat(&["export", "--spec", "subspace:q=2,n=2", "--object", "PD"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // empty set, three lines, three pairs of lines, and the whole space
    assert_eq!(json["elements"].as_array().unwrap().len(), 8);
}

#[test]
fn homology_export() {
    let out = dlat(&[
        "export", "--spec", "boolean:n=2", "--object", "OPD", "--homology", "--proper",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["betti"], serde_json::json!({ "1": 1 }));
    assert_eq!(json["euler"], -1);
    let dot = dlat(&[
        "export", "--spec", "boolean:n=2", "--object", "OPD", "--homology", "--format", "dot",
    ]);
    assert_eq!(dot.status.code(), Some(2));
}

#[test]
fn compute_reports_reduced_euler() {
    let out = dlat(&["compute", "--spec", "subspace:q=2,n=2", "--object", "PD", "--stat", "euler", "--proper"]);
    assert!(out.status.success());
    let json = last_json(&out);
    assert_eq!(json["size"], 6);
    assert_eq!(json["euler"], -1);
}

#[test]
fn check_properties() {
    let out = dlat(&["check", "--spec", "uniform:n=4,k=3", "--property", "CM"]);
    assert!(out.status.success());
    assert_eq!(last_json(&out)["holds"], false);
    let out = dlat(&["check", "--spec", "boolean:n=3", "--property", "UNIQUE"]);
    assert_eq!(last_json(&out)["holds"], true);
}

#[test]
fn built_structures_round_trip_through_json() {
    let dir = std::env::temp_dir().join(format!("dlat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pi4.json");
    let out = dlat(&["build", "partition:n=4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(last_json(&out)["elements"], 15);
    let again = dlat(&["build", &format!("json:{}", path.display())]);
    assert!(again.status.success(), "{}", String::from_utf8_lossy(&again.stderr));
    let json = last_json(&again);
    assert_eq!(json["elements"], 15);
    assert_eq!(json["rank"], 3);
    assert_eq!(json["atoms"], 6);
    std::fs::remove_dir_all(&dir).unwrap();
}
