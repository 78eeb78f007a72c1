use std::process::Command;

use serde_json::Value;

fn hcyc(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hcyc")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn values(report: &Value, quantity: &str) -> Vec<String> {
    let rec = report["computations"].as_array().unwrap().iter().find(|c| c["quantity"] == quantity).unwrap();
    rec["values"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn catalog_listing() {
    let out = Command::new(env!("CARGO_BIN_EXE_hcyc")).args(["catalog", "list"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["h1", "sweedler", "u-heisenberg", "nc-torus-2"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
    let (code, json, _) = hcyc(&["catalog", "list", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(json.as_array().unwrap().iter().any(|e| e["name"] == "m2" && e["dimension"] == 4));
}

#[test]
fn empty_user_directory_lists_builtins_only() {
    let dir = std::env::temp_dir().join(format!("hcyc-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (_, all, _) = hcyc(&["catalog", "list", "--format", "json"]);
    let (code, with_dir, _) = hcyc(&["--catalog-dir", dir.to_str().unwrap(), "catalog", "list", "--format", "json"]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code, 0);
    assert_eq!(all, with_dir);
}

#[test]
fn involution_of_h1_passes() {
    let (code, json, _) = hcyc(&["verify", "h1", "--suite", "mpi", "--cutoff", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json["status"], "pass");
    assert_eq!(check(&json, "involution")["status"], "pass");
}

#[test]
fn sweedler_without_twist_fails_at_x() {
    let (code, json, _) = hcyc(&["verify", "sweedler", "--suite", "mpi", "--pair", "eps,1"]);
    assert_eq!(code, 1);
    assert_eq!(check(&json, "involution")["witness"], "x");
}

#[test]
fn torus_lambda_relations() {
    let (code, json, _) = hcyc(&["verify", "nc-torus-2", "--suite", "lambda", "--n-max", "3", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(json["arguments"]["seed"], "7");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(hcyc(&["verify", "no-such-algebra", "--suite", "hopf"]).0, 2);
    assert_eq!(hcyc(&["verify", "sweedler", "--suite", "nonsense"]).0, 2);
    assert_eq!(hcyc(&["verify", "sweedler", "--suite", "mpi", "--pair", "eps"]).0, 2);
}

#[test]
fn h1_cohomology_is_refused() {
    let (code, json, stderr) = hcyc(&["hc", "h1", "--pair", "delta,1"]);
    assert_eq!(code, 3);
    assert_eq!(json["status"], "unsupported");
    assert!(stderr.contains("infinite-dimensional weight component"), "{stderr}");
}

#[test]
fn abelian_cohomology_against_the_lie_oracle() {
    let (code, json, _) = hcyc(&["hc", "u-abelian-1", "--pair", "eps,1", "--max-degree", "4", "--oracle", "lie"]);
    assert_eq!(code, 0);
    let oracle: Vec<&Value> =
        json["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "pass").collect();
    assert!(oracle.len() >= 3);
    // H_*(k) of a line is 1, 1: every degree gets one class
    for rec in json["computations"].as_array().unwrap().iter().filter(|c| c["quantity"] == "HC" && c["stable"] == true) {
        assert_eq!(rec["values"][0], "1");
    }
}

#[test]
fn torus_has_a_trace() {
    let (code, json, _) = hcyc(&["hc", "nc-torus-2", "--algebra-mode", "--max-degree", "3"]);
    assert_eq!(code, 0);
    let hc: Vec<&Value> = json["computations"].as_array().unwrap().iter().filter(|c| c["quantity"] == "HC").collect();
    assert_eq!(hc.len(), 4);
    assert!(hc[0]["values"][0].as_str().unwrap().parse::<usize>().unwrap() >= 1);
}

#[test]
fn pairings() {
    let (code, json, _) = hcyc(&["pair", "nc-torus-2", "trace", "1"]);
    assert_eq!(code, 0);
    assert_eq!(values(&json, "pairing"), ["1"]);
    let (_, json, _) = hcyc(&["pair", "m2", "trace", "e f"]);
    assert_eq!(values(&json, "pairing"), ["1"]);
    let (code, json, _) = hcyc(&["pair", "nc-torus-2", "area-cocycle", "(1+U)/2"]);
    assert_eq!(code, 0);
    assert_eq!(values(&json, "pairing"), values(&json, "pairing through the Chern character"));
    assert_eq!(check(&json, "chern coherence")["status"], "pass");
    let (code, json, _) = hcyc(&["pair", "laurent-z2", "area-cocycle", "1"]);
    assert_eq!(code, 0, "{json}");
}

#[test]
fn non_idempotents_are_rejected_with_the_defect() {
    let (code, json, _) = hcyc(&["pair", "m2", "trace", "e"]);
    assert_eq!(code, 1);
    assert_eq!(check(&json, "not an idempotent")["witness"], "E^2 - E = -e");
}

#[test]
fn ribbon_and_square_suites() {
    let (code, json, _) = hcyc(&["verify", "sweedler", "--suite", "ribbon"]);
    assert_eq!(code, 0, "{json}");
    let (code, _, _) = hcyc(&["verify", "sweedler", "--suite", "square", "--roots", "g,eps"]);
    assert_eq!(code, 0);
    let (code, json, _) = hcyc(&["verify", "sweedler", "--suite", "square", "--roots", "1,eps"]);
    assert_eq!(code, 1);
    assert_eq!(check(&json, "involution")["status"], "fail");
    assert_eq!(hcyc(&["verify", "taft-3", "--suite", "square"]).0, 3);
    assert_eq!(hcyc(&["verify", "m2", "--suite", "ribbon"]).0, 3);
}

#[test]
fn definition_files_are_accepted() {
    let path = std::env::temp_dir().join(format!("hcyc-z2-{}.json", std::process::id()));
    let export = Command::new(env!("CARGO_BIN_EXE_hcyc")).args(["catalog", "export", "group-z2"]).output().unwrap();
    std::fs::write(&path, &export.stdout).unwrap();
    let (code, json, _) = hcyc(&["verify", path.to_str().unwrap(), "--suite", "hopf"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0, "{json}");
}

#[test]
fn timing_is_opt_in() {
    let (_, plain, _) = hcyc(&["verify", "sweedler", "--suite", "hopf"]);
    assert!(plain.get("duration_ms").is_none());
    let (_, timed, _) = hcyc(&["--timing", "verify", "sweedler", "--suite", "hopf"]);
    assert!(timed["duration_ms"].is_u64());
    assert_eq!(plain["input_sha256"], timed["input_sha256"]);
}
