use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn chss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chss"))
        .args(args)
        .env_remove("CHSS_SEED")
        .env_remove("CHSS_TRIALS")
        .env_remove("CHSS_CAP")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = chss(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn validate(schema: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn decompose_json_matches_schema() {
    let doc = json(&["decompose", "sym", "3", "wedge", "3", "gl", "7"]);
    validate("decompose.schema.json", &doc);
    assert_eq!(doc["dim"], "7770");
    let doc = json(&["decompose", "sym", "1", "wedge", "1", "gl", "2"]);
    assert_eq!(doc["summands"].as_array().unwrap().len(), 1);
    assert_eq!(doc["summands"][0]["partition"], serde_json::json!([[1]]));
}

#[test]
fn spinor_square() {
    let doc = json(&["decompose", "ext", "2", "spinor", "d6"]);
    assert_eq!(doc["dim"], "496");
    let dims: Vec<&str> = doc["summands"].as_array().unwrap().iter().map(|r| r["dim"].as_str().unwrap()).collect();
    assert_eq!(dims, ["1", "495"]);
}

#[test]
fn secant_json_matches_schema() {
    let doc = json(&["secant-ideal", "PAxG26", "--check"]);
    validate("secant-ideal.schema.json", &doc);
    assert_eq!(doc["cases"][0]["grading"]["value"], "-1/3");
    let doc = json(&["secant-ideal", "PAxG2n", "--n", "6"]);
    assert_eq!(doc["cases"][0]["case"], "RV6");
    let notes = doc["cases"][0]["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("already in the ideal")));
}

#[test]
fn verify_json_matches_schema() {
    for suite in ["pfaffian", "ks-identity", "segre-blocks", "coordring-oracle"] {
        let doc = json(&["verify", suite, "--trials", "5"]);
        validate("verify.schema.json", &doc);
        assert_eq!(doc["passed"], true, "{suite}");
    }
    let doc = json(&["verify", "segre-blocks", "--dims", "2", "2"]);
    assert_eq!(doc["data"]["total_dim"], 20);
}

#[test]
fn identical_manifests_give_identical_bytes() {
    let args = ["verify", "vanish-g37", "--trials", "10", "--seed", "3", "--json"];
    assert_eq!(chss(&args).stdout, chss(&args).stdout);
    let args = ["secant-ideal", "G37"];
    assert_eq!(chss(&args).stdout, chss(&args).stdout);
    // different seeds are recorded
    let a = json(&["verify", "vanish-g37", "--trials", "3", "--seed", "1"]);
    let b = json(&["verify", "vanish-g37", "--trials", "3", "--seed", "2"]);
    assert_ne!(a["manifest"], b["manifest"]);
}

#[test]
fn environment_fallbacks() {
    let out = Command::new(env!("CARGO_BIN_EXE_chss"))
        .args(["verify", "pfaffian", "--json"])
        .env("CHSS_SEED", "99")
        .env("CHSS_TRIALS", "4")
        .env("CHSS_CAP", "5000")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["manifest"]["seed"], 99);
    assert_eq!(doc["manifest"]["trials"], 4);
    assert_eq!(doc["manifest"]["cap"], 5000);
    assert!(doc["manifest"].get("wall_time_ms").is_none());
    let timed = json(&["verify", "pfaffian", "--timing"]);
    assert!(timed["manifest"]["wall_time_ms"].is_u64());
}

#[test]
fn failures_exit_nonzero() {
    let out = chss(&["decompose", "sym", "3", "wedgie", "3", "gl", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("argument 3"));
    let out = chss(&["secant-ideal", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("G37"));
    assert!(!chss(&["verify", "nonsense"]).status.success());
    let out = chss(&["decompose", "sym", "4", "wedge", "3", "e6", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--cap"));
}

#[test]
fn case_file_replaces_catalog() {
    let dir = std::env::temp_dir().join(format!("chss-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let builtin: Value = serde_json::from_str(include_str!("../../core/data/cases.json")).unwrap();
    let mut small = builtin.clone();
    small["version"] = "test".into();
    small["cases"] = Value::Array(vec![builtin["cases"][0].clone()]);
    let path = dir.join("cases.json");
    std::fs::write(&path, serde_json::to_string(&small).unwrap()).unwrap();
    let doc = json(&["secant-ideal", "all", "--case-file", path.to_str().unwrap()]);
    assert_eq!(doc["manifest"]["catalog_version"], "test");
    assert_eq!(doc["cases"].as_array().unwrap().len(), 1);
    std::fs::remove_dir_all(dir).ok();
}
