use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adeshuffle"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn selftest_a2() {
    let out = run(&["selftest", "--type", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["pass"], true);
    let golden = &v["result"]["checks"][0];
    assert_eq!(golden["id"], "golden_a2_e21_e11");
    assert_eq!(golden["detail"]["residue"], "q*x^{-1}/(q - q^{-1})");
    assert_eq!(
        golden["detail"]["reversed_edge_factor"]["residue"],
        "-q*x^{-1}/(q - q^{-1})"
    );
}

#[test]
fn selftest_other_types() {
    for (t, o) in [("A3", "1>2,3>2"), ("D4", "1>2,3>2,4>2")] {
        let v = json(&run(&["selftest", "--type", t, "--orientation", o]));
        assert_eq!(v["pass"], true, "{t}");
    }
}

#[test]
fn minimal_pairs_a2() {
    let v = json(&run(&["minimal-pairs", "--type", "A2", "--orientation", "1>2"]));
    assert_eq!(v["result"]["count"], 1);
    assert_eq!(v["result"]["pairs"][0]["alpha"], serde_json::json!([1, 0]));
    assert_eq!(v["result"]["pairs"][0]["beta"], serde_json::json!([0, 1]));
    let v = json(&run(&[
        "minimal-pairs",
        "--type",
        "A3",
        "--orientation",
        "1>2,2>3",
        "--refinement",
        "lex",
    ]));
    assert_eq!(v["config"]["order"]["tie_break"], "height, then root index ascending");
}

#[test]
fn config_errors_exit_2() {
    for args in [
        vec!["minimal-pairs", "--type", "A2", "--orientation", "1>2,2>1"],
        vec!["minimal-pairs", "--type", "B2"],
        vec!["shuffle-mul", "--type", "A2", "--word", "3:0"],
        vec!["verify-fusion", "--type", "A2", "--degrees", "2..-2"],
        vec!["verify-fusion", "--type", "A2", "--pair", "5"],
        vec!["spec", "--type", "A2", "--element", "1:0", "--v", "1,0", "--w", "0,1"],
        vec!["paths", "area", "--lower", "1,1;1,-1", "--upper", "2,0"],
        vec!["roots"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_fusion_is_deterministic() {
    let args = [
        "verify-fusion",
        "--type",
        "A3",
        "--orientation",
        "1>2,3>2",
        "--window",
        "1",
        "--degrees",
        "-1..1",
    ];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_adeshuffle"))
        .args(args)
        .env("ADESHUFFLE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"]["pairs"].as_array().unwrap().len(), 4);
    assert_eq!(v["result"]["failures"], 0);
}

#[test]
fn verify_fusion_writes_report() {
    let dir = std::env::temp_dir().join(format!("adeshuffle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "verify-fusion",
        "--type",
        "A2",
        "--records",
        "all",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let records = v["result"]["records"].as_array().unwrap();
    assert_eq!(records.len(), v["result"]["elements"].as_u64().unwrap() as usize);
    assert!(records
        .iter()
        .all(|r| r["residue"].is_string() && r["spec"].is_string()));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn ar_quiver_formats() {
    let dot = run(&[
        "ar-quiver",
        "--type",
        "D4",
        "--orientation",
        "1>2,3>2,4>2",
        "--format",
        "dot",
    ]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("digraph ar {"));
    // three slices of three arrows, joined by three arrows between neighbours
    assert_eq!(text.matches("->").count(), 15);
    let v = json(&run(&["ar-quiver", "--type", "A2", "--orientation", "1>2"]));
    assert_eq!(v["result"]["arrows"].as_array().unwrap().len(), 2);
    assert_eq!(v["config"]["tau"], serde_json::json!([1, 0]));
}

#[test]
fn algebra_commands() {
    let v = json(&run(&[
        "shuffle-mul",
        "--type",
        "A2",
        "--orientation",
        "1>2",
        "--word",
        "1:0,2:0",
    ]));
    assert_eq!(v["result"]["numerator"], "z_{1,1} - q*z_{2,1}");
    let v = json(&run(&[
        "pairing",
        "--type",
        "A2",
        "--element",
        "2:0,1:0",
        "--word",
        "2:0,1:0",
    ]));
    assert_eq!(v["result"]["value"], "1");
    let v = json(&run(&[
        "spec",
        "--type",
        "A2",
        "--element",
        "2:0,1:0",
        "--v",
        "1,0",
        "--w",
        "0,1",
    ]));
    assert_eq!(v["result"]["spec"]["text"], "q*x^{-1}/(q - q^{-1})");
    assert_eq!(v["result"]["residue_equals_spec"], true);
    assert_eq!(v["result"]["routes_agree"], true);
    let v = json(&run(&["roots", "--type", "E6"]));
    assert_eq!(v["result"]["count"], 36);
}

#[test]
fn paths_commands() {
    let v = json(&run(&["paths", "enumerate", "--size", "2,0", "--bound", "2,0"]));
    assert_eq!(v["result"]["paths"], serde_json::json!(["2,0"]));
    let v = json(&run(&["paths", "convexify", "--legs", "1,1;1,0"]));
    assert_eq!(v["result"]["path"], "1,0;1,1");
    let v = json(&run(&["paths", "area", "--lower", "2,0", "--upper", "1,1;1,-1"]));
    assert_eq!(v["result"]["area"], "1");
}
