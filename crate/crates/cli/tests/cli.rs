use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycleshuffle")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn spectrum_json_follows_report_schema() {
    let v = json(&["spectrum", "--n", "4", "--weights", "1,1,1,1", "--minpoly", "--certificate"]);
    assert_eq!(v["n"], 4);
    assert_eq!(v["weights"], serde_json::json!(["1/1", "1/1", "1/1", "1/1"]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["set"], serde_json::json!([1, 3]));
    assert_eq!(rows[4]["m"], serde_json::json!([0, 1, 0, 1]));
    assert_eq!(rows[4]["eigenvalue"], "2/1");
    let agg: Vec<(String, String)> = v["aggregate"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (a["eigenvalue"].as_str().unwrap().into(), a["multiplicity"].as_str().unwrap().into()))
        .collect();
    let want = [("10/1", "1"), ("6/1", "3"), ("4/1", "14"), ("2/1", "6")];
    assert_eq!(agg, want.map(|(a, b)| (a.to_string(), b.to_string())));
    // (x-10)(x-6)(x-4)^2(x-2), constant term first
    assert_eq!(v["minimal_polynomial"][0], "-1920/1");
    assert_eq!(v["diagonalizability"], "inconclusive");
}

#[test]
fn named_weights_match_explicit_ones() {
    let named = json(&["spectrum", "--n", "3", "--r2b"]);
    let explicit = json(&["spectrum", "--n", "3", "--weights", "1/9,1/6,1/3"]);
    assert_eq!(named["aggregate"], explicit["aggregate"]);
    let t2r = json(&["spectrum", "--n", "5", "--t2r"]);
    let mut values: Vec<&str> = t2r["aggregate"].as_array().unwrap().iter().map(|a| a["eigenvalue"].as_str().unwrap()).collect();
    values.sort();
    assert_eq!(values, ["0/1", "1/1", "2/1", "3/1", "5/1"]);
}

#[test]
fn filtration_text_and_csv() {
    let out = run(&["filtration", "--n", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("dim F_i"));
    assert_eq!(text.lines().count(), 6);
    let out = run(&["--format", "csv", "filtration", "--n", "3"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().last().unwrap(), r#"3,"{2}","{}",6,3"#);
}

#[test]
fn counting_agrees_with_formula() {
    let formula = json(&["--format", "json", "filtration", "--n", "5"]);
    let counted = json(&["--format", "json", "filtration", "--n", "5", "--by-counting"]);
    assert_eq!(formula["rows"], counted["rows"]);
}

#[test]
fn matrix_csv_has_lex_header() {
    let out = run(&["matrix", "--n", "3", "--t", "1"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next().unwrap(), r#""1,2,3","1,3,2","2,1,3","2,3,1","3,1,2","3,2,1""#);
    assert_eq!(csv.lines().count(), 7);
}

#[test]
fn a_basis_matrix_is_triangular_in_qindex_order() {
    let v = json(&["--format", "json", "matrix", "--n", "3", "--t", "2", "--basis", "a", "--order", "qindex"]);
    let rows = v["rows"].as_array().unwrap();
    for (i, row) in rows.iter().enumerate() {
        for (j, entry) in row.as_array().unwrap().iter().enumerate() {
            if i > j {
                assert_eq!(entry, "0/1", "entry ({i},{j})");
            }
        }
    }
}

#[test]
fn verify_reports_and_exits_cleanly() {
    let out = run(&["verify", "--n", "4", "--suite", "all"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    let v = json(&["--format", "json", "verify", "--n", "3", "--suite", "duality"]);
    assert_eq!(v["passed"], true);
    assert!(v["suites"].as_array().unwrap().iter().all(|s| s["passed"] == true));
}

#[test]
fn simulation_json_is_reproducible() {
    let args = ["simulate", "--n", "5", "--trials", "2000", "--seed", "11"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a, b);
    assert_eq!(a["exact"], "386080/32571");
    assert_eq!(a["rng"], "chacha8/seed_from_u64/stream=trial");
    let total: u64 = a["histogram"].as_array().unwrap().iter().map(|h| h["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 2000);
    let fast = json(&["simulate", "--n", "5", "--trials", "2000", "--seed", "11", "--fast"]);
    assert_eq!(fast["exact"], a["exact"]);
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("cycleshuffle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.json");
    let out = run(&["--out", path.to_str().unwrap(), "spectrum", "--n", "3", "--unweighted"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["n"], 3);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bad_input_exits_with_usage_code() {
    for args in [
        &["spectrum", "--n", "3", "--weights", "1,x"][..],
        &["spectrum", "--n", "3", "--weights", "1,2"],
        &["matrix", "--n", "9", "--t", "1"],
        &["simulate", "--n", "4", "--trials", "10", "--dist", "0,1/2,1/2,0"],
        &["no-such-command"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn cap_can_be_lowered_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cycleshuffle"))
        .args(["matrix", "--n", "4", "--t", "1"])
        .env("CYCLESHUFFLE_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
