//! End-to-end behavior of the `toricdyn` binary: formats, exit codes,
//! machine-readable errors, and seeded determinism.

use std::path::Path;
use std::process::{Command, Output};

fn toricdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricdyn"))
        .args(args)
        .output()
        .expect("spawn toricdyn")
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr_json(o: &Output) -> serde_json::Value {
    serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).expect("stderr is JSON")
}

#[test]
fn degrees_of_fibonacci_matrix() {
    let dir = std::env::temp_dir().join("toricdyn_test_degrees");
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("fib.json");
    write(&m, "[[1,1],[1,0]]");
    let out = toricdyn(&["degrees", "--matrix", m.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let lambda1 = json["lambdas"][1].as_f64().unwrap();
    assert!((lambda1 - 1.6180339887).abs() < 1e-9, "{lambda1}");
    // integers in pullback matrices are decimal strings
    assert!(json["pullback_matrices"][1]["entries"][0][0].is_string());
}

#[test]
fn cremona_table_output() {
    let out = toricdyn(&["cremona", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 3 3 1");
    let out = toricdyn(&["cremona", "--n", "2", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["degrees"], serde_json::json!(["1", "2", "1"]));
}

#[test]
fn pullback_identity_both_methods() {
    let dir = std::env::temp_dir().join("toricdyn_test_pullback");
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("id.json");
    write(&m, "[[1,0],[0,1]]");
    let out = toricdyn(&[
        "pullback",
        "--matrix",
        m.to_str().unwrap(),
        "--k",
        "1",
        "--method",
        "both",
        "--format",
        "table",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1 0\n0 1");
}

#[test]
fn singular_matrix_is_an_input_error() {
    let dir = std::env::temp_dir().join("toricdyn_test_singular");
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("sing.json");
    write(&m, "[[1,1],[1,1]]");
    let out = toricdyn(&["degrees", "--matrix", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["kind"], "SINGULAR");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = toricdyn(&["degrees", "--matrix", "/nonexistent/m.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["kind"], "INPUT");
}

#[test]
fn plain_text_matrix_format_accepted() {
    let dir = std::env::temp_dir().join("toricdyn_test_text");
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("m.txt");
    write(&m, "2\n2 0\n0 3\n");
    let out = toricdyn(&["degrees", "--matrix", m.to_str().unwrap(), "--format", "table"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("entropy"));
}

#[test]
fn fan_emit_and_validate_round_trip() {
    let dir = std::env::temp_dir().join("toricdyn_test_fan");
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("p1n2.json");
    let out = toricdyn(&[
        "fan",
        "emit",
        "--kind",
        "p1n",
        "--n",
        "2",
        "--out",
        f.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = toricdyn(&["fan", "validate", f.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["ok"], true);
    assert_eq!(json["complete"], true);
    assert_eq!(json["cones"], 9);
}

#[test]
fn overlapping_fan_fails_validation() {
    let dir = std::env::temp_dir().join("toricdyn_test_badfan");
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.json");
    // two 2-d cones overlapping in a 2-d region
    write(
        &f,
        r#"{"rank":2,"cones":[{"generators":[[1,0],[0,1]]},{"generators":[[1,1],[-1,1]]}]}"#,
    );
    let out = toricdyn(&["fan", "validate", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["kind"], "FAN_INVALID");
}

#[test]
fn weight_verify_and_cup() {
    let dir = std::env::temp_dir().join("toricdyn_test_weight");
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("p1n2.json");
    toricdyn(&["fan", "emit", "--kind", "p1n", "--n", "2", "--out", f.to_str().unwrap()]);
    // c_{1}: weight 1 on the ±e1 rays, 0 on the ±e2 rays (codim 1)
    let w1 = dir.join("c1.json");
    write(
        &w1,
        r#"{"codim":1,"values":[{"cone":[[1,0]],"value":"1"},{"cone":[[-1,0]],"value":"1"},{"cone":[[0,1]],"value":"0"},{"cone":[[0,-1]],"value":"0"}]}"#,
    );
    let out = toricdyn(&["weight", "verify", "--fan", f.to_str().unwrap(), "--weight", w1.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // the complementary weight c_{2}
    let w2 = dir.join("c2.json");
    write(
        &w2,
        r#"{"codim":1,"values":[{"cone":[[1,0]],"value":"0"},{"cone":[[-1,0]],"value":"0"},{"cone":[[0,1]],"value":"1"},{"cone":[[0,-1]],"value":"1"}]}"#,
    );
    let out = toricdyn(&[
        "weight", "cup", "--fan", f.to_str().unwrap(),
        "--w1", w1.to_str().unwrap(), "--w2", w2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["value"], "1");

    // an unbalanced weight is an invariant failure
    let bad = dir.join("bad.json");
    write(
        &bad,
        r#"{"codim":1,"values":[{"cone":[[1,0]],"value":"1"},{"cone":[[-1,0]],"value":"0"},{"cone":[[0,1]],"value":"0"},{"cone":[[0,-1]],"value":"0"}]}"#,
    );
    let out = toricdyn(&["weight", "verify", "--fan", f.to_str().unwrap(), "--weight", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_json(&out)["kind"], "UNBALANCED_WEIGHT");
}

#[test]
fn weight_pullback_diag_2_3() {
    let dir = std::env::temp_dir().join("toricdyn_test_wpull");
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("p1n2.json");
    toricdyn(&["fan", "emit", "--kind", "p1n", "--n", "2", "--out", f.to_str().unwrap()]);
    let m = dir.join("d23.json");
    write(&m, "[[2,0],[0,3]]");
    let w = dir.join("c1.json");
    write(
        &w,
        r#"{"codim":1,"values":[{"cone":[[1,0]],"value":"1"},{"cone":[[-1,0]],"value":"1"},{"cone":[[0,1]],"value":"0"},{"cone":[[0,-1]],"value":"0"}]}"#,
    );
    let out = toricdyn(&[
        "weight", "pullback",
        "--matrix", m.to_str().unwrap(),
        "--fan", f.to_str().unwrap(),
        "--weight", w.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // index [Z^2 : psi Z^2 + Z e1] = 3 on the ±e1 rays, 0 elsewhere
    let mut threes = 0;
    let mut zeros = 0;
    for entry in json["values"].as_array().unwrap() {
        match entry["value"].as_str().unwrap() {
            "3" => threes += 1,
            "0" => zeros += 1,
            other => panic!("unexpected value {other}"),
        }
    }
    assert_eq!((threes, zeros), (2, 2));
}

#[test]
fn growth_with_svg_plot() {
    let dir = std::env::temp_dir().join("toricdyn_test_growth");
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("d23.json");
    write(&m, "[[2,0],[0,3]]");
    let plot = dir.join("plot.svg");
    let out = toricdyn(&[
        "growth",
        "--matrix", m.to_str().unwrap(),
        "--k", "1",
        "--lmax", "5",
        "--plot", plot.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        json["degrees"],
        serde_json::json!(["3", "9", "27", "81", "243"])
    );
    let svg = std::fs::read_to_string(&plot).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn batch_deterministic_and_passing() {
    let args = [
        "batch", "--count", "4", "--n", "2", "--bound", "3", "--seed", "11", "--check", "oracle-equivalence",
    ];
    let a = toricdyn(&args);
    let b = toricdyn(&args);
    assert!(a.status.success());
    // byte-identical reports for the same seed and inputs
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(json["passed"], 4);
    assert_eq!(json["failed"], 0);
    assert_eq!(json["first_failure"], serde_json::Value::Null);
}

#[test]
fn degrees_deterministic_output() {
    let dir = std::env::temp_dir().join("toricdyn_test_det");
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("m.json");
    write(&m, "[[2,1],[1,1]]");
    let a = toricdyn(&["degrees", "--matrix", m.to_str().unwrap()]);
    let b = toricdyn(&["degrees", "--matrix", m.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_cap_env_is_respected() {
    let out = Command::new(env!("CARGO_BIN_EXE_toricdyn"))
        .env("TORICDYN_THREADS", "1")
        .args(["cremona", "--n", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 2 1");
}

#[test]
fn k_out_of_range_is_input_error() {
    let dir = std::env::temp_dir().join("toricdyn_test_krange");
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("m.json");
    write(&m, "[[1,0],[0,1]]");
    let out = toricdyn(&["pullback", "--matrix", m.to_str().unwrap(), "--k", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["kind"], "K_OUT_OF_RANGE");
}
