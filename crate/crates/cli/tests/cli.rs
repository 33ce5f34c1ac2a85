use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const S3: &str = r#"{"name": "S3", "generators": [
    {"kind": "perm", "images": [1, 0, 2]},
    {"kind": "perm", "images": [1, 2, 0]}]}"#;

const SL23: &str = r#"{"name": "SL(2,3)", "generators": [
    {"kind": "mat", "p": 3, "rows": [[1, 1], [0, 1]]},
    {"kind": "mat", "p": 3, "rows": [[1, 0], [1, 1]]}]}"#;

const C4: &str = r#"{"name": "C4", "generators": [{"kind": "perm", "images": [1, 2, 3, 0]}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jordan-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn closure_reports_order_and_digest() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "s3.json", S3);
    let v = json(&run(&["closure", s(&g)]));
    assert_eq!(v["order"], 6);
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
    // Same group, generators listed the other way round.
    let swapped = S3.replace("[1, 0, 2]", "TMP").replace("[1, 2, 0]", "[1, 0, 2]").replace("TMP", "[1, 2, 0]");
    let h = write(&dir, "s3b.json", &swapped);
    assert_eq!(json(&run(&["closure", s(&h)]))["digest"], v["digest"]);
    let with = json(&run(&["closure", s(&g), "--elements"]));
    assert_eq!(with["elements"].as_array().unwrap().len(), 6);
}

#[test]
fn cap_is_enforced() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "sl.json", SL23);
    let out = run(&["closure", s(&g), "--cap", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn analyze_sl23_at_three() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "sl.json", SL23);
    let v = json(&run(&["analyze", s(&g), "--p", "3"]));
    assert_eq!(v["oracle"]["min_index"], 12);
    assert_eq!(v["sylow"]["order"], 3);
    assert_eq!(v["chermak_delgado"]["order"], 2);
}

#[test]
fn constants_report() {
    let dir = TempDir::new().unwrap();
    let prof = write(
        &dir,
        "profile.json",
        r#"{"c_G": 2, "r_G": 1, "n": 3, "kp_order": 2, "ell_X": 2}"#,
    );
    let v = json(&run(&["constants", s(&prof), "--jn", "60", "--jpn", "10"]));
    // Big constants are exact decimal strings.
    assert_eq!(v["J_G"], "7200");
    assert_eq!(v["e_G"], 12);
    // 2 · 10² · 2¹²
    assert_eq!(v["Jp_G"], "819200");
    assert_eq!(v["J_X"], "7200");
    assert_eq!(v["e_X"], 12);
    let bad = write(&dir, "bad.json", r#"{"c_G": 0, "r_G": 0, "n": 1, "kp_order": 1}"#);
    assert_eq!(run(&["constants", s(&bad), "--jn", "1", "--jpn", "1"]).status.code(), Some(1));
}

#[test]
fn witness_subcommands() {
    let dir = TempDir::new().unwrap();
    let s3 = write(&dir, "s3.json", S3);
    let c4 = write(&dir, "c4.json", C4);
    let sl = write(&dir, "sl.json", SL23);

    let v = json(&run(&["witness", "product", "--left", s(&s3), "--right", s(&c4), "--p", "2"]));
    assert_eq!(v["construction"], "product");
    assert_eq!(v["checks"]["chain_identity"], true);

    let v = json(&run(&["witness", "product", "--left", s(&s3), "--right", s(&s3), "--gamma", "random", "--seed", "7"]));
    assert_eq!(v["bound_satisfied"], true);

    let v = json(&run(&["witness", "quotient", s(&sl), "--kernel", "center", "--p", "3", "--route", "general"]));
    assert_eq!(v["construction"], "quotient-general");
    assert_eq!(v["order"], 12);

    let a3 = r#"[{"kind": "perm", "images": [1, 2, 0]}]"#;
    let v = json(&run(&["witness", "sz", s(&s3), "--kernel", a3]));
    assert_eq!(v["complement_order"], 2);
    assert_eq!(v["meets_kernel_trivially"], true);
    let v = json(&run(&["witness", "sz", s(&s3), "--kernel", a3, "--method", "search"]));
    assert_eq!(v["complement_order"], 2);

    let v = json(&run(&["witness", "conj-intersect", s(&s3), "--inner", a3]));
    assert_eq!(v["construction"], "conjugate-intersection");
    assert_eq!(v["index"], 2);
}

#[test]
fn falsified_bound_exits_two() {
    let dir = TempDir::new().unwrap();
    let s3 = write(&dir, "s3.json", S3);
    let a3 = r#"[{"kind": "perm", "images": [1, 2, 0]}]"#;
    let args = ["witness", "quotient", s(&s3), "--kernel", a3, "--p", "3", "--route", "pprime"];
    let ok = run(&args);
    assert_eq!(ok.status.code(), Some(0));
    let mut forced = args.to_vec();
    forced.extend(["--base-bound", "0"]);
    let out = run(&forced);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound_satisfied"], false);
}

#[test]
fn operational_errors_exit_one() {
    assert_eq!(run(&["closure", "/nonexistent/group.json"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.json", "{not json");
    assert_eq!(run(&["analyze", s(&junk)]).status.code(), Some(1));
    let s3 = write(&dir, "s3.json", S3);
    assert_eq!(run(&["analyze", s(&s3), "--p", "4"]).status.code(), Some(1));
}

#[test]
fn survey_formats_and_jobs() {
    let dir = TempDir::new().unwrap();
    let one = dir.path().join("one.jsonl");
    let eight = dir.path().join("eight.jsonl");
    let csv = dir.path().join("all.csv");
    assert!(run(&["survey", "--jobs", "1", "--out", s(&one)]).status.success());
    assert!(run(&["survey", "--jobs", "8", "--out", s(&eight)]).status.success());
    let a = std::fs::read(&one).unwrap();
    assert_eq!(a, std::fs::read(&eight).unwrap());
    assert!(run(&["survey", "--format", "csv", "--out", s(&csv)]).status.success());
    let lines = String::from_utf8(a).unwrap().lines().count();
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(csv_text.lines().count(), lines + 1);

    let v = json(&run(&["fit", s(&one), "--builtin"]));
    let sl = v["families"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["family"] == "SL" && f["dim"] == 2)
        .expect("SL family");
    assert_eq!(sl["fitted"], "24/49");
    // The CSV records fit to the same constants.
    let w = json(&run(&["fit", s(&csv)]));
    assert_eq!(w["families"], v["families"]);
}

#[test]
fn survey_entry_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let cat = write(&dir, "cat.json", r#"[{"name": "C4", "family": "cyclic", "params": {"n": 4}}]"#);
    let out = run(&["survey", "--catalog", s(&cat), "--p", "4,2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
}
