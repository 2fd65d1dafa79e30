use std::io::Write;
use std::process::{Command, Output, Stdio};

fn andrasfai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_andrasfai"))
        .args(args)
        .env_remove("ANDRASFAI_DB")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_andrasfai_props() {
    let o = andrasfai(&["gen", "andrasfai", "2", "--props"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], "n=5 e=5 regular=2 alpha=2 chi=3 triangle_free=true");
}

#[test]
fn gen_vega_is_groetzsch_sized() {
    let o = andrasfai(&["gen", "vega", "2", "1", "1", "--props"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("n=11 e=20 regular=no alpha=5 chi=4 triangle_free=true"));
}

#[test]
fn gk_min_and_single_piece() {
    assert_eq!(stdout(&andrasfai(&["gk", "9", "4", "--min"])), "17 (k=2)\n");
    assert_eq!(stdout(&andrasfai(&["gk", "29", "10", "--k", "10"])), "145\n");
}

#[test]
fn scan_csv_row() {
    let o = andrasfai(&["scan", "9", "--csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("n,s,ex,g_min,argmin_k,status\n"));
    assert!(out.lines().any(|l| l == "9,4,17,17,2,MATCH"));
}

#[test]
fn scan_is_thread_independent() {
    let a = andrasfai(&["--threads", "1", "scan", "10", "--csv"]);
    let b = andrasfai(&["--threads", "3", "scan", "10", "--csv"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scan_beyond_cap_is_skipped() {
    let out = stdout(&andrasfai(&["scan", "16", "--csv"]));
    assert!(out.lines().skip(1).all(|l| l.ends_with("ORACLE_SKIPPED")));
}

#[test]
fn family_writes_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let o = andrasfai(&["family", "g", "9", "4", "2", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 2);
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["g_9_4_2_0.g6", "g_9_4_2_0.json", "g_9_4_2_1.g6", "g_9_4_2_1.json"]);
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("g_9_4_2_0.json")).unwrap()).unwrap();
    assert_eq!(side["edges"], 17);
}

#[test]
fn optimize_named_base() {
    let o = andrasfai(&["optimize", "vega211", "29", "10"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["optimum"], 145);
}

#[test]
fn optimize_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_andrasfai"))
        .args(["optimize", "-", "9", "4"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"Dhc\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["optimum"], 17);
}

#[test]
fn oracle_uses_db() {
    let dir = tempfile::tempdir().unwrap();
    let db = dir.path().join("ex.ndjson");
    let db = db.to_str().unwrap();
    let first = andrasfai(&["oracle", "10", "4", "--db", db]);
    assert!(first.status.success());
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["optimum"], 20);
    let again = andrasfai(&["oracle", "10", "4", "--db", db]);
    assert_eq!(first.stdout, again.stdout);
    let text = std::fs::read_to_string(db).unwrap();
    assert_eq!(text.lines().count(), 1);
    let rec: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(rec["mode"], "full");
    assert_eq!(rec["ex"], 20);
}

#[test]
fn oracle_structured_is_flagged() {
    let o = andrasfai(&["oracle", "9", "4", "--mode", "structured"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["optimum"], 17);
    assert_eq!(v["structured_assumption"], true);
}

#[test]
fn classify_c5() {
    let out = stdout(&andrasfai(&["classify", "Dhc", "5", "2"]));
    assert!(out.starts_with("in G (k=2"));
}

#[test]
fn exit_codes() {
    assert_eq!(andrasfai(&["gk", "9"]).status.code(), Some(2));
    assert_eq!(andrasfai(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(andrasfai(&["optimize", "gamma2x", "9", "4"]).status.code(), Some(2));
    assert_eq!(andrasfai(&["oracle", "15", "5"]).status.code(), Some(3));
    assert_eq!(andrasfai(&["optimize", "gamma3", "40", "15", "--node-budget", "5"]).status.code(), Some(3));
}

#[test]
fn verify_suites_pass() {
    let o = andrasfai(&["verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().last().unwrap().ends_with("0 failed"));
}
