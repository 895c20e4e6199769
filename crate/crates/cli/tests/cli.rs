use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nptcert(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nptcert"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn gen_and_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = nptcert(d, &["gen", "singlet", "--out", "s.json"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("validation: pass"));
    let s = read(d, "s.json");
    assert_eq!(s["result"]["state"]["dimA"], 2);
    assert_eq!(s["result"]["state"]["matrix"].as_array().unwrap().len(), 4);

    let o = nptcert(d, &["gen", "werner", "--dim", "3", "--alpha", "-0.9", "--out", "w.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(read(d, "w.json")["result"]["validation"]["passed"], true);

    let o = nptcert(d, &["analyze", "s.json", "--out", "a.json"]);
    assert_eq!(code(&o), 0);
    let a = read(d, "a.json");
    assert!((a["result"]["min_pt_eigenvalue"].as_f64().unwrap() + 0.5).abs() < 1e-10);

    nptcert(d, &["gen", "horodecki3x3", "--a", "0.5", "--out", "h.json"]);
    assert_eq!(code(&nptcert(d, &["analyze", "h.json"])), 3);
    nptcert(d, &["gen", "mixed", "--dims", "2", "3", "--out", "m.json"]);
    assert_eq!(code(&nptcert(d, &["analyze", "m.json"])), 3);
}

#[test]
fn json_goes_to_stdout_without_out() {
    let dir = tempfile::tempdir().unwrap();
    let o = nptcert(dir.path(), &["gen", "singlet"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tool"], "nptcert");
    assert!(String::from_utf8_lossy(&o.stderr).contains("validation"));
}

#[test]
fn random_generation_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["gen", "random", "--dims", "2", "3", "--rank", "2", "--seed", "7", "--out", "r.json"];
    nptcert(d, &args);
    let first = std::fs::read(d.join("r.json")).unwrap();
    nptcert(d, &args);
    assert_eq!(first, std::fs::read(d.join("r.json")).unwrap());
    let v = read(d, "r.json");
    assert_eq!(v["result"]["description"]["seed"], 7);
    assert_eq!(v["config"]["seed"], 7);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.json"), "{\"dimA\": 2}").unwrap();
    assert_eq!(code(&nptcert(d, &["analyze", "bad.json"])), 2);
    assert_eq!(code(&nptcert(d, &["analyze", "missing.json"])), 2);
    assert_eq!(code(&nptcert(d, &["certify", "bad.json"])), 2);
    assert_eq!(code(&nptcert(d, &["gen", "werner", "--dim", "3", "--alpha", "5"])), 2);
    assert_eq!(code(&nptcert(d, &["gen", "nosuchfamily"])), 2);
    assert_eq!(code(&nptcert(d, &["identities", "--d", "1"])), 2);
    // not positive semidefinite
    std::fs::write(
        d.join("neg.json"),
        r#"{"dimA":1,"dimB":2,"matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]}"#,
    )
    .unwrap();
    assert_eq!(code(&nptcert(d, &["analyze", "neg.json"])), 2);
}

#[test]
fn bare_state_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("bell.json"),
        r#"{"dimA":2,"dimB":2,"matrix":[[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0.5,0],[-0.5,0],[0,0]],[[0,0],[-0.5,0],[0.5,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]}"#,
    )
    .unwrap();
    let o = nptcert(d, &["claimcheck", "bell.json", "--out", "c.json"]);
    assert_eq!(code(&o), 0);
    let c = read(d, "c.json");
    assert_eq!(c["result"]["state"]["label"], "bell");
    assert!((c["result"]["construction"]["det_phi"][0].as_f64().unwrap() + 0.25).abs() < 1e-10);
}

#[test]
fn claimcheck_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    nptcert(d, &["gen", "werner", "--dim", "3", "--alpha", "-0.9", "--out", "w.json"]);
    let o = nptcert(d, &["claimcheck", "w.json", "--out", "c.json"]);
    assert_eq!(code(&o), 0);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("discrepancy"));
    let c = read(d, "c.json");
    for p in c["result"]["construction"]["cross_validation"].as_array().unwrap() {
        assert!(p["defect"].as_f64().unwrap() <= 1e-10);
    }

    let o = nptcert(d, &["claimcheck", "w.json", "--max-degree", "2", "--out", "t.json"]);
    assert_eq!(code(&o), 4);
    assert_eq!(read(d, "t.json")["result"]["status"], "truncated");

    nptcert(d, &["gen", "horodecki3x3", "--a", "0.5", "--out", "h.json"]);
    let o = nptcert(d, &["claimcheck", "h.json", "--out", "hc.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(read(d, "hc.json")["result"]["status"], "not_applicable");

    let o = nptcert(d, &["claimcheck", "w.json", "--dense-cross-check", "off", "--out", "off.json"]);
    assert_eq!(code(&o), 0);
    let off = read(d, "off.json");
    assert_eq!(off["config"]["dense_cross_check"], "off");
    assert_eq!(off["result"]["construction"]["cross_validation"].as_array().unwrap().len(), 1);
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    nptcert(d, &["gen", "singlet", "--out", "s.json"]);
    let o = nptcert(d, &["certify", "s.json", "--n", "1", "--out", "cert.json"]);
    assert_eq!(code(&o), 0);
    let cert = read(d, "cert.json");
    assert!(cert["result"]["value"].as_f64().unwrap() <= -0.5 + 1e-8);

    let o = nptcert(d, &["certify", "s.json", "--eval", "cert.json", "--out", "re.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(read(d, "re.json")["result"]["stored_value_reproduced"], true);

    nptcert(d, &["gen", "horodecki3x3", "--a", "0.5", "--out", "h.json"]);
    assert_eq!(code(&nptcert(d, &["certify", "h.json", "--n", "1"])), 3);
    assert_eq!(code(&nptcert(d, &["certify", "s.json", "--n", "3"])), 4);
    assert_eq!(code(&nptcert(d, &["certify", "s.json", "--n", "0"])), 2);

    let o = nptcert(d, &["certify", "s.json", "--report", "--n", "2", "--out", "rep.json"]);
    assert_eq!(code(&o), 0);
    let rep = read(d, "rep.json");
    assert_eq!(rep["result"]["predicted_copies"], 2);
    assert_eq!(rep["result"]["conclusive_at"][0], 1);
    assert!(!std::fs::read_to_string(d.join("rep.json")).unwrap().contains("undistillable"));
    assert_eq!(code(&nptcert(d, &["certify", "h.json", "--report"])), 3);
}

#[test]
fn identities_command() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for deg in ["2", "3", "4"] {
        let o = nptcert(d, &["identities", "--d", deg, "--samples", "20", "--out", "i.json"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
        assert_eq!(read(d, "i.json")["result"]["all_passed"], true);
    }
    assert_eq!(code(&nptcert(d, &["identities", "--d", "7"])), 4);
}

#[test]
fn help_and_version() {
    let dir = tempfile::tempdir().unwrap();
    let o = nptcert(dir.path(), &["--help"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("claimcheck"));
    assert_eq!(code(&nptcert(dir.path(), &["--version"])), 0);
}
