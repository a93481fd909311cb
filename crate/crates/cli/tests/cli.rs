use std::path::PathBuf;
use std::process::{Command, Output};

fn ospfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ospfield"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus(name: &str) -> String {
    format!("{}/../claims/corpus/{name}.claims", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn nf_straightens() {
    let o = ospfield(&["nf", "-a", "osp12", "b- * b+"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1*b+*b- + 2*k\n");
}

#[test]
fn nf_rejects_unknown_algebra() {
    let o = ospfield(&["nf", "-a", "osp(1,3)", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passing_script() {
    let o = ospfield(&["verify", &corpus("prop2_2")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_failing_script() {
    let f = scratch("fails.claims", "algebra U = osp(1,2)\nassert_zero b-*b+\n");
    let o = ospfield(&["verify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_parse_error() {
    let f = scratch("broken.claims", "algebra U = osp(1,2)\nlet q = comm(b+,)\n");
    let o = ospfield(&["verify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:"));
}

#[test]
fn verify_json() {
    let o = ospfield(&["verify", "--json", &corpus("remark1_8")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn center_osp12() {
    let o = ospfield(&["center", "-a", "osp12", "-d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "algebra osp(1,2)full\ndegree dim\n0 1\n1 1\n2 2\nbasis (degree <= 2):\n  1\n  1*b+*b- + 1*c+*c- - 1*k^2 + 1*k\n"
    );
    let j = ospfield(&["center", "-a", "osp12", "-d", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["basis"].as_array().unwrap().len(), 2);
}

#[test]
fn graph_s3() {
    let o = ospfield(&["graph", "-a", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = format!("{}/../claims/tests/golden/S3.dot", env!("CARGO_MANIFEST_DIR"));
    assert_eq!(stdout(&o), std::fs::read_to_string(golden).unwrap());
}

#[test]
fn overlaps_and_list() {
    let o = ospfield(&["overlaps", "-a", "osp12", "-d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mismatches: 0"));
    let l = ospfield(&["list"]);
    assert!(stdout(&l).lines().any(|x| x.starts_with("S3:")));
}

#[test]
fn budget_exhaustion_is_an_engine_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_ospfield"))
        .args(["nf", "-a", "osp14", "(b2m*b1m*b2p*b1p)^3"])
        .env("OSPFIELD_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}
