use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

struct Run {
    code: i32,
    stdout: String,
}

fn zariski(input: &str, args: &[&str]) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zariski"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn job(v: Value) -> Run {
    zariski(&v.to_string(), &[])
}

fn parsed(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap()
}

#[test]
fn solve_example() {
    let r = job(json!({"command":"solve","payload":{"q":[["-1"]],"x":["1"]}}));
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "{\"y\":[\"0\"],\"z\":[\"1\"],\"support\":[0]}\n");
}

#[test]
fn decompose_example() {
    let r = job(json!({"command":"p1-decompose","payload":{"family":"one-kink","log_alpha":1,"log_beta":-1}}));
    assert_eq!(r.code, 0);
    assert_eq!(parsed(&r)["theta"], json!(0.5));
}

#[test]
fn volume_example() {
    let r = job(json!({"command":"p1-vol","payload":{"family":"admissible","lambda":1,"scale":2}}));
    assert_eq!(r.code, 0);
    let v = parsed(&r)["volume"].as_f64().unwrap();
    assert!((v - 2.0).abs() < 1e-8, "{v}");
}

#[test]
fn exit_codes() {
    let half = -std::f64::consts::LN_2;
    let r = job(json!({"command":"p1-decompose","payload":{"family":"one-kink","log_alpha":half,"log_beta":half}}));
    assert_eq!(r.code, 3);
    assert_eq!(parsed(&r)["outcome"], "no-decomposition");

    let r = job(json!({"command":"solve","payload":{"q":[["1"]],"x":["-1"]}}));
    assert_eq!(r.code, 3);
    assert_eq!(parsed(&r)["outcome"], "no-nef-below");

    assert_eq!(zariski("not json", &[]).code, 2);
    assert_eq!(job(json!({"command":"solve","payload":{"q":[["-1"]]}})).code, 2);
    assert_eq!(job(json!({"command":"solve","payload":{"q":[["-1"]],"x":["1"],"extra":1}})).code, 2);
    assert_eq!(job(json!({"command":"solve","payload":{"q":[["-1"]],"x":[0.5]}})).code, 2);
    assert_eq!(job(json!({"command":"solve","tol":0,"payload":{"q":[["-1"]],"x":["1"]}})).code, 2);
    assert_eq!(job(json!({"command":"p1-vol","payload":{"family":"admissible","lambda":-1}})).code, 2);
}

#[test]
fn byte_stable() {
    let spec = json!({"command":"sections-sigma","payload":{"family":"one-kink","log_a":1,"log_b":-1,"n_list":[2,3],"grid":[-1.0,0.0,1.0]}});
    let a = job(spec.clone());
    let b = job(spec);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn solve_and_certify_idempotent() {
    let q = json!([["-2","1","0"],["1","-2","1"],["0","1","1"]]);
    let first = parsed(&job(json!({"command":"solve","payload":{"q":q,"x":["3","1","2"]}})));
    let again = parsed(&job(json!({"command":"solve","payload":{"q":q,"x":first["y"]}})));
    assert_eq!(again["y"], first["y"]);
    assert_eq!(again["support"], json!([]));

    let c1 = job(json!({"command":"certify","payload":{"q":q,"support":first["support"]}}));
    let c2 = job(json!({"command":"certify","payload":{"q":q,"support":parsed(&c1)["support"]}}));
    assert_eq!(c1.code, 0);
    assert_eq!(c1.stdout, c2.stdout);
    assert_eq!(parsed(&c1)["verified"], true);
}

#[test]
fn formats_and_flags() {
    let spec = json!({"command":"p1-degree","output":"table","payload":{"family":"admissible","lambda":2}});
    let r = zariski(&spec.to_string(), &["--format", "csv"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("curve,degree"));
    assert_eq!(lines.count(), 2);

    let r = job(spec);
    assert!(r.stdout.lines().next().unwrap().contains("degree"));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", json!({"command":"solve","payload":{"q":[["-1"]],"x":["1"]}})).unwrap();
    let r = zariski("", &["--input", f.path().to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(zariski("", &["--tol", "-1", "--input", f.path().to_str().unwrap()]).code, 2);
}

#[test]
fn rationals_as_strings() {
    let r = job(json!({"command":"solve","payload":{"q":[["-2","1"],["1","1"]],"x":["2","1"]}}));
    assert_eq!(parsed(&r)["y"], json!(["1/2", "1"]));
}
