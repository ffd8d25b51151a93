use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

fn job_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs").join(name)
}

fn run_args(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_shintani"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_file(name: &str, extra: &[&str]) -> (i32, Value) {
    let p = job_path(name);
    let mut args = vec!["--job", p.to_str().unwrap()];
    args.extend_from_slice(extra);
    let (code, out) = run_args(&args, None);
    (code, serde_json::from_str(&out).unwrap())
}

fn run_stdin(job: &Value, extra: &[&str]) -> (i32, Value) {
    let mut args = vec!["--job", "-"];
    args.extend_from_slice(extra);
    let (code, out) = run_args(&args, Some(&job.to_string()));
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn cones_on_sqrt2() {
    let (code, v) = run_file("sqrt2-cones.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "cones");
    let cones = v["cones"].as_array().unwrap();
    assert_eq!(cones.len(), 1);
    assert_eq!(cones[0]["w"], 1);
    assert_eq!(cones[0]["flags"], json!(["open", "closed"]));
    assert_eq!(cones[0]["generators"], json!([["1/1", "0/1"], ["3/1", "2/1"]]));
    let zs: Vec<&Value> = cones[0]["r_sets"][0]["points"].as_array().unwrap().iter().map(|p| &p["z"]).collect();
    assert_eq!(zs, vec![&json!(["2/1", "1/1"]), &json!(["1/1", "0/1"])]);
    assert_eq!(v["is_true_domain"], true);
}

#[test]
fn verify_sqrt2_seed_42() {
    let (code, v) = run_file("sqrt2-verify.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["net_count_ok"], true);
    assert_eq!(v["samples"], 1000);
    assert_eq!(v["seed"], 42);
    // the flag overrides the job's seed
    let (_, v) = run_file("sqrt2-verify.json", &["--seed", "7"]);
    assert_eq!(v["seed"], 7);
}

#[test]
fn signed_quartic_domain() {
    let (code, v) = run_file("quartic-cones.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["is_true_domain"], false);
    let ws: Vec<i64> = v["cones"].as_array().unwrap().iter().map(|c| c["w"].as_i64().unwrap()).collect();
    assert!(ws.contains(&-1));
    let (code, v) = run_file("quartic-regcheck.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    assert!((v["signed_regulator_lhs"].as_f64().unwrap() + 26.4022).abs() < 1e-3);
}

#[test]
fn malformed_inputs_exit_2() {
    let job = json!({"command": "cones", "field": {"poly": [2, 0, 1]}, "units": [[1, 1]]});
    let (code, v) = run_stdin(&job, &[]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "NotTotallyReal");
    let job = json!({"command": "frobnicate", "field": {"poly": [-2, 0, 1]}, "units": [[3, 2]]});
    let (code, v) = run_stdin(&job, &[]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "InvalidInput");
    let job = json!({"command": "cones", "field": {"poly": [-2, 0, 1]}, "units": [[3, 2]], "colour": 1});
    assert_eq!(run_stdin(&job, &[]).0, 2);
    let job = json!({"schema": 9, "command": "cones", "field": {"poly": [-2, 0, 1]}, "units": [[3, 2]]});
    assert_eq!(run_stdin(&job, &[]).0, 2);
    let job = json!({"command": "cones", "field": {"poly": [-2, 0, 1]}, "units": [[1, 1]]});
    assert_eq!(run_stdin(&job, &[]).1["error"], "NotTotallyPositive");
    let (code, out) = run_args(&["--job", "/nonexistent/job.json"], None);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"], "Io");
    let (code, _) = run_args(&["--job", "-"], Some("{ not json"));
    assert_eq!(code, 2);
}

#[test]
fn precision_cap_exit_3() {
    let (code, v) = run_file("sqrt2-zeta.json", &["--precision-cap", "64"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"], "PrecisionCapExceeded");
}

#[test]
fn zeta_methods_agree() {
    let (code, sh) = run_file("sqrt2-zeta.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(sh["method"], "shintani");
    let mut job: Value = serde_json::from_str(&std::fs::read_to_string(job_path("sqrt2-zeta.json")).unwrap()).unwrap();
    job["method"] = json!("euler");
    let (code, eu) = run_stdin(&job, &[]);
    assert_eq!(code, 0);
    let d = (sh["value"].as_f64().unwrap() - eu["value"].as_f64().unwrap()).abs();
    assert!(d <= sh["error_bound"].as_f64().unwrap() + eu["error_bound"].as_f64().unwrap());
    job["method"] = json!("nope");
    let (code, v) = run_stdin(&job, &[]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "UnknownStrategy");
}

#[test]
fn ray_class_and_lfun_jobs() {
    let (code, z) = run_file("sqrt2-ray-class.json", &[]);
    assert_eq!(code, 0);
    assert!(z["value"].as_f64().unwrap() > 1.0);
    let (code, l) = run_file("sqrt3-genus.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(l["resolver"], "conductor-one");
    // L(2, χ_{-3})·L(2, χ_{-4})
    let expect = 0.781302412896486 * 0.915965594177219;
    assert!((l["value"]["re"].as_f64().unwrap() - expect).abs() <= l["error_bound"].as_f64().unwrap() + 1e-12);
}

/// Same job, same seed: identical bytes apart from the wall-clock field.
#[test]
fn output_is_deterministic() {
    let strip = |s: String| -> String { s.lines().filter(|l| !l.contains("runtime_ms")).collect::<Vec<_>>().join("\n") };
    for name in ["sqrt2-verify.json", "quartic-cones.json", "sqrt3-genus.json"] {
        let p = job_path(name);
        let a = run_args(&["--job", p.to_str().unwrap(), "--threads", "1"], None).1;
        let b = run_args(&["--job", p.to_str().unwrap(), "--threads", "3"], None).1;
        let c = run_args(&["--job", p.to_str().unwrap()], None).1;
        assert_eq!(strip(a.clone()), strip(b), "{name}");
        assert_eq!(strip(a), strip(c), "{name}");
    }
}

#[test]
fn library_entry_point_matches_binary() {
    let text = std::fs::read_to_string(job_path("sqrt2-verify.json")).unwrap();
    let (code, v) = shintani_cli::run_job(&text, &shintani_cli::Options::default());
    assert_eq!(code, 0);
    let (_, bin) = run_file("sqrt2-verify.json", &[]);
    assert_eq!(v, bin);
}
