use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn resolvent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resolvent"))
        .args(args)
        .env_remove("RESOLVENT_PRECISION")
        .output()
        .expect("spawn resolvent")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid json")
}

fn resolve_pair(out: &str, specs: &str) -> Output {
    resolvent(&[
        "resolve",
        "--problem",
        &fixture("linear_pair_problem.json"),
        "--template",
        &fixture("linear_pair_template.json"),
        "--specs",
        &fixture(specs),
        "--out",
        out,
    ])
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn resolve_two_linear_roots() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = resolve_pair(out.to_str().unwrap(), "linear_pair_specs.json");
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = json(&std::fs::read(&out).unwrap());
    assert_eq!(v["status"], "ok");
    // 128 x (840 x^9 + ... - 9)
    let rho = [-9, -63, -144, 159, 1899, 5554, 8858, 8212, 4092, 840];
    let chi: Vec<String> = std::iter::once("0".to_string())
        .chain(rho.iter().map(|c| (128 * c).to_string()))
        .collect();
    assert_eq!(strings(&v["content"]), chi);
    assert_eq!(strings(&v["primitive_r"][0]), ["0", "1", "2", "1"]);
    assert_eq!(strings(&v["primitive_r"][8]), ["-1"]);
    let verify = resolvent(&[
        "verify",
        "--problem",
        &fixture("linear_pair_problem.json"),
        "--resolvent",
        out.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    resolve_pair(a.to_str().unwrap(), "linear_pair_specs.json");
    resolve_pair(b.to_str().unwrap(), "linear_pair_specs.json");
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn characteristic_three_zero_and_nonzero() {
    let run = |specs: &str| {
        resolvent(&[
            "resolve",
            "--problem",
            &fixture("cubic_f3_problem.json"),
            "--template",
            &fixture("cubic_f3_template.json"),
            "--specs",
            &fixture(specs),
        ])
    };
    let zero = run("cubic_f3_alpha1.json");
    assert_eq!(zero.status.code(), Some(2));
    assert_eq!(json(&zero.stdout)["status"], "identically_zero");

    let two = run("cubic_f3_alpha2.json");
    assert_eq!(two.status.code(), Some(0));
    let v = json(&two.stdout);
    assert_eq!(strings(&v["primitive_r"][0]), ["0", "1"]);
    assert_eq!(strings(&v["primitive_r"][1]), ["1"]);
}

#[test]
fn verify_printed_operator() {
    let o = resolvent(&[
        "verify",
        "--problem",
        &fixture("linear_pair_problem.json"),
        "--resolvent",
        &fixture("linear_pair_resolvent.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o.stdout)["annihilates"], true);
}

#[test]
fn verify_rejects_wrong_operator() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("linear_pair_resolvent.json")).unwrap();
    let mut v = json(text.as_bytes());
    v["primitive_r"][8] = serde_json::json!(["1"]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = resolvent(&[
        "verify",
        "--problem",
        &fixture("linear_pair_problem.json"),
        "--resolvent",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o.stderr)["error"]["kind"], "NotAnnihilated");
}

#[test]
fn eval_residual_is_tiny() {
    let o = resolvent(&[
        "eval",
        "--resolvent",
        &fixture("linear_pair_resolvent.json"),
        "--problem",
        &fixture("linear_pair_problem.json"),
        "--subst",
        "alpha=sqrt(7)",
        "beta=pi",
        "--x0",
        "1/2",
        "2",
        "--precision",
        "30",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = json(&o.stdout);
    for row in v["residuals"].as_array().unwrap() {
        let r: f64 = row["residual"].as_str().unwrap().parse().unwrap();
        assert!(r < 1e-20, "{row}");
    }
}

#[test]
fn precision_override_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_resolvent"))
        .args([
            "eval",
            "--resolvent",
            &fixture("linear_pair_resolvent.json"),
            "--problem",
            &fixture("linear_pair_problem.json"),
            "--subst",
            "alpha=3/2",
            "beta=e",
            "--x0",
            "1",
        ])
        .env("RESOLVENT_PRECISION", "50")
        .output()
        .unwrap();
    assert_eq!(json(&o.stdout)["precision"], 50);
}

#[test]
fn eliminate_finds_orders() {
    let o = resolvent(&[
        "resolve",
        "--problem",
        &fixture("sqrt_problem.json"),
        "--method",
        "eliminate",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o.stdout);
    assert_eq!(v["provenance"]["orders"], serde_json::json!([0, 1]));
    assert_eq!(strings(&v["primitive_r"][0]), ["0", "2"]);
}

#[test]
fn errors_are_json_on_stderr() {
    let o = resolvent(&[
        "verify",
        "--problem",
        "/nonexistent.json",
        "--resolvent",
        "x",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o.stderr)["error"]["kind"], "IoError");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("p.json");
    std::fs::write(&bad, "{\"field\": \"Q\",\n\"polynomials\": [}").unwrap();
    let o = resolvent(&[
        "powersums",
        "--problem",
        bad.to_str().unwrap(),
        "--max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let e = json(&o.stderr);
    assert_eq!(e["error"]["kind"], "ParseError");
    assert!(e["error"]["message"].as_str().unwrap().contains("line 2"));

    let o = resolvent(&["resolve", "--problem", &fixture("sqrt_problem.json")]);
    assert_eq!(json(&o.stderr)["error"]["kind"], "UsageError");
}

#[test]
fn bell_and_log_demo() {
    let o = resolvent(&["bell", "--m", "4", "--k", "2"]);
    assert_eq!(json(&o.stdout)["value"], "11");
    let o = resolvent(&["logres", "--alpha", "1"]);
    let v = json(&o.stdout);
    assert_eq!(v["coefficients"][3], serde_json::json!(["0", "1", "1"]));
}

#[test]
fn powersums_over_f3() {
    let o = resolvent(&[
        "powersums",
        "--problem",
        &fixture("cubic_f3_problem.json"),
        "--max",
        "3",
    ]);
    let v = json(&o.stdout);
    let z = &v["powersums"]["z"];
    assert_eq!(z[1], serde_json::json!([]));
    // -2x = x mod 3
    assert_eq!(z[2], serde_json::json!(["0", "1"]));
    assert_eq!(z[3], serde_json::json!([]));
}

#[test]
fn grid_on_symmetric_roots_needs_a_retry() {
    // +-sqrt(x): every odd powersum vanishes, and the grid only tries alpha = 1
    let o = resolvent(&[
        "resolve",
        "--problem",
        &fixture("sqrt_problem.json"),
        "--template",
        &fixture("thm83_1.json"),
        "--specs",
        &fixture("grid.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let specs = dir.path().join("s.json");
    std::fs::write(&specs, r#"[{"alpha": 2}]"#).unwrap();
    let o = resolvent(&[
        "resolve",
        "--problem",
        &fixture("sqrt_problem.json"),
        "--template",
        &fixture("thm83_1.json"),
        "--specs",
        specs.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(strings(&json(&o.stdout)["primitive_r"][0]), ["0", "2"]);
}
