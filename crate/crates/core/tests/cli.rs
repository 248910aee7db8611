use std::fs;

use pillai::cli::main_with_args;
use serde_json::Value;

fn footer(body: &str) -> Value {
    let line = body.lines().last().unwrap();
    serde_json::from_str(line.strip_prefix("# ").expect("footer line")).unwrap()
}

#[test]
fn config_file_with_flag_override_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.json");
    let out = dir.path().join("out.csv");
    fs::write(&cfg, r#"{ "command": "count", "left": ["2"], "right": ["3"], "x": "1", "nmax": 16, "mmax": 16 }"#).unwrap();

    let args = ["pillai", "--config", cfg.to_str().unwrap(), "count", "--x", "10", "--out", out.to_str().unwrap()];
    assert_eq!(main_with_args(args), 0);
    let body = fs::read_to_string(&out).unwrap();
    assert!(body.starts_with("n,m,verdict"));
    let f = footer(&body);
    assert_eq!(f["count_in"], 8);
    assert_eq!(f["x"], "10");
    assert_eq!(f["certified"], true);
}

#[test]
fn json_format_has_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cf.json");
    let args = ["pillai", "cf", "--xi", "log(3)/log(2)", "--terms", "8", "--format", "json", "--out", out.to_str().unwrap()];
    assert_eq!(main_with_args(args), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["expansion"]["certified_through"], 8);
    assert_eq!(v["expansion"]["partial_quotients"][7], "5");
}

#[test]
fn undecided_pairs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.csv");
    let args = [
        "pillai", "count", "--left", "exp(1)", "--right", "sqrt(2)^2+exp(1)-2", "--x", "10^-100", "--nmax", "1", "--mmax", "1",
        "--prec-cap", "128", "--out", out.to_str().unwrap(),
    ];
    assert_eq!(main_with_args(args), 2);
    assert_eq!(footer(&fs::read_to_string(&out).unwrap())["count_undecided"], 1);
}

#[test]
fn bad_input_exits_with_one() {
    assert_eq!(main_with_args(["pillai", "count", "--left", "2", "--right", "3", "--x", "log(", "--nmax", "2", "--mmax", "2"]), 1);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, "{ not json").unwrap();
    assert_eq!(main_with_args(["pillai", "--config", cfg.to_str().unwrap()]), 1);
}
