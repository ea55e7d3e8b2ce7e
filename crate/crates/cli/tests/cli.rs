use std::process::{Command, Output};

use qmzv::verify::{Report, Status};

fn qmzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmzv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let o = qmzv(&["eval", "--model", "dagger", "--index", "b,1", "--N", "2", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q + 2q^2 + 3q^3 + 4q^4 + 5q^5");

    let o = qmzv(&["eval", "--model", "classical", "--kind", "diamond", "--index", "1,2", "--N", "3"]);
    assert_eq!(stdout(&o).trim(), "9/8");

    let o = qmzv(&["eval", "--model", "dagger", "--index", "b,1", "--N", "2", "--q", "1/2"]);
    assert_eq!(stdout(&o).trim(), "2");

    let o = qmzv(&["--json", "eval", "--model", "dagger", "--index", "b,1", "--N", "2", "--q", "1/2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "2");
}

#[test]
fn word_examples() {
    let o = qmzv(&["word", "--eps", "D", "--c", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "y x^2");
    let o = qmzv(&["word", "--eps", "0", "--c", "1,1", "--json"]);
    let el: qmzv::words::ElementJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(qmzv::words::AlgebraElement::from_json(&el).unwrap().to_string(), "y");
}

#[test]
fn transform_prints_expansion() {
    let o = qmzv(&["transform", "--direction", "dagger-from-sz", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(|l| l.split_whitespace().collect::<Vec<_>>().join(" ")).collect();
    assert_eq!(lines, ["1 sz(1;1)", "1 sz(1;2)"]);
    let o = qmzv(&["--json", "transform", "--direction", "sz-from-dagger", "--l", "2", "--k", "3"]);
    let terms: Vec<qmzv::transforms::Term> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(terms.len(), 6);
}

#[test]
fn exit_code_contract() {
    assert_eq!(qmzv(&["eval", "--bogus"]).status.code(), Some(2));
    assert_eq!(qmzv(&["frobnicate"]).status.code(), Some(2));
    let o = qmzv(&["eval", "--model", "dagger", "--index", "0", "--N", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert_eq!(qmzv(&["eval", "--model", "diamond-bz", "--index", "1"]).status.code(), Some(1));
    assert_eq!(qmzv(&["word", "--eps", "Q", "--c", "1,1"]).status.code(), Some(1));
    assert_eq!(qmzv(&["verify", "recurrence", "--M", "0", "--N", "3", "--r", "1"]).status.code(), Some(0));
}

#[test]
fn verification_failure_exits_three_with_witness() {
    let o = qmzv(&["--json", "verify", "--identity", "main_finite", "--c", "2,1", "--N", "4", "--mutate", "term1-sign"]);
    assert_eq!(o.status.code(), Some(3));
    let reports: Vec<Report> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].status, Status::Fail);
    let w = reports[0].witness.as_ref().unwrap();
    assert_ne!(w.left, w.right);
}

#[test]
fn suite_filter_and_round_trip() {
    let o = qmzv(&["suite", "--config", "default", "--filter", "classical"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<Report> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r.identity == "classical" && r.status == Status::Pass));
    assert_eq!(stdout(&qmzv(&["suite", "--config", "default", "--filter", "classical"])), stdout(&o));

    let o = qmzv(&["suite", "--filter", "no_such_identity"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[]");

    let dir = std::env::temp_dir().join(format!("qmzv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("bad.toml");
    std::fs::write(&cfg, "max_weigth = 3\n").unwrap();
    assert_eq!(qmzv(&["suite", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    std::fs::write(&cfg, "filter = [\"main_finite_bz\"]\nmax_weight = 3\nmax_n = 3\nrational_max_weight = 2\n").unwrap();
    let o = qmzv(&["suite", "--config", cfg.to_str().unwrap(), "--mutate", "d-prefactor"]);
    assert_eq!(o.status.code(), Some(3));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn default_suite_passes() {
    let o = qmzv(&["suite", "--config", "default"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let reports: Vec<Report> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(reports.len() > 200);
}
