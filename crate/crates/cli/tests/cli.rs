//! The binary end to end: output formats and exit codes.

use std::process::{Command, Output};

use congruence_core::quadform::{normalize, represent_exhaustive, NormRule, Scale};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_congruence-lab"))
        .args(args)
        .env("CONGRUENCE_LAB_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Vec<Value>) {
    let o = run(args);
    let rows: Value = serde_json::from_str(&stdout(&o)).expect("JSON report");
    (o.status.code().unwrap(), rows.as_array().unwrap().clone())
}

#[test]
fn eval_and_represent_examples() {
    let o = run(&["eval", "sum-central", "-m", "8", "-p", "11", "-e", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
    let o = run(&["represent", "--form", "1,15", "--scale", "p", "-p", "31"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(4,1)");
    let o = run(&["eval", "point-count", "-m", "-1", "-n", "0", "-p", "5"]);
    assert_eq!(stdout(&o).trim(), "8");
}

#[test]
fn theorem_check_exits_zero() {
    let (code, rows) = json(&["check", "--id", "thm-4.6", "--primes", "5..10000", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(rows.len(), 1227);
    assert!(rows.iter().all(|r| r["status"] == "PASS" || r["status"] == "SKIPPED"));
}

#[test]
fn failing_row_exits_one() {
    let (code, rows) = json(&["check", "--id", "lem-4.4", "-p", "31", "--format", "json"]);
    assert_eq!(code, 1);
    assert_eq!(rows[0]["status"], "FAIL");
    assert_eq!(rows[0]["witness"]["char_sum"], "-5");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["check", "--id", "thm-9.9", "-p", "7"]).status.code(), Some(64));
    assert_eq!(run(&["check", "--id", "thm-4.2", "--primes", "5..x"]).status.code(), Some(64));
    assert_eq!(run(&["check", "--id", "thm-4.2", "-p", "9"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn empty_reports() {
    let o = run(&["sweep", "--id", "thm-4.2", "--primes", "24..28", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[]\n");
    let o = run(&["sweep", "--id", "thm-4.2", "--primes", "24..28", "--format", "csv"]);
    assert_eq!(stdout(&o).trim_end(), "check,p,status,ambiguity,clause,witness_json");
}

#[test]
fn csv_has_one_row_per_prime() {
    let o = run(&["check", "--id", "thm-4.2,thm-4.3", "--primes", "5..50", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("check,p,status,ambiguity,clause,witness_json"));
    assert_eq!(lines.count(), 2 * 13);
}

#[test]
fn cor33_witnesses_match_search() {
    let (code, rows) = json(&["sweep", "--id", "cor-3.3", "--primes", "5..100", "--format", "json"]);
    assert_eq!(code, 0);
    let mut seen = 0;
    for r in &rows {
        let p: u64 = r["p"].as_str().unwrap().parse().unwrap();
        if p % 3 != 1 {
            continue;
        }
        let rep = normalize(represent_exhaustive(p, 1, 27, Scale::FourP).unwrap(), NormRule::LMod3);
        assert_eq!(r["witness"]["L"], rep.x.to_string(), "p={p}");
        seen += 1;
    }
    assert_eq!(seen, 11);
}

#[test]
fn prime_range_flags() {
    let (_, rows) = json(&["check", "--id", "thm-4.2", "--primes", "2..20", "--format", "json"]);
    let ps: Vec<_> = rows.iter().map(|r| r["p"].as_str().unwrap().to_string()).collect();
    assert_eq!(ps, ["5", "7", "11", "13", "17", "19"]);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("congruence-lab-{}.json", std::process::id()));
    let args = ["check", "--id", "thm-3.1", "--primes", "5..60", "--format", "json"];
    let direct = stdout(&run(&args));
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    assert!(run(&with_out).status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
    std::fs::remove_file(path).ok();
}

#[test]
fn list_and_properties() {
    let o = run(&["list"]);
    assert!(stdout(&o).contains("conj-1458"));
    let o = run(&["selftest", "--properties-only"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
