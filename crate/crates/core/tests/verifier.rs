//! Registry, single checks, sweeps and reports through the public API.

use std::collections::HashSet;

use congruence_core::verifier::report::{emit_report, from_json, to_csv, to_json, Format, CSV_HEADER};
use congruence_core::verifier::{find_check, ids_of_kind, list_checks, run_check, sweep, Ambiguity, Kind, Status, VerifyError, DEFAULT_SEED, REGISTRY};

#[test]
fn registry_shape() {
    let ids: Vec<_> = list_checks().iter().map(|c| c.id).collect();
    assert_eq!(ids.len(), REGISTRY.len());
    assert_eq!(ids.first(), Some(&"thm-2.1"));
    assert!(ids.contains(&"conj-1458"));
    assert_eq!(ids.iter().collect::<HashSet<_>>().len(), ids.len(), "duplicate ids");
    assert!(list_checks().iter().all(|c| !c.applicability.is_empty() && !c.summary.is_empty()));
    for id in ids_of_kind(true) {
        assert_eq!(find_check(id).unwrap().kind, Kind::Conjecture);
    }
    assert!(matches!(find_check("thm-9.9"), Err(VerifyError::UnknownCheck(_))));
}

#[test]
fn single_checks() {
    let r = run_check("thm-4.2", 7, DEFAULT_SEED).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.witness["rep"], "(1,1)");
    assert_eq!(r.witness["sum_mod_p"], "1");
    let r = run_check("thm-4.2", 5, DEFAULT_SEED).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.witness["sum_mod_p2"], "0");
    let r = run_check("thm-4.4", 31, DEFAULT_SEED).unwrap();
    assert_eq!(r.witness["sum_mod_p"], "25");
    let r = run_check("thm-4.4", 11, DEFAULT_SEED).unwrap();
    assert_eq!(r.status, Status::Skipped);
    assert!(r.witness.contains_key("reason"));
    assert!(run_check("thm-4.2", 9, DEFAULT_SEED).is_err());
}

#[test]
fn small_theorem_sweep_passes() {
    let rep = sweep(&["thm-3.1"], 5..=500, 2, DEFAULT_SEED).unwrap();
    assert_eq!(rep.rows.len(), 93);
    assert!(rep.rows.iter().all(|r| r.status == Status::Pass));
    assert_eq!(rep.exit_code(), 0);
}

#[test]
fn thm46_sweep_passes() {
    let rep = sweep(&["thm-4.6"], 5..=3000, 2, DEFAULT_SEED).unwrap();
    assert_eq!(rep.total().fail, 0);
    assert!(rep.total().pass > 0);
}

#[test]
fn no_vacuous_rows() {
    let ids: Vec<_> = REGISTRY.iter().map(|s| s.id).collect();
    let rep = sweep(&ids, 5..=60, 1, DEFAULT_SEED).unwrap();
    assert_eq!(rep.rows.len(), ids.len() * 15);
    for r in &rep.rows {
        match r.status {
            Status::Skipped => assert!(r.witness.contains_key("reason"), "{} at {}", r.check, r.p),
            _ => assert!(!r.clause.is_empty(), "{} at {}", r.check, r.p),
        }
        if r.status == Status::Fail || r.ambiguity == Ambiguity::SomeChoices {
            assert!(!r.witness.is_empty(), "{} at {}", r.check, r.p);
        }
    }
}

#[test]
fn erratum_rows_carry_twist_diagnostic() {
    for p in [31u64, 37] {
        let r = run_check("lem-4.4", p, DEFAULT_SEED).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness["twisted_by_(6/p)_matches"], "true");
    }
}

#[test]
fn reports_are_deterministic() {
    let ids = ["thm-2.1", "lem-4.1", "eq-3.3", "conj-4.3", "cor-4.1"];
    let a = sweep(&ids, 5..=300, 1, DEFAULT_SEED).unwrap();
    let b = sweep(&ids, 5..=300, 3, DEFAULT_SEED).unwrap();
    assert_eq!(to_json(&a.rows), to_json(&b.rows));
    assert_eq!(to_csv(&a.rows), to_csv(&b.rows));
    let c = sweep(&ids, 5..=300, 1, DEFAULT_SEED + 1).unwrap();
    assert_eq!(a.rows.len(), c.rows.len());
}

#[test]
fn report_formats() {
    let empty = sweep(&["thm-3.1"], 24..=28, 1, DEFAULT_SEED).unwrap();
    assert_eq!(to_json(&empty.rows), "[]\n");
    assert_eq!(to_csv(&empty.rows).trim_end(), CSV_HEADER.join(","));

    let rep = sweep(&["cor-3.3"], 5..=20, 1, DEFAULT_SEED).unwrap();
    let back = from_json(&to_json(&rep.rows)).unwrap();
    assert_eq!(back, rep.rows);
    let mut text = vec![];
    emit_report(&rep, "text".parse::<Format>().unwrap(), &mut text).unwrap();
    assert!(String::from_utf8(text).unwrap().contains("cor-3.3"));
}
