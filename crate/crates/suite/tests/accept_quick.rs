//! Property suites and acceptance criteria at reduced size.

use congruence_core::verifier::{sweep, DEFAULT_SEED};
use congruence_lab_suite::criteria::{conjecture_scan, determinism, exact_oracle, quoted_values, theorem_sweep, CONJECTURE_IDS, THEOREM_IDS};
use congruence_lab_suite::properties;

#[test]
fn quick_suites_clean() {
    for r in [
        properties::euler_symbol(DEFAULT_SEED),
        properties::frobenius(DEFAULT_SEED),
        properties::deuring(DEFAULT_SEED),
        properties::weil(DEFAULT_SEED, 20, 200),
        properties::point_count_naive(),
        properties::cornacchia_search(2000),
    ] {
        assert!(r.ok(), "{}: {:?}", r.name, r.first_violation);
        assert!(r.checked > 0, "{} checked nothing", r.name);
    }
}

#[test]
fn punit_suite_clean() {
    let r = properties::punit_oracle();
    assert!(r.ok(), "{:?}", r.first_violation);
}

#[test]
fn exact_oracle_small() {
    let c = exact_oracle(40, 15);
    assert!(c.pass, "{c}");
}

#[test]
fn values_reproduced() {
    let c = quoted_values();
    assert!(c.pass, "{c}");
    assert!(c.detail.contains("thm-4.4@31 sum_mod_p=25"));
}

#[test]
fn criteria_on_small_range() {
    let ids: Vec<&str> = THEOREM_IDS.iter().chain(CONJECTURE_IDS.iter()).copied().collect();
    let a = sweep(&ids, 5..=30, 1, DEFAULT_SEED).unwrap();
    let b = sweep(&ids, 5..=30, 2, DEFAULT_SEED).unwrap();
    assert!(conjecture_scan(&a).pass);
    assert!(determinism(&a, &b).pass);
    // The (6/p)-twisted family fails from p = 31 on; below that the sweep is clean.
    assert!(theorem_sweep(&a).pass, "{}", theorem_sweep(&a));
    let c = sweep(&["lem-4.4"], 5..=40, 1, DEFAULT_SEED).unwrap();
    let t = theorem_sweep(&c);
    assert!(!t.pass && t.detail.contains("lem-4.4@31,37"), "{t}");
}
