//! The six acceptance criteria as runnable functions.

use std::time::Instant;

use congruence_core::exact::{check_wz_certificate, lemma21_side, recurrence_residual, Side};
use congruence_core::verifier::report::to_json;
use congruence_core::verifier::{run_check, sweep, Status, SweepReport, DEFAULT_SEED, REGISTRY};

use crate::properties;

pub const SWEEP_HI: u64 = 10_000;

pub const THEOREM_IDS: [&str; 29] = [
    "thm-2.1", "thm-3.1", "cor-3.1", "cor-3.2", "cor-3.3", "thm-3.2", "thm-4.1", "thm-4.2", "thm-4.3", "thm-4.4",
    "thm-4.5", "thm-4.6", "thm-4.7", "thm-4.8", "thm-4.9", "thm-4.10", "cor-4.1", "cor-4.2", "lem-4.1", "lem-4.2",
    "lem-4.3", "lem-4.4", "lem-4.5", "lem-4.6", "lem-4.7", "lem-4.8", "eq-3.3", "eq-3.5-bm6", "eq-1.1-proved-part",
];

pub const CONJECTURE_IDS: [&str; 20] = [
    "conj-4.1", "conj-4.2", "conj-4.3", "conj-4.4", "conj-4.5", "conj-4.6", "conj-4.7", "conj-4.8", "conj-4.9",
    "conj-4.10", "conj-4.11", "conj-4.12", "conj-A46", "conj-A5", "conj-A4", "conj-A14", "conj-A13-full",
    "conj-8640-full", "conj-15cubed", "conj-1458",
];

#[derive(Debug, Clone)]
pub struct Criterion {
    pub number: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "criterion {} [{verdict}] {}: {}", self.number, self.name, self.detail)
    }
}

/// Every registered id, in registry order.
pub fn all_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.id).collect()
}

pub fn full_sweep(hi: u64, workers: usize, seed: u64) -> SweepReport {
    sweep(&all_ids(), 5..=hi, workers, seed).expect("registered ids and an in-cap range")
}

fn rows_for<'a>(report: &'a SweepReport, ids: &'a [&str]) -> impl Iterator<Item = &'a congruence_core::verifier::CheckOutcome> {
    report.rows.iter().filter(move |r| ids.contains(&r.check.as_str()))
}

fn summarize_failures<'a>(rows: impl Iterator<Item = &'a congruence_core::verifier::CheckOutcome>) -> String {
    let mut per: Vec<(String, Vec<u64>)> = vec![];
    for r in rows {
        match per.iter_mut().find(|(id, _)| *id == r.check) {
            Some((_, ps)) => ps.push(r.p),
            None => per.push((r.check.clone(), vec![r.p])),
        }
    }
    per.iter()
        .map(|(id, ps)| {
            let head: Vec<String> = ps.iter().take(6).map(|p| p.to_string()).collect();
            let more = if ps.len() > 6 { format!(",… ({} primes)", ps.len()) } else { String::new() };
            format!("{id}@{}{more}", head.join(","))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Zero FAIL over the theorem ids; SKIPPED rows must carry a hypothesis reason.
pub fn theorem_sweep(report: &SweepReport) -> Criterion {
    let rows: Vec<_> = rows_for(report, &THEOREM_IDS).collect();
    let fails = rows.iter().filter(|r| r.status == Status::Fail);
    let fail_count = fails.clone().count();
    let unexplained = rows.iter().filter(|r| r.status == Status::Skipped && !r.witness.contains_key("reason")).count();
    let pass = rows.iter().filter(|r| r.status == Status::Pass).count();
    let skipped = rows.iter().filter(|r| r.status == Status::Skipped).count();
    let mut detail = format!("{} rows over primes ≤ {}: {pass} PASS, {fail_count} FAIL, {skipped} SKIPPED", rows.len(), report.range.end());
    if fail_count > 0 {
        detail.push_str(&format!("; failing: {}", summarize_failures(fails.copied())));
    }
    Criterion { number: 1, name: "theorem sweep", pass: fail_count == 0 && unexplained == 0 && !rows.is_empty(), detail }
}

pub fn exact_oracle(m_max: u64, wz_max: u64) -> Criterion {
    let start = Instant::now();
    let mut bad = vec![];
    let left: Vec<_> = (0..=m_max + 2).map(|m| lemma21_side(m, Side::Left)).collect();
    let right: Vec<_> = (0..=m_max + 2).map(|m| lemma21_side(m, Side::Right)).collect();
    for m in 0..=m_max as usize {
        if left[m] != right[m] {
            bad.push(format!("sides differ at m={m}"));
        }
    }
    for side in [Side::Left, Side::Right] {
        for m in 0..=m_max {
            let s = if side == Side::Left { &left } else { &right };
            let r = recurrence_residual(m, &s[m as usize], &s[m as usize + 1], &s[m as usize + 2]);
            if r != num_bigint::BigInt::ZERO {
                bad.push(format!("{side} recurrence at m={m}"));
            }
        }
    }
    let (mut checked, mut poles) = (0usize, 0usize);
    for side in [Side::Left, Side::Right] {
        for m in 0..=wz_max {
            let w = check_wz_certificate(side, m, 0..=m + 2);
            checked += w.checked.len();
            poles += w.poles.len();
            if let Some(k) = w.first_failure {
                bad.push(format!("{side} certificate at m={m}, k={k}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = bad.is_empty() && secs < 60.0;
    let mut detail = format!(
        "sides equal and recurrence zero for m ≤ {m_max}; certificates at {checked} points for m ≤ {wz_max}, {poles} poles logged; {secs:.1}s"
    );
    if !bad.is_empty() {
        detail = format!("{} failure(s): {}", bad.len(), bad.into_iter().take(5).collect::<Vec<_>>().join("; "));
    }
    Criterion { number: 2, name: "exact oracle", pass, detail }
}

/// (id, p, witness key, expected value).
pub const QUOTED_VALUES: [(&str, u64, &str, &str); 5] = [
    ("cor-3.3", 7, "char_sum", "1"),
    ("cor-3.3", 7, "L", "1"),
    ("thm-4.3", 11, "sum_mod_p", "3"),
    ("thm-4.4", 31, "sum_mod_p", "25"),
    ("thm-4.2", 5, "sum_mod_p2", "0"),
];

pub fn quoted_values() -> Criterion {
    let mut got = vec![];
    let mut pass = true;
    for (id, p, key, want) in QUOTED_VALUES {
        let row = run_check(id, p, DEFAULT_SEED).expect("registered id");
        let v = row.witness.get(key).cloned().unwrap_or_else(|| "missing".into());
        let ok = v == want;
        pass &= ok;
        let note = if ok { String::new() } else { " (mismatch)".into() };
        let status = if row.status == Status::Pass { String::new() } else { format!(" [row {}]", row.status) };
        got.push(format!("{id}@{p} {key}={v}{note}{status}"));
    }
    let c43 = run_check("thm-4.3", 11, DEFAULT_SEED).expect("registered id");
    let four_c2 = c43.witness.get("sum_mod_p_expected").map(String::as_str) == Some("3");
    pass &= four_c2;
    got.push(format!("4c^2 mod 11 = {}", c43.witness.get("sum_mod_p_expected").map_or("missing", String::as_str)));
    Criterion { number: 3, name: "specific values", pass, detail: got.join(", ") }
}

pub fn property_suites(seed: u64) -> Criterion {
    let start = Instant::now();
    let results = properties::all(seed);
    let checked: u64 = results.iter().map(|r| r.checked).sum();
    let bad: Vec<String> = results
        .iter()
        .filter(|r| !r.ok())
        .map(|r| format!("{}: {} violation(s), first {}", r.name, r.violations, r.first_violation.as_deref().unwrap_or("none checked")))
        .collect();
    let pass = bad.is_empty();
    let detail = if pass {
        format!("{} suites, {checked} cases, 0 violations, {:.1}s", results.len(), start.elapsed().as_secs_f64())
    } else {
        bad.join("; ")
    };
    Criterion { number: 4, name: "property suites", pass, detail }
}

/// Zero CONJ-FAILS, and any that appear carry a non-empty witness.
pub fn conjecture_scan(report: &SweepReport) -> Criterion {
    let rows: Vec<_> = rows_for(report, &CONJECTURE_IDS).collect();
    let holds = rows.iter().filter(|r| r.status == Status::ConjHolds).count();
    let fails: Vec<_> = rows.iter().filter(|r| r.status == Status::ConjFails).copied().collect();
    let bare = fails.iter().filter(|r| r.witness.is_empty()).count();
    let mut detail = format!("{} rows over primes ≤ {}: {holds} CONJ-HOLDS, {} CONJ-FAILS", rows.len(), report.range.end(), fails.len());
    if !fails.is_empty() {
        detail.push_str(&format!("; failing: {}", summarize_failures(fails.iter().copied())));
    }
    Criterion { number: 5, name: "conjecture scan", pass: fails.is_empty() && bare == 0 && holds > 0, detail }
}

/// Byte-identical JSON from two sweeps, the second on a different worker count.
pub fn determinism(first: &SweepReport, second: &SweepReport) -> Criterion {
    let (a, b) = (to_json(&first.rows), to_json(&second.rows));
    let pass = a == b && !first.rows.is_empty();
    let detail = format!("{} rows, {} bytes; identical = {}", first.rows.len(), a.len(), a == b);
    Criterion { number: 6, name: "determinism", pass, detail }
}

/// Run all six. Two full sweeps feed criteria 1, 5 and 6.
pub fn run_all(hi: u64, workers: usize, seed: u64, mut progress: impl FnMut(&Criterion)) -> Vec<Criterion> {
    let first = full_sweep(hi, workers, seed);
    let mut out = vec![];
    let mut push = |c: Criterion| {
        progress(&c);
        out.push(c);
    };
    push(theorem_sweep(&first));
    push(exact_oracle(300, 100));
    push(quoted_values());
    push(property_suites(seed));
    push(conjecture_scan(&first));
    let other = if workers == 1 { 2 } else { 1 };
    let second = full_sweep(hi, other, seed);
    push(determinism(&first, &second));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_lists_are_registered() {
        let all = all_ids();
        assert!(THEOREM_IDS.iter().chain(CONJECTURE_IDS.iter()).all(|id| all.contains(id)));
    }

    #[test]
    fn failures_are_grouped_by_check() {
        let rep = sweep(&["lem-4.4", "lem-4.5"], 5..=40, 1, DEFAULT_SEED).unwrap();
        let s = summarize_failures(rep.counterexamples());
        assert_eq!(s, "lem-4.4@31,37; lem-4.5@31,37");
    }

    #[test]
    fn criterion_line_format() {
        let c = Criterion { number: 9, name: "x", pass: false, detail: "d".into() };
        assert_eq!(c.to_string(), "criterion 9 [FAIL] x: d");
    }
}
