//! Registry of checks, per-prime dispatch and parallel sweeps.

mod checks;
pub mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::context::PrimeCtx;
use crate::primes::primes_in;

pub use checks::REGISTRY;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_100_602;

/// Largest prime a sweep accepts; per-prime tables need p < 2^26.
pub const SWEEP_CAP: u64 = 1 << 26;

pub const WORKERS_ENV: &str = "CONGRUENCE_LAB_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Theorem,
    Corollary,
    Lemma,
    Conjecture,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Theorem => "theorem",
            Kind::Corollary => "corollary",
            Kind::Lemma => "lemma",
            Kind::Conjecture => "conjecture",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
    #[serde(rename = "CONJ-HOLDS")]
    ConjHolds,
    #[serde(rename = "CONJ-FAILS")]
    ConjFails,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
            Status::ConjHolds => "CONJ-HOLDS",
            Status::ConjFails => "CONJ-FAILS",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambiguity {
    #[serde(rename = "all-choices")]
    AllChoices,
    #[serde(rename = "some-choices")]
    SomeChoices,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl fmt::Display for Ambiguity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambiguity::AllChoices => "all-choices",
            Ambiguity::SomeChoices => "some-choices",
            Ambiguity::NotApplicable => "n/a",
        })
    }
}

pub type Witness = BTreeMap<String, String>;

mod decimal {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    #[serde(with = "decimal")]
    pub p: u64,
    pub status: Status,
    pub ambiguity: Ambiguity,
    pub witness: Witness,
    pub clause: String,
}

/// What a runner reports when the check applied.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub holds: bool,
    pub ambiguity: Ambiguity,
    pub clause: String,
    pub witness: Witness,
}

/// Why a runner stopped without a verdict.
#[derive(Debug, Clone)]
pub enum Halt {
    /// Hypothesis not met at this prime.
    Skip(String),
    /// Something the check needed could not be computed.
    Broken(String),
}

pub type Run = Result<Verdict, Halt>;

/// Everything a runner sees: the prime's tables and a seeded RNG source.
pub struct Env<'a> {
    pub ctx: &'a PrimeCtx,
    pub seed: u64,
    pub id: &'static str,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

impl Env<'_> {
    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    /// Independent of scheduling: a function of (seed, check, p) only.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(splitmix(splitmix(self.seed ^ fnv1a(self.id)) ^ self.p()))
    }
}

pub struct CheckSpec {
    pub id: &'static str,
    pub kind: Kind,
    pub summary: &'static str,
    pub applicability: &'static str,
    pub(crate) run: fn(&Env) -> Run,
}

impl fmt::Debug for CheckSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckSpec").field("id", &self.id).field("kind", &self.kind).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub kind: Kind,
    pub summary: &'static str,
    pub applicability: &'static str,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("{0} is not a prime ≥ 5")]
    NotPrime(u64),
    #[error("range bound {0} exceeds the sweep cap 2^26")]
    RangeTooLarge(u64),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// The registry in stable order.
pub fn list_checks() -> Vec<CatalogEntry> {
    REGISTRY
        .iter()
        .map(|c| CatalogEntry { id: c.id, kind: c.kind, summary: c.summary, applicability: c.applicability })
        .collect()
}

pub fn find_check(id: &str) -> Result<&'static CheckSpec, VerifyError> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))
}

fn registry_index(id: &str) -> usize {
    REGISTRY.iter().position(|c| c.id == id).unwrap_or(usize::MAX)
}

fn panic_text(e: Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| e.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".to_string())
}

/// Run one check against an existing context.
pub fn run_with_ctx(spec: &'static CheckSpec, ctx: &PrimeCtx, seed: u64) -> CheckOutcome {
    let env = Env { ctx, seed, id: spec.id };
    let result = catch_unwind(AssertUnwindSafe(|| (spec.run)(&env))).unwrap_or_else(|e| Err(Halt::Broken(panic_text(e))));
    let conj = spec.kind == Kind::Conjecture;
    let (status, ambiguity, clause, witness) = match result {
        Ok(v) => {
            let status = match (v.holds, conj) {
                (true, false) => Status::Pass,
                (false, false) => Status::Fail,
                (true, true) => Status::ConjHolds,
                (false, true) => Status::ConjFails,
            };
            (status, v.ambiguity, v.clause, v.witness)
        }
        Err(Halt::Skip(reason)) => {
            (Status::Skipped, Ambiguity::NotApplicable, "not applicable".to_string(), Witness::from([("reason".to_string(), reason)]))
        }
        Err(Halt::Broken(err)) => (
            if conj { Status::ConjFails } else { Status::Fail },
            Ambiguity::NotApplicable,
            "evaluation error".to_string(),
            Witness::from([("error".to_string(), err)]),
        ),
    };
    CheckOutcome { check: spec.id.to_string(), p: ctx.p(), status, ambiguity, witness, clause }
}

pub fn run_check(id: &str, p: u64, seed: u64) -> Result<CheckOutcome, VerifyError> {
    let spec = find_check(id)?;
    if p < 5 {
        return Err(VerifyError::NotPrime(p));
    }
    let ctx = PrimeCtx::new(p).map_err(|_| if p >= SWEEP_CAP { VerifyError::RangeTooLarge(p) } else { VerifyError::NotPrime(p) })?;
    Ok(run_with_ctx(spec, &ctx, seed))
}

/// Explicit request first, then the environment variable, then the machine.
pub fn resolve_workers(requested: Option<usize>) -> usize {
    requested
        .filter(|&n| n > 0)
        .or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.trim().parse().ok()).filter(|&n: &usize| n > 0))
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub conj_holds: usize,
    pub conj_fails: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skipped => self.skipped += 1,
            Status::ConjHolds => self.conj_holds += 1,
            Status::ConjFails => self.conj_fails += 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub range: RangeInclusive<u64>,
    pub seed: u64,
    /// Sorted by (registry position of the check, p).
    pub rows: Vec<CheckOutcome>,
    /// In registry order.
    pub tallies: Vec<(String, Tally)>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.rows.iter().filter(|r| matches!(r.status, Status::Fail | Status::ConjFails))
    }

    pub fn total(&self) -> Tally {
        let mut t = Tally::default();
        for r in &self.rows {
            t.add(r.status);
        }
        t
    }

    /// 0 all clear, 1 any FAIL, 2 any CONJ-FAILS (and no FAIL).
    pub fn exit_code(&self) -> i32 {
        let t = self.total();
        if t.fail > 0 {
            1
        } else if t.conj_fails > 0 {
            2
        } else {
            0
        }
    }
}

/// Every (check, p) pair over the primes in range, one shared context per prime.
pub fn sweep(ids: &[&str], range: RangeInclusive<u64>, workers: usize, seed: u64) -> Result<SweepReport, VerifyError> {
    let mut specs = ids.iter().map(|id| find_check(id)).collect::<Result<Vec<_>, _>>()?;
    specs.sort_by_key(|s| registry_index(s.id));
    specs.dedup_by_key(|s| s.id);
    if *range.end() >= SWEEP_CAP {
        return Err(VerifyError::RangeTooLarge(*range.end()));
    }
    let start = Instant::now();
    let lo = (*range.start()).max(5);
    let primes = if lo > *range.end() { vec![] } else { primes_in(lo..=*range.end()) };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| VerifyError::Pool(e.to_string()))?;
    // Largest primes first so the tail of the schedule is short.
    let mut rows: Vec<CheckOutcome> = pool.install(|| {
        primes
            .par_iter()
            .rev()
            .flat_map_iter(|&p| {
                let ctx = PrimeCtx::new(p).expect("prime below the sweep cap");
                specs.iter().map(|s| run_with_ctx(s, &ctx, seed)).collect::<Vec<_>>()
            })
            .collect()
    });
    rows.sort_by_key(|r| (registry_index(&r.check), r.p));
    let mut tallies: Vec<(String, Tally)> = Vec::new();
    for s in specs {
        let mut t = Tally::default();
        for r in rows.iter().filter(|r| r.check == s.id) {
            t.add(r.status);
        }
        tallies.push((s.id.to_string(), t));
    }
    Ok(SweepReport { range, seed, rows, tallies, elapsed: start.elapsed() })
}

/// Ids of a given kind, in registry order.
pub fn ids_of_kind(conjectures: bool) -> Vec<&'static str> {
    REGISTRY.iter().filter(|c| (c.kind == Kind::Conjecture) == conjectures).map(|c| c.id).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_unique_and_counted() {
        let ids: Vec<_> = REGISTRY.iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert_eq!(ids.len(), 54);
        assert_eq!(ids.first(), Some(&"thm-2.1"));
        assert!(REGISTRY.iter().all(|c| !c.applicability.is_empty() && !c.summary.is_empty()));
    }

    #[test]
    fn status_names() {
        assert_eq!(serde_json::to_string(&Status::ConjFails).unwrap(), "\"CONJ-FAILS\"");
        assert_eq!(serde_json::to_string(&Ambiguity::NotApplicable).unwrap(), "\"n/a\"");
        assert_eq!(Status::Skipped.to_string(), "SKIPPED");
    }

    #[test]
    fn rng_depends_on_id_and_prime_only() {
        use rand::Rng;
        let a = PrimeCtx::new(101).unwrap();
        let b = PrimeCtx::new(103).unwrap();
        let draw = |ctx, id| Env { ctx, seed: 7, id }.rng().random::<u64>();
        assert_eq!(draw(&a, "thm-3.1"), draw(&a, "thm-3.1"));
        assert_ne!(draw(&a, "thm-3.1"), draw(&b, "thm-3.1"));
        assert_ne!(draw(&a, "thm-3.1"), draw(&a, "cor-3.1"));
    }

    #[test]
    fn unknown_ids_and_bad_primes() {
        assert_eq!(run_check("thm-9.9", 7, 0).unwrap_err(), VerifyError::UnknownCheck("thm-9.9".into()));
        assert_eq!(run_check("thm-4.2", 9, 0).unwrap_err(), VerifyError::NotPrime(9));
        assert!(sweep(&["thm-4.2"], 5..=(1 << 27), 1, 0).is_err());
    }

    #[test]
    fn worker_request_wins() {
        assert_eq!(resolve_workers(Some(3)), 3);
        assert!(resolve_workers(None) >= 1);
    }

    #[test]
    fn empty_range_sweeps_to_nothing() {
        let r = sweep(&["thm-4.2"], 24..=28, 1, 0).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn exit_code_precedence() {
        let mut r = sweep(&["conj-4.1", "thm-4.2"], 5..=13, 1, 0).unwrap();
        assert_eq!(r.exit_code(), 0);
        r.rows[0].status = Status::ConjFails;
        assert_eq!(r.exit_code(), 2);
        let last = r.rows.len() - 1;
        r.rows[last].status = Status::Fail;
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.counterexamples().count(), 2);
    }
}
