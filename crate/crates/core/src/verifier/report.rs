//! Report emission: JSON (schema "report-v1"), CSV and a text summary.

use std::fmt::Write as _;
use std::io::{self, Write};

use super::{CheckOutcome, SweepReport};

pub const SCHEMA: &str = "report-v1";
pub const CSV_HEADER: [&str; 6] = ["check", "p", "status", "ambiguity", "clause", "witness_json"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}; expected json, csv or text")),
        }
    }
}

/// Pretty JSON array, one object per (check, p); `[]` when empty.
pub fn to_json(rows: &[CheckOutcome]) -> String {
    if rows.is_empty() {
        return "[]\n".into();
    }
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> serde_json::Result<Vec<CheckOutcome>> {
    serde_json::from_str(text)
}

pub fn to_csv(rows: &[CheckOutcome]) -> String {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        let witness = serde_json::to_string(&r.witness).expect("witness serializes");
        w.write_record([
            r.check.as_str(),
            &r.p.to_string(),
            &r.status.to_string(),
            &r.ambiguity.to_string(),
            &r.clause,
            &witness,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn to_text(report: &SweepReport, timing: bool) -> String {
    let mut s = String::new();
    let (lo, hi) = (report.range.start(), report.range.end());
    let _ = writeln!(s, "sweep over primes {lo}..{hi}, seed {}", report.seed);
    let _ = writeln!(s, "{:<20} {:>6} {:>6} {:>8} {:>10} {:>10}", "check", "PASS", "FAIL", "SKIPPED", "CONJ-HOLDS", "CONJ-FAILS");
    for (id, t) in &report.tallies {
        let _ = writeln!(s, "{id:<20} {:>6} {:>6} {:>8} {:>10} {:>10}", t.pass, t.fail, t.skipped, t.conj_holds, t.conj_fails);
    }
    let t = report.total();
    let _ = writeln!(s, "{:<20} {:>6} {:>6} {:>8} {:>10} {:>10}", "total", t.pass, t.fail, t.skipped, t.conj_holds, t.conj_fails);
    let bad: Vec<&CheckOutcome> = report.counterexamples().collect();
    if bad.is_empty() {
        s.push_str("no counterexamples\n");
    } else {
        let _ = writeln!(s, "{} counterexample(s):", bad.len());
        for r in bad {
            let w: Vec<String> = r.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "  {} p={} {} [{}] {}", r.check, r.p, r.status, r.clause, w.join(" "));
        }
    }
    if timing {
        let _ = writeln!(s, "elapsed {:.2}s", report.elapsed.as_secs_f64());
    }
    s
}

/// Write the report in the chosen format. Only the text form carries timing.
pub fn emit_report(report: &SweepReport, format: Format, out: &mut impl Write) -> io::Result<()> {
    let body = match format {
        Format::Json => to_json(&report.rows),
        Format::Csv => to_csv(&report.rows),
        Format::Text => to_text(report, true),
    };
    out.write_all(body.as_bytes())
}
