use std::fs::File;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use congruence_core::curve::{char_sum_raw, point_count, CubicCurve};
use congruence_core::modular::{jacobi_symbol, rational_residue, sqrt_in_ext, Elem};
use congruence_core::poly::legendre_poly;
use congruence_core::primes::is_prime;
use congruence_core::quadform::{normalize, represent, NormRule, Scale};
use congruence_core::verifier::report::{emit_report, Format};
use congruence_core::verifier::{ids_of_kind, list_checks, resolve_workers, sweep, VerifyError, DEFAULT_SEED};
use congruence_core::PrimeCtx;
use congruence_lab_suite::{criteria, properties};

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "congruence-lab", version, about = "Check binomial-sum, Legendre-polynomial and character-sum congruences prime by prime")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the named checks over a range of primes.
    Check(CheckArgs),
    /// Run every registered check (or the given ids) over a range of primes.
    Sweep(SweepArgs),
    /// Run every conjecture check over a range of primes.
    ScanConjectures(SweepArgs),
    /// Evaluate a single quantity at one prime.
    Eval(EvalArgs),
    /// Find x, y ≥ 0 with a·x² + b·y² = p (or 4p).
    Represent(RepresentArgs),
    /// Print the check catalog.
    List {
        #[arg(long, value_enum, default_value_t = ListFormat::Text)]
        format: ListFormat,
    },
    /// Run the property suites and the acceptance criteria.
    Selftest(SelftestArgs),
}

#[derive(Args, Clone)]
struct RunOpts {
    /// Prime range a..b, both ends inclusive.
    #[arg(long, value_parser = parse_range, default_value = "5..1000")]
    primes: RangeInclusive<u64>,
    /// A single prime; overrides --primes.
    #[arg(short = 'p', long = "prime")]
    prime: Option<u64>,
    /// Smallest prime considered.
    #[arg(long, default_value_t = 5)]
    min: u64,
    #[arg(long, value_parser = parse_format, default_value = "text")]
    format: Format,
    /// Seed for the sampled checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (default: $CONGRUENCE_LAB_WORKERS, then all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Check id; repeat or comma-separate for several.
    #[arg(long, required = true, value_delimiter = ',')]
    id: Vec<String>,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',')]
    id: Vec<String>,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    /// Σ C(2k,k)²C(3k,k)/m^k, k < p, mod p^e.
    SumCentral,
    /// Σ (a·k+b)C(2k,k)²C(3k,k)/m^k mod p^e.
    SumWeighted,
    /// P_n(t) mod p, t = (rational)·√r.
    Legendre,
    /// Σ_x (x³+mx+n / p).
    CharSum,
    /// Points on y² = x³+mx+n over F_p.
    PointCount,
    /// Jacobi symbol (a/p).
    Symbol,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_enum)]
    what: Quantity,
    #[arg(short = 'p', long)]
    prime: u64,
    #[arg(short = 'm', long, allow_hyphen_values = true)]
    m: Option<i64>,
    #[arg(short = 'n', long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(short = 'e', long, default_value_t = 1)]
    e: u32,
    #[arg(short = 'a', long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(short = 'b', long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Rational t such as 5/4; multiplied by √r when --root is given.
    #[arg(short = 't', long, allow_hyphen_values = true, value_parser = parse_ratio)]
    t: Option<(i64, i64)>,
    #[arg(long, allow_hyphen_values = true)]
    root: Option<i64>,
    /// Degree for legendre; default [p/3].
    #[arg(long)]
    degree: Option<u64>,
}

#[derive(Args)]
struct RepresentArgs {
    /// Coefficients a,b of a·x² + b·y².
    #[arg(long, value_parser = parse_form)]
    form: (u64, u64),
    #[arg(long, value_parser = parse_scale, default_value = "p")]
    scale: Scale,
    #[arg(short = 'p', long)]
    prime: u64,
    /// Sign convention for x: l-mod3, c-mod4 or sign-free.
    #[arg(long)]
    normalize: Option<String>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Upper end of the acceptance sweeps.
    #[arg(long, default_value_t = criteria::SWEEP_HI)]
    up_to: u64,
    /// Property suites only.
    #[arg(long)]
    properties_only: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Text,
    Json,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo: u64 = a.trim().parse().map_err(|_| format!("bad lower bound {a:?}"))?;
    let hi: u64 = b.trim().parse().map_err(|_| format!("bad upper bound {b:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_scale(s: &str) -> Result<Scale, String> {
    s.parse()
}

fn parse_form(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|_| format!("bad coefficient {a:?}"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad coefficient {b:?}"))?;
    if a == 0 || b == 0 {
        return Err("form coefficients must be positive".into());
    }
    Ok((a, b))
}

fn parse_ratio(s: &str) -> Result<(i64, i64), String> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().map_err(|_| format!("bad numerator {n:?}"))?;
    let d: i64 = d.trim().parse().map_err(|_| format!("bad denominator {d:?}"))?;
    if d == 0 {
        return Err("zero denominator".into());
    }
    Ok((n, d))
}

/// A usage problem: message plus the flag it concerns.
struct Usage(String);

impl From<VerifyError> for Usage {
    fn from(e: VerifyError) -> Self {
        Usage(e.to_string())
    }
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> Usage {
    Usage(format!("{flag}: {msg}"))
}

fn run_sweep(ids: &[String], opts: &RunOpts) -> Result<u8, Usage> {
    let range = match opts.prime {
        Some(p) => {
            if p < 5 || !is_prime(p) {
                return Err(usage("--prime", format!("{p} is not a prime ≥ 5")));
            }
            p..=p
        }
        None => (*opts.primes.start()).max(opts.min)..=*opts.primes.end(),
    };
    let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
    let report = sweep(&ids, range, resolve_workers(opts.workers), opts.seed).map_err(|e| match e {
        VerifyError::UnknownCheck(_) => usage("--id", e),
        VerifyError::RangeTooLarge(_) => usage("--primes", e),
        _ => Usage(e.to_string()),
    })?;
    let written = match &opts.out {
        Some(path) => File::create(path).and_then(|mut f| emit_report(&report, opts.format, &mut f)),
        None => emit_report(&report, opts.format, &mut io::stdout().lock()),
    };
    if let Err(e) = written {
        return Err(usage("--out", e));
    }
    Ok(report.exit_code() as u8)
}

fn field(p: u64) -> Result<PrimeCtx, Usage> {
    PrimeCtx::new(p).map_err(|e| usage("-p", e))
}

fn need(v: Option<i64>, flag: &str) -> Result<i64, Usage> {
    v.ok_or_else(|| usage(flag, "required for this quantity"))
}

fn eval(args: &EvalArgs) -> Result<String, Usage> {
    let p = args.prime;
    Ok(match args.what {
        Quantity::SumCentral | Quantity::SumWeighted => {
            let ctx = field(p)?;
            let m = need(args.m, "-m")?;
            let r = match args.what {
                Quantity::SumCentral => ctx.sum_central(m, args.e),
                _ => ctx.sum_central_weighted(need(args.a, "-a")?, need(args.b, "-b")?, m, args.e),
            };
            r.map_err(|e| usage("-m/-e", e))?.to_string()
        }
        Quantity::Legendre => {
            let ctx = field(p)?;
            let (num, den) = args.t.ok_or_else(|| usage("-t", "required for this quantity"))?;
            let t = rational_residue(num, den, ctx.field()).map_err(|e| usage("-t", e))?;
            let n = args.degree.unwrap_or(p / 3);
            if n >= p {
                return Err(usage("--degree", "must be below p"));
            }
            match args.root {
                None => legendre_poly(&ctx, n, t).to_string(),
                Some(r) => {
                    let w = sqrt_in_ext(ctx.residue(r)).map_err(|e| usage("--root", e))?;
                    let vals: Vec<String> = [w, -w]
                        .iter()
                        .map(|&w| format!("w={w}: {}", legendre_poly(&ctx, n, w.scale(t.value()))))
                        .collect();
                    vals.join("\n")
                }
            }
        }
        Quantity::CharSum | Quantity::PointCount => {
            let ctx = field(p)?;
            let (m, n) = (ctx.residue(need(args.m, "-m")?), ctx.residue(need(args.n, "-n")?));
            if matches!(args.what, Quantity::CharSum) {
                char_sum_raw(&ctx, m.value(), n.value()).to_string()
            } else {
                point_count(&ctx, &CubicCurve::new(m, n)).map_err(|e| Usage(e.to_string()))?.to_string()
            }
        }
        Quantity::Symbol => {
            if p.is_multiple_of(2) {
                return Err(usage("-p", "the symbol needs an odd modulus"));
            }
            jacobi_symbol(need(args.a, "-a")?, p).to_string()
        }
    })
}

fn represent_cmd(args: &RepresentArgs) -> Result<String, Usage> {
    let (a, b) = args.form;
    if !is_prime(args.prime) {
        return Err(usage("-p", format!("{} is not prime", args.prime)));
    }
    let Some(rep) = represent(args.prime, a, b, args.scale) else {
        return Ok("none".into());
    };
    let rep = match args.normalize.as_deref() {
        None => rep,
        Some(rule) => {
            let rule = match rule {
                "l-mod3" => NormRule::LMod3,
                "c-mod4" => NormRule::CMod4,
                "sign-free" => NormRule::SignFree,
                _ => return Err(usage("--normalize", format!("unknown rule {rule:?}"))),
            };
            let ok = match rule {
                NormRule::LMod3 => rep.x % 3 != 0,
                NormRule::CMod4 => rep.x % 2 != 0,
                NormRule::SignFree => true,
            };
            if !ok {
                return Err(usage("--normalize", format!("x = {} does not admit {rule}", rep.x)));
            }
            normalize(rep, rule)
        }
    };
    Ok(rep.to_string())
}

fn list(format: ListFormat) -> String {
    let cat = list_checks();
    match format {
        ListFormat::Json => serde_json::to_string_pretty(&cat).expect("catalog serializes") + "\n",
        ListFormat::Text => cat.iter().map(|c| format!("{:<20} {:<10} {}\n{:<31} applies: {}\n", c.id, c.kind, c.summary, "", c.applicability)).collect(),
    }
}

fn selftest(args: &SelftestArgs) -> u8 {
    let mut failed = 0;
    if args.properties_only {
        for r in properties::all(args.seed) {
            let tag = if r.ok() { "PASS" } else { "FAIL" };
            println!("[{tag}] {}: {} cases, {} violations{}", r.name, r.checked, r.violations, r.first_violation.as_deref().map(|v| format!(", first: {v}")).unwrap_or_default());
            failed += !r.ok() as usize;
        }
    } else {
        let results = criteria::run_all(args.up_to, resolve_workers(args.workers), args.seed, |c| println!("{c}"));
        failed = results.iter().filter(|c| !c.pass).count();
    }
    u8::from(failed > 0)
}

fn run(cli: Cli) -> Result<u8, Usage> {
    match cli.command {
        Command::Check(a) => run_sweep(&a.id, &a.run),
        Command::Sweep(a) => {
            let ids = if a.id.is_empty() { criteria::all_ids().into_iter().map(String::from).collect() } else { a.id };
            run_sweep(&ids, &a.run)
        }
        Command::ScanConjectures(a) => {
            let ids: Vec<String> = if a.id.is_empty() { ids_of_kind(true).into_iter().map(String::from).collect() } else { a.id };
            run_sweep(&ids, &a.run)
        }
        Command::Eval(a) => {
            println!("{}", eval(&a)?);
            Ok(0)
        }
        Command::Represent(a) => {
            println!("{}", represent_cmd(&a)?);
            Ok(0)
        }
        Command::List { format } => {
            print!("{}", list(format));
            Ok(0)
        }
        Command::Selftest(a) => Ok(selftest(&a)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => {
            let _ = io::stdout().flush();
            ExitCode::from(code)
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5..20").unwrap(), 5..=20);
        assert_eq!(parse_range("5..=20").unwrap(), 5..=20);
        assert!(parse_range("20..5").is_err());
        assert!(parse_range("5-20").is_err());
    }

    #[test]
    fn ratios_and_forms() {
        assert_eq!(parse_ratio("5/4").unwrap(), (5, 4));
        assert_eq!(parse_ratio("-3").unwrap(), (-3, 1));
        assert!(parse_ratio("1/0").is_err());
        assert_eq!(parse_form("1,15").unwrap(), (1, 15));
        assert!(parse_form("0,15").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn eval_examples() {
        let cli = Cli::try_parse_from(["congruence-lab", "eval", "sum-central", "-m", "8", "-p", "11", "-e", "1"]).unwrap();
        let Command::Eval(a) = cli.command else { panic!() };
        assert_eq!(eval(&a).ok(), Some("3".to_string()));
    }
}
