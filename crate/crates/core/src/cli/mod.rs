//! Command-line front end. Every command emits one table, as CSV with
//! `#`-prefixed metadata lines or as JSON.
//!
//! Exit codes: 0 ok, 1 usage or domain error, 2 theory and brute force
//! disagree, 3 a complexity bound is violated.

pub mod output;
pub mod sweep;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::diagram::{analogous_two_safe, brute_census, census, two_safe_primes};
use crate::generator::{predict_orbit, Generator, SeedClass};
use crate::ivsets::{build_iv_set, is_iv_member, phi_fibers, ParamPoint};
use crate::lcp::{berlekamp_massey_profile, clamp_for_display, crossover, verify_bounds};
use crate::numtheory::{Fp, PrimeField};
use crate::Error;
use output::{real, Format, Table};
use sweep::{run_sweep, PrimeClass, SweepConfig, SweepKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lmgen",
    version,
    about = "Logistic map generators over prime fields"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tail and cycle of one sequence, optionally against the predicted shape.
    Orbit(OrbitArgs),
    /// The initial-value set of p.
    Ivset(PrimeArg),
    /// The four-to-one parametrization of the initial-value set.
    Fibers(PrimeArg),
    /// Cycle counts and periods on the initial-value set.
    Census(CensusArgs),
    /// Per-bit-size statistics over many primes.
    Sweep(SweepArgs),
    /// Linear complexity profile, with the lower bounds if asked.
    Lcp(LcpArgs),
    /// Primes p = 2 p1 + 1 with p1 = 2 p2 + 1, all prime.
    Safeprimes(SafePrimesArgs),
}

#[derive(Args, Debug)]
struct PrimeArg {
    #[arg(long)]
    p: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapKind {
    Logistic,
    Dickson,
    LogisticGeneral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassChoice {
    /// Initial-value formula for seeds in the set, Dickson-side formula otherwise.
    Auto,
    Iv,
    Any,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = MapKind::Logistic)]
    kind: MapKind,
    /// Multiplier for `logistic-general`.
    #[arg(long)]
    mu: Option<u64>,
    /// Compare with the tail and period predicted from multiplicative orders.
    #[arg(long)]
    predict: bool,
    #[arg(long, value_enum, default_value_t = ClassChoice::Auto)]
    class: ClassChoice,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    p: u64,
    /// Also enumerate the cycles directly and compare.
    #[arg(long)]
    brute: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClassFilter {
    #[value(name = "3mod4")]
    ThreeMod4,
    #[value(name = "1mod4")]
    OneMod4,
    Both,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    kind: SweepKind,
    #[arg(long)]
    n_min: u32,
    #[arg(long)]
    n_max: u32,
    #[arg(long, value_enum, default_value_t = ClassFilter::Both)]
    class: ClassFilter,
    /// Primes drawn per bit size and class above the exhaustive range.
    #[arg(long, default_value_t = sweep::DEFAULT_SAMPLE)]
    sample: usize,
    /// Sampling seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = sweep::DEFAULT_EXHAUSTIVE_MAX_BITS)]
    exhaustive_max_bits: u32,
    /// Stop after this many seconds and mark the output as truncated.
    #[arg(long)]
    budget_secs: Option<f64>,
}

#[derive(Args, Debug)]
struct LcpArgs {
    #[arg(long)]
    p: u64,
    /// Defaults to the smallest element of the initial-value set.
    #[arg(long)]
    seed: Option<u64>,
    /// Defaults to twice the preperiod plus period.
    #[arg(long)]
    n_max: Option<u64>,
    /// Add the three lower-bound columns and check them.
    #[arg(long)]
    bounds: bool,
}

#[derive(Args, Debug)]
struct SafePrimesArgs {
    #[arg(long)]
    limit: u64,
    /// Search p = 2 p1 - 1, p = 1 (mod 4), with p1 safe.
    #[arg(long)]
    analogous: bool,
}

/// Result of a command that ran to completion.
struct Report {
    table: Table,
    status: i32,
    diagnostics: Vec<String>,
}

impl Report {
    fn ok(table: Table) -> Self {
        Report {
            table,
            status: EXIT_OK,
            diagnostics: Vec::new(),
        }
    }
}

/// Runs the CLI on the process arguments and stdio.
pub fn main_with_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI on explicit arguments (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_ERROR
                }
            };
        }
    };
    let mut report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    report.table.prepend_meta(vec![
        (
            "tool",
            format!("lmgen {}", env!("CARGO_PKG_VERSION")).into(),
        ),
        ("args", command_line(&args).into()),
    ]);
    for line in &report.diagnostics {
        let _ = writeln!(err, "{line}");
    }
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            report.table.write(cli.format, &mut w)?;
            w.flush()
        }),
        None => report.table.write(cli.format, out),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_ERROR;
    }
    report.status
}

fn command_line(args: &[OsString]) -> String {
    // drop the program name and the output path so the text is stable
    let mut parts = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        let s = a.to_string_lossy();
        if skip {
            skip = false;
            continue;
        }
        if s == "--out" {
            skip = true;
            continue;
        }
        if s.starts_with("--out=") {
            continue;
        }
        parts.push(s.into_owned());
    }
    parts.join(" ")
}

fn execute(cmd: &Command) -> crate::Result<Report> {
    match cmd {
        Command::Orbit(a) => cmd_orbit(a),
        Command::Ivset(a) => cmd_ivset(a.p),
        Command::Fibers(a) => cmd_fibers(a.p),
        Command::Census(a) => cmd_census(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Lcp(a) => cmd_lcp(a),
        Command::Safeprimes(a) => cmd_safeprimes(a),
    }
}

fn element(field: PrimeField, v: u64, what: &str) -> crate::Result<Fp> {
    if v >= field.modulus() {
        return Err(Error::domain(format!(
            "{what} {v} must be below p = {}",
            field.modulus()
        )));
    }
    Ok(field.elem(v))
}

fn cmd_orbit(a: &OrbitArgs) -> crate::Result<Report> {
    let field = PrimeField::new(a.p)?;
    let seed = element(field, a.seed, "seed")?;
    let (generator, kind) = match a.kind {
        MapKind::Logistic => (Generator::logistic(field)?, "logistic"),
        MapKind::Dickson => (Generator::dickson(field), "dickson"),
        MapKind::LogisticGeneral => {
            let mu =
                a.mu.ok_or_else(|| Error::domain("--mu is required for logistic-general"))?;
            (
                Generator::logistic_general(field, element(field, mu, "mu")?)?,
                "logistic-general",
            )
        }
    };
    let orbit = generator.orbit(seed, a.p as usize + 1)?;
    let mut t = Table::new(["n", "value", "part"]);
    t.meta("p", a.p)
        .meta("seed", a.seed)
        .meta("kind", kind)
        .meta("tail_length", orbit.tail_length())
        .meta("period", orbit.period());
    for (i, v) in orbit.tail.iter().chain(&orbit.cycle).enumerate() {
        let part = if i < orbit.tail_length() {
            "tail"
        } else {
            "cycle"
        };
        t.row(vec![i.into(), v.value().into(), part.into()]);
    }
    let mut status = EXIT_OK;
    let mut diagnostics = Vec::new();
    if a.predict {
        if a.kind != MapKind::Logistic {
            return Err(Error::domain(
                "--predict applies to the logistic map with mu = 4",
            ));
        }
        let class = match a.class {
            ClassChoice::Iv => SeedClass::IvSet,
            ClassChoice::Any => SeedClass::Any,
            ClassChoice::Auto if is_iv_member(field, seed) => SeedClass::IvSet,
            ClassChoice::Auto => SeedClass::Any,
        };
        let pred = predict_orbit(field, seed, class)?;
        let matches =
            pred.tail_length == orbit.tail_length() as u64 && pred.period == orbit.period() as u64;
        t.meta(
            "seed_class",
            serde_json::to_value(class).expect("plain enum"),
        )
        .meta("predicted_tail_length", pred.tail_length)
        .meta("predicted_period", pred.period)
        .meta("parameter_order", pred.order)
        .meta(
            "degenerate",
            pred.degenerate
                .map(|d| serde_json::to_value(d).expect("plain enum"))
                .unwrap_or(Value::Null),
        )
        .meta("prediction_matches", matches);
        if !matches {
            status = EXIT_MISMATCH;
            diagnostics.push(format!(
                "mismatch: predicted tail {} period {}, observed tail {} period {}",
                pred.tail_length,
                pred.period,
                orbit.tail_length(),
                orbit.period()
            ));
        }
    }
    Ok(Report {
        table: t,
        status,
        diagnostics,
    })
}

fn cmd_ivset(p: u64) -> crate::Result<Report> {
    let field = PrimeField::new(p)?;
    let mut t = Table::new(["a"]);
    t.meta("p", p);
    if p == 3 {
        t.meta("size", 0)
            .meta("note", "the initial-value set is empty for p = 3");
        return Ok(Report::ok(t));
    }
    let set = build_iv_set(field)?;
    t.meta("class", set.class.label())
        .meta("size", set.len())
        .meta("expected_size", set.class.expected_size(p));
    for v in set.values() {
        t.row(vec![v.into()]);
    }
    Ok(Report::ok(t))
}

fn cmd_fibers(p: u64) -> crate::Result<Report> {
    let field = PrimeField::new(p)?;
    let fibers = phi_fibers(field)?;
    let split = p % 4 == 3;
    let mut t = if split {
        Table::new(["a", "t1", "t2", "t3", "t4"])
    } else {
        Table::new([
            "a", "t1_c0", "t1_c1", "t2_c0", "t2_c1", "t3_c0", "t3_c1", "t4_c0", "t4_c1",
        ])
    };
    t.meta("p", p);
    if split {
        t.meta("parameters", "t in F_p, members sorted ascending");
    } else {
        let ns = crate::numtheory::fp2_context(p)?.non_residue().value();
        t.meta("non_residue", ns).meta(
            "parameters",
            format!(
                "t = c0 + c1*alpha with alpha^2 = {ns}; order t, -t, 1/t, -1/t from the smallest t"
            ),
        );
    }
    for fiber in &fibers {
        let mut row: Vec<Value> = vec![fiber.image.value().into()];
        if split {
            row.extend(fiber.members.iter().map(|m| Value::from(m.coords().0)));
        } else {
            for m in fiber.orbit_order() {
                let ParamPoint::Torus(x) = m else {
                    unreachable!("torus fibers hold extension elements")
                };
                row.push(x.c0().value().into());
                row.push(x.c1().value().into());
            }
        }
        t.row(row);
    }
    Ok(Report::ok(t))
}

fn cmd_census(a: &CensusArgs) -> crate::Result<Report> {
    let field = PrimeField::new(a.p)?;
    let c = census(field)?;
    let mut t = Table::new(["d", "ord_d_2", "phi_d", "n_d", "c_d", "minus_one_reachable"]);
    t.meta("p", c.p)
        .meta("m", c.m)
        .meta("class", c.class.label())
        .meta("total_cycles", c.total_cycles())
        .meta("covered", c.covered());
    for r in &c.rows {
        t.row(vec![
            r.d.into(),
            r.ord_d_2.into(),
            r.phi_d.into(),
            r.n_d.into(),
            r.c_d.into(),
            r.minus_one_reachable.into(),
        ]);
    }
    let mut report = Report::ok(t);
    if a.brute {
        let brute = brute_census(field)?;
        let agree = brute.period_multiset() == c.period_multiset();
        report
            .table
            .meta("brute_cycles", brute.cycles.len())
            .meta("brute_matches", agree);
        if !agree {
            report.status = EXIT_MISMATCH;
            report.diagnostics.push(format!(
                "mismatch: predicted periods {:?}, enumerated {:?}",
                c.period_multiset(),
                brute.period_multiset()
            ));
        }
    }
    Ok(report)
}

fn cmd_sweep(a: &SweepArgs) -> crate::Result<Report> {
    let classes = match a.class {
        ClassFilter::ThreeMod4 => vec![PrimeClass::ThreeMod4],
        ClassFilter::OneMod4 => vec![PrimeClass::OneMod4],
        ClassFilter::Both => vec![PrimeClass::ThreeMod4, PrimeClass::OneMod4],
    };
    let budget = match a.budget_secs {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(Error::domain("--budget-secs must be a nonnegative number"))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let cfg = SweepConfig {
        kind: a.kind,
        n_min: a.n_min,
        n_max: a.n_max,
        classes,
        sample: a.sample,
        seed: a.seed,
        exhaustive_max_bits: a.exhaustive_max_bits,
        budget,
    };
    let outcome = run_sweep(&cfg)?;
    let mut t = Table::new([
        "bits",
        "prime_class",
        "mode",
        "primes_tested",
        "pct_maximal",
        "mean_cycles",
        "mean_period_per_cycle",
        "mean_period_per_seed",
    ]);
    t.meta("kind", a.kind.to_possible_value().expect("no skipped variants").get_name())
        .meta("bits", "N-bit primes are those in [2^(N-1), 2^N), excluding 2 and 3")
        .meta(
            "sampling",
            format!(
                "exhaustive for N <= {}; above that {} distinct primes per (N, class) drawn uniformly by ChaCha8 with seed {} and stream 2N + class (0 for 3mod4, 1 for 1mod4)",
                a.exhaustive_max_bits, a.sample, a.seed
            ),
        )
        .meta("pct_maximal", "percentage of primes whose initial-value set is one cycle")
        .meta("mean_cycles", "mean over primes of the number of cycles on the initial-value set")
        .meta("mean_period_per_cycle", "mean over primes of sum(n_d c_d) / sum(n_d)")
        .meta("mean_period_per_seed", "mean over primes of sum(n_d c_d^2) / sum(n_d c_d)");
    for r in &outcome.rows {
        let opt = |x: Option<f64>| x.map(real).unwrap_or(Value::Null);
        t.row(vec![
            r.bits.into(),
            r.class.label().into(),
            if r.sampled { "sampled" } else { "exhaustive" }.into(),
            r.primes_tested.into(),
            real(r.pct_maximal),
            opt(r.mean_cycles),
            opt(r.mean_period_per_cycle),
            opt(r.mean_period_per_seed),
        ]);
    }
    let mut report = Report::ok(t);
    if let Some((bits, class)) = outcome.truncated_at {
        let msg = format!(
            "budget exhausted before N = {bits}, class {}",
            class.label()
        );
        report.table.meta("truncated", msg.clone());
        report
            .diagnostics
            .push(format!("warning: output truncated, {msg}"));
    }
    Ok(report)
}

fn cmd_lcp(a: &LcpArgs) -> crate::Result<Report> {
    let field = PrimeField::new(a.p)?;
    let lm = Generator::logistic(field)?;
    let seed = match a.seed {
        Some(s) => element(field, s, "seed")?,
        None => *build_iv_set(field)?
            .elements
            .first()
            .ok_or_else(|| Error::domain("the initial-value set is empty"))?,
    };
    let orbit = lm.orbit(seed, a.p as usize + 1)?;
    let period = orbit.period() as u64;
    let n_max = a.n_max.unwrap_or(2 * (orbit.tail_length() as u64 + period));
    if n_max == 0 {
        return Err(Error::domain("--n-max must be positive"));
    }
    let mut columns = vec!["n", "l"];
    if a.bounds {
        columns.extend(["lcp1", "lcp2", "dickson"]);
    }
    let mut t = Table::new(columns);
    t.meta("p", a.p)
        .meta("seed", seed.value())
        .meta("tail_length", orbit.tail_length())
        .meta("period", period);
    let mut report;
    if a.bounds {
        let r = verify_bounds(field, seed, n_max)?;
        t.meta("m", r.m)
            .meta("linear_complexity", r.linear_complexity)
            .meta(
                "crossover",
                crossover(r.period, r.m, r.linear_complexity, n_max)
                    .map(Value::from)
                    .unwrap_or(Value::Null),
            )
            .meta("display", "negative bound values are shown as 0")
            .meta("violations", r.violations.len());
        for row in &r.rows {
            t.row(vec![
                row.n.into(),
                row.l.into(),
                real(clamp_for_display(row.lcp1)),
                real(clamp_for_display(row.lcp2)),
                real(clamp_for_display(row.dickson)),
            ]);
        }
        report = Report::ok(t);
        for v in &r.violations {
            report.status = EXIT_VIOLATION;
            report.diagnostics.push(format!(
                "violation: p = {}, seed = {}, N = {}: L = {} < {:?} bound {:.9}",
                v.p, v.seed, v.n, v.l, v.kind, v.bound
            ));
        }
    } else {
        let seq: Vec<Fp> = lm.iter(seed).take(n_max as usize).collect();
        let profile = berlekamp_massey_profile(field, &seq, n_max as usize)?;
        t.meta("linear_complexity", profile.linear_complexity());
        for (i, l) in profile.profile.iter().enumerate() {
            t.row(vec![(i + 1).into(), (*l).into()]);
        }
        report = Report::ok(t);
    }
    Ok(report)
}

fn cmd_safeprimes(a: &SafePrimesArgs) -> crate::Result<Report> {
    let mut t = Table::new(["p", "p1", "p2"]);
    t.meta("limit", a.limit);
    if a.analogous {
        t.meta("form", "p = 2 p1 - 1, p1 = 2 p2 + 1, p = 1 (mod 4)");
        for p in analogous_two_safe(a.limit) {
            let p1 = p.div_ceil(2);
            t.row(vec![p.into(), p1.into(), ((p1 - 1) / 2).into()]);
        }
    } else {
        t.meta("form", "p = 2 p1 + 1, p1 = 2 p2 + 1");
        for p in two_safe_primes(a.limit) {
            let p1 = (p - 1) / 2;
            t.row(vec![p.into(), p1.into(), ((p1 - 1) / 2).into()]);
        }
    }
    Ok(Report::ok(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("lmgen").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn body(csv: &str) -> Vec<&str> {
        csv.lines().filter(|l| !l.starts_with('#')).collect()
    }

    #[test]
    fn orbit_examples() {
        let (code, out, _) = run_str(&["orbit", "--p", "23", "--seed", "1"]);
        assert_eq!(code, 0);
        assert_eq!(
            body(&out),
            [
                "n,value,part",
                "0,1,cycle",
                "1,8,cycle",
                "2,12,cycle",
                "3,3,cycle",
                "4,2,cycle"
            ]
        );
        let (code, out, _) = run_str(&["orbit", "--p", "17", "--seed", "12", "--predict"]);
        assert_eq!(code, 0);
        assert!(out.contains("# period: 1\n"));
        assert!(out.contains("# prediction_matches: true\n"));
    }

    #[test]
    fn orbit_errors() {
        let (code, _, err) = run_str(&["orbit", "--p", "4", "--seed", "1"]);
        assert_eq!(code, 1);
        assert!(err.contains("error"));
        assert_eq!(run_str(&["orbit", "--p", "23", "--seed", "23"]).0, 1);
        assert_eq!(run_str(&["orbit", "--p", "23"]).0, 1);
        assert_eq!(
            run_str(&[
                "orbit",
                "--p",
                "23",
                "--seed",
                "1",
                "--kind",
                "dickson",
                "--predict"
            ])
            .0,
            1
        );
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("census"));
        assert_eq!(run_str(&[]).0, 1);
    }

    #[test]
    fn ivset_small_primes() {
        let (code, out, _) = run_str(&["ivset", "--p", "5"]);
        assert_eq!(code, 0);
        assert_eq!(body(&out), ["a", "3"]);
        let (code, out, _) = run_str(&["ivset", "--p", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("# note:"));
        assert_eq!(body(&out), ["a"]);
    }

    #[test]
    fn census_brute_agrees() {
        let (code, out, _) = run_str(&["census", "--p", "23", "--brute"]);
        assert_eq!(code, 0);
        assert_eq!(body(&out)[1], "11,10,10,1,5,true");
        assert!(out.contains("# brute_matches: true\n"));
    }

    #[test]
    fn lcp_zero_seed_and_violation_free_bounds() {
        let (code, out, _) = run_str(&["lcp", "--p", "23", "--seed", "0", "--n-max", "6"]);
        assert_eq!(code, 0);
        assert!(body(&out)[1..].iter().all(|l| l.ends_with(",0")));
        let (code, out, _) = run_str(&["lcp", "--p", "23", "--seed", "1", "--bounds"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(body(&out).len(), 11);
        assert_eq!(
            run_str(&["lcp", "--p", "23", "--seed", "4", "--bounds"]).0,
            1
        );
    }

    #[test]
    fn safeprimes_lists() {
        let (_, out, _) = run_str(&["safeprimes", "--limit", "10"]);
        assert_eq!(body(&out), ["p,p1,p2"]);
        let (_, out, _) = run_str(&["safeprimes", "--limit", "50"]);
        assert_eq!(body(&out), ["p,p1,p2", "11,5,2", "23,11,5", "47,23,11"]);
        let (_, out, _) = run_str(&["safeprimes", "--limit", "100", "--analogous"]);
        assert_eq!(body(&out), ["p,p1,p2", "13,7,3"]);
    }

    #[test]
    fn json_output_and_out_file() {
        let (code, out, _) = run_str(&["--format", "json", "ivset", "--p", "23"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let vals: Vec<u64> = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["a"].as_u64().unwrap())
            .collect();
        assert_eq!(vals, [1, 2, 3, 8, 12]);

        let dir = std::env::temp_dir().join(format!("lmgen-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("iv.csv");
        let (code, out, _) = run_str(&["ivset", "--p", "17", "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.is_empty());
        let written = std::fs::read_to_string(&path).unwrap();
        assert_eq!(body(&written), ["a", "3", "7", "12", "14"]);
        assert!(written.contains("# args: ivset --p 17\n"));
        std::fs::remove_dir_all(dir).unwrap();
    }
}
