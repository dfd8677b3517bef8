use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use lehmer_core::arith::rational::{fraction_string, to_decimal};
use lehmer_core::arith::{euler_phi, factor, sigma, Factorization};
use lehmer_core::bounds::check_bounds;
use lehmer_core::carmichael::{carmichael_in_range, korselt_check};
use lehmer_core::group::{parse_group_spec, SpectrumEngine};
use lehmer_core::lehmer::{abundancy_bound, lehmer_check, min_k, parse_profile, LehmerVerdict};
use lehmer_core::scan::{
    batch_verdicts, default_jobs, scan_totient_divisibility, verify_paper_constants, write_records,
    ReportFormat, ReportRecord, ScanOptions, DEFAULT_BATCH_LIMIT, DEFAULT_SCAN_LIMIT,
    DEFAULT_SCAN_SEGMENT, JOBS_ENV,
};
use lehmer_core::{Error, ExactRational};

#[derive(Parser)]
#[command(
    name = "lehmer",
    version,
    about = "Element-order sums, Carmichael numbers and Lehmer's totient problem"
)]
struct Cli {
    /// Output format; json is the exact, machine-readable form.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Significant digits in decimal approximations.
    #[arg(long, global = true, default_value_t = 10)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Prime factorization of N.
    Factor { n: BigUint },
    /// Euler's totient of N.
    Phi { n: BigUint },
    /// Sum of divisors of N.
    Sigma { n: BigUint },
    /// Korselt certificate for N, or every Carmichael number in --from..--to.
    Carmichael {
        n: Option<BigUint>,
        #[arg(long, requires = "to", conflicts_with = "n")]
        from: Option<u64>,
        #[arg(long, requires = "from")]
        to: Option<u64>,
    },
    /// psi, psi' and psi'' of a group such as "C2 x C2 x C15", "D6", "Q8 x C3".
    Psi {
        #[arg(long)]
        group: String,
    },
    /// Every applicable bound on psi for a group.
    Bounds {
        #[arg(long)]
        group: String,
    },
    /// Full Lehmer verdict for N.
    LehmerCheck { n: BigUint },
    /// Proven floor on k for a divisibility profile such as "3!|n,5|n,q=5".
    MinK {
        #[arg(long, default_value = "generic")]
        profile: String,
    },
    /// Scan a range for n with phi(n) | n - 1.
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, env = JOBS_ENV)]
        jobs: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SCAN_SEGMENT)]
        segment: u64,
        #[arg(long, default_value_t = DEFAULT_SCAN_LIMIT)]
        limit: u64,
        /// Stop after this many segments, leaving the checkpoint for a later run.
        #[arg(long)]
        stop_after: Option<usize>,
    },
    /// Re-derive every published constant; exits 3 if any check fails.
    VerifyConstants,
    /// Lehmer verdicts for every Carmichael number up to --bound, written to --out.
    Batch {
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Verification(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Error(Error::Io {
            path: "<stdout>".into(),
            source: e,
        })
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Error(Error::Json(e))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Error(Error::CompositeHit { n, exact_k, report })) => {
            eprintln!("!!! composite n = {n} satisfies phi(n) | n - 1 with k = {exact_k}");
            eprintln!("{report}");
            ExitCode::from(3)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let out = &mut io::stdout().lock();
    let fmt = |default: Format| cli.format.unwrap_or(default);
    let approx = |r: &ExactRational| format!("≈ {}", to_decimal(r, cli.precision));
    match &cli.command {
        Command::Factor { n } => {
            let f = factor_big(n)?;
            match fmt(Format::Text) {
                Format::Text => {
                    let tag = if f.is_certified() {
                        ""
                    } else {
                        "  (probable primes)"
                    };
                    writeln!(out, "{n} = {f}{tag}")?;
                }
                _ => emit_json(
                    out,
                    &json!({
                        "n": num(n),
                        "factors": f.factors().iter().map(|(p, a)| json!([num(p), a])).collect::<Vec<_>>(),
                        "certified": f.is_certified(),
                    }),
                )?,
            }
        }
        Command::Phi { n } => {
            let phi = euler_phi(&factor_big(n)?);
            scalar_line(out, fmt(Format::Text), "phi", n, &phi)?;
        }
        Command::Sigma { n } => {
            let s = sigma(&factor_big(n)?)?;
            scalar_line(out, fmt(Format::Text), "sigma", n, &s)?;
        }
        Command::Carmichael { n, from, to } => match (n, from, to) {
            (Some(n), _, _) => {
                let c = korselt_check(n)?;
                match fmt(Format::Text) {
                    Format::Text => {
                        let verdict = if c.is_carmichael {
                            "Carmichael".to_string()
                        } else if !c.composite {
                            "not Carmichael (prime)".to_string()
                        } else if !c.squarefree {
                            "not Carmichael (not squarefree)".to_string()
                        } else {
                            let fails: Vec<String> = c
                                .korselt_failures
                                .iter()
                                .map(|p| format!("{p} - 1"))
                                .collect();
                            format!(
                                "not Carmichael ({} does not divide n - 1)",
                                fails.join(", ")
                            )
                        };
                        writeln!(out, "{n}: {verdict}")?;
                    }
                    _ => emit_json(out, &serde_json::to_value(&c)?)?,
                }
            }
            (None, Some(lo), Some(hi)) => {
                let found = carmichael_in_range(*lo, *hi)?;
                match fmt(Format::Text) {
                    Format::Text => {
                        for n in &found {
                            writeln!(out, "{n}")?;
                        }
                        writeln!(out, "# {} Carmichael numbers in [{lo}, {hi}]", found.len())?;
                    }
                    _ => emit_json(
                        out,
                        &json!({"from": lo, "to": hi, "count": found.len(), "carmichael": found}),
                    )?,
                }
            }
            _ => {
                return Err(Error::InvalidArgument("give N or both --from and --to".into()).into())
            }
        },
        Command::Psi { group } => {
            let g = parse_group_spec::<BigUint>(group).map_err(Error::from)?;
            let engine = SpectrumEngine::default();
            let (psi, p1, p2) = (
                engine.psi(&g)?,
                engine.psi_prime(&g)?,
                engine.psi_double_prime(&g)?,
            );
            match fmt(Format::Text) {
                Format::Text => {
                    writeln!(out, "psi({g}) = {psi}")?;
                    writeln!(out, "psi'  = {} {}", fraction_string(&p1), approx(&p1))?;
                    writeln!(out, "psi'' = {} {}", fraction_string(&p2), approx(&p2))?;
                }
                _ => emit_json(
                    out,
                    &json!({
                        "group": g.to_string(),
                        "order": num(&g.order()?),
                        "psi": num(&psi),
                        "psi_prime": fraction_string(&p1),
                        "psi_double_prime": fraction_string(&p2),
                    }),
                )?,
            }
        }
        Command::Bounds { group } => {
            let g = parse_group_spec::<BigUint>(group).map_err(Error::from)?;
            let reports = check_bounds(&g)?;
            match fmt(Format::Text) {
                Format::Text => {
                    writeln!(out, "group {g}")?;
                    for r in reports.iter().filter(|r| r.applicable) {
                        let side = |v: &Option<ExactRational>| {
                            v.as_ref().map_or("-".into(), ExactRational::to_string)
                        };
                        writeln!(
                            out,
                            "{:<10} {} {} {}  {}{}  {}",
                            r.bound_id.name(),
                            side(&r.lhs),
                            r.relation.symbol(),
                            side(&r.rhs),
                            if r.holds { "holds" } else { "FAILS" },
                            if r.equality { ", equality" } else { "" },
                            r.note
                        )?;
                    }
                }
                _ => emit_json(out, &serde_json::to_value(&reports)?)?,
            }
            if let Some(r) = reports.iter().find(|r| !r.consistent()) {
                return Err(Failure::Verification(format!(
                    "{} is inconsistent for {g}",
                    r.bound_id.name()
                )));
            }
        }
        Command::LehmerCheck { n } => {
            let v = match small(n) {
                Some(small) => lehmer_check(&small)?,
                None => lehmer_check(n)?,
            };
            match fmt(Format::Json) {
                Format::Text => verdict_text(out, &v, &approx)?,
                _ => emit_json(out, &serde_json::to_value(&v)?)?,
            }
            if v.counterexample {
                return Err(Failure::Verification(format!(
                    "{n} is a composite solution"
                )));
            }
        }
        Command::MinK { profile } => {
            let p = parse_profile(profile)?;
            let floor = min_k(&p)?;
            let abundancy = abundancy_bound(&p)?;
            match fmt(Format::Text) {
                Format::Text => {
                    writeln!(out, "profile {p}")?;
                    writeln!(out, "min_k = {}", floor.value)?;
                    for rule in &floor.rules {
                        writeln!(out, "  {rule}")?;
                    }
                    if let Some(l) = &floor.ladder {
                        writeln!(
                            out,
                            "ladder floor: strict {}, as printed {}",
                            l.strict.floor, l.as_printed.floor
                        )?;
                    }
                    writeln!(
                        out,
                        "sigma(n)/n > ({})/pi^2 {}",
                        abundancy.coefficient,
                        approx(&abundancy.lower)
                    )?;
                }
                _ => emit_json(
                    out,
                    &json!({"profile": p.to_string(), "min_k": floor, "abundancy": abundancy}),
                )?,
            }
        }
        Command::Scan {
            from,
            to,
            jobs,
            checkpoint,
            segment,
            limit,
            stop_after,
        } => {
            let opts = ScanOptions {
                jobs: jobs.unwrap_or_else(default_jobs),
                segment: *segment,
                limit: *limit,
                stop_after: *stop_after,
            };
            let started = Instant::now();
            let cp = scan_totient_divisibility(*from, *to, checkpoint.as_deref(), &opts)?;
            match fmt(Format::Text) {
                Format::Text => {
                    let composite = cp.composite_hits().count();
                    writeln!(
                        out,
                        "range [{}, {}], scanned up to {}",
                        cp.lo,
                        cp.hi,
                        cp.next - 1
                    )?;
                    writeln!(
                        out,
                        "hits: {} ({} prime, {composite} composite)",
                        cp.hits.len(),
                        cp.hits.len() - composite
                    )?;
                    if !cp.is_complete() {
                        writeln!(out, "incomplete: resume with the same --checkpoint")?;
                    }
                    writeln!(
                        out,
                        "# {} workers, {:.3} s",
                        opts.jobs,
                        started.elapsed().as_secs_f64()
                    )?;
                }
                f => {
                    let records: Vec<ReportRecord> =
                        cp.hits.iter().map(ReportRecord::from_hit).collect();
                    write_records(&mut *out, &records, report_format(f))?;
                }
            }
        }
        Command::VerifyConstants => {
            let checks = verify_paper_constants();
            match fmt(Format::Text) {
                Format::Text => {
                    for c in &checks {
                        writeln!(
                            out,
                            "{:<15} {:<34} expected {}, computed {}",
                            c.status.as_str().to_uppercase(),
                            c.name,
                            c.expected,
                            c.computed
                        )?;
                    }
                }
                f => {
                    let records: Vec<ReportRecord> =
                        checks.iter().map(ReportRecord::from_check).collect();
                    write_records(&mut *out, &records, report_format(f))?;
                }
            }
            let failed: Vec<&str> = checks
                .iter()
                .filter(|c| !c.status.is_ok())
                .map(|c| c.name.as_str())
                .collect();
            if !failed.is_empty() {
                return Err(Failure::Verification(failed.join(", ")));
            }
        }
        Command::Batch { bound, out: path } => {
            if *bound > DEFAULT_BATCH_LIMIT {
                return Err(Error::InvalidArgument(format!(
                    "--bound must be at most {DEFAULT_BATCH_LIMIT}"
                ))
                .into());
            }
            let file_format = match fmt(Format::Json) {
                Format::Csv => ReportFormat::Csv,
                Format::Text => ReportFormat::Text,
                Format::Json => ReportFormat::Json,
            };
            let summary = batch_verdicts(*bound, path, file_format)?;
            match fmt(Format::Text) {
                Format::Json => emit_json(out, &serde_json::to_value(&summary)?)?,
                _ => {
                    writeln!(
                        out,
                        "{} verdicts written to {}",
                        summary.count,
                        summary.path.display()
                    )?;
                    for (k, count) in &summary.min_k_distribution {
                        writeln!(out, "min_k = {k}: {count}")?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn report_format(f: Format) -> ReportFormat {
    match f {
        Format::Json => ReportFormat::Json,
        Format::Csv => ReportFormat::Csv,
        Format::Text => ReportFormat::Text,
    }
}

/// Factors through `u64` when `n` fits, which is much faster.
fn factor_big(n: &BigUint) -> Result<Factorization<BigUint>, Error> {
    match small(n) {
        Some(small) => factor(&small)?.convert(),
        None => factor(n),
    }
}

fn small(n: &BigUint) -> Option<u64> {
    u64::try_from(n).ok()
}

fn num(v: &BigUint) -> Value {
    match small(v) {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

fn emit_json(out: &mut impl Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn scalar_line(
    out: &mut impl Write,
    format: Format,
    name: &str,
    n: &BigUint,
    v: &BigUint,
) -> io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{name}({n}) = {v}"),
        _ => emit_json(out, &json!({"n": num(n), name: num(v)})),
    }
}

fn verdict_text(
    out: &mut impl Write,
    v: &LehmerVerdict,
    approx: &dyn Fn(&ExactRational) -> String,
) -> io::Result<()> {
    writeln!(out, "n = {} = {}", v.n, v.factorization)?;
    writeln!(out, "phi(n) = {}, divides n - 1: {}", v.phi, v.phi_divides)?;
    if let Some(c) = v.is_carmichael {
        writeln!(out, "Carmichael: {c}")?;
    }
    if let Some(k) = v.exact_k {
        writeln!(out, "k = {k}")?;
    }
    if let Some(k) = v.min_k {
        writeln!(out, "min_k = {k}")?;
    }
    if let (Some(w), Some(p)) = (&v.witness, &v.witness_psi_double_prime) {
        writeln!(out, "psi''({w}) = {} {}", fraction_string(p), approx(p))?;
    }
    if let Some(lb) = &v.witness_lower_bound {
        writeln!(out, "lower bound = {} {}", fraction_string(lb), approx(lb))?;
    }
    for rule in &v.rules {
        writeln!(out, "  {rule}")?;
    }
    Ok(())
}
