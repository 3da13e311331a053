//! Command-line front end. [`run`] does all the work and returns the exit
//! code with both output streams, so it is testable without a process.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

use crate::graph::{
    check_cycle, check_rainbow_cycle,
    text::{parse_digraph, parse_rainbow},
    BoundKind, CycleCertificate, Digraph, RainbowCycleCertificate, RainbowInstance, Rational,
};
use crate::harness::{
    extremal_ratio_search, run_suite, Check, Generator, HarnessError, SuiteConfig,
};
use crate::oracles::{
    deg2_short_cycle, girth_exact, shortest_rainbow_cycle_exact, two_cycles_min_intersection,
    OracleError, TwoCyclePair,
};
use crate::peeling::{peel, phi, PeelError, PeelingTrace};
use crate::rainbow::{find_rainbow_cycle_traced, rainbow_bound, Level, RainbowError};

pub const EXIT_OK: i32 = 0;
/// A proved bound failed or a certificate did not validate.
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "shortcycles", version, about = "Certified short cycles in digraphs and rainbow cycles in edge families")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact girth with a witness cycle.
    Girth { file: PathBuf },
    /// Peel a sink-less digraph down to a union of cycles; certify g <= 2φ.
    Peel { file: PathBuf },
    /// Rainbow cycle of length at most ⌈(n+p)/2⌉, or the exact optimum.
    Rainbow {
        file: PathBuf,
        /// Exact shortest rainbow cycle; any number of families.
        #[arg(long)]
        oracle: bool,
        /// Include the recursion levels.
        #[arg(long)]
        trace: bool,
    },
    /// Two cycles with the fewest common vertices.
    TwoCycles { file: PathBuf },
    /// Run a verification suite.
    Verify {
        /// `N` or an inclusive range `A..B`.
        #[arg(long)]
        n: String,
        /// labeled, labeled:sinkless, labeled:strong, outmaps:DMIN:DMAX,
        /// rainbow[:COUNT], pairings.
        #[arg(long, default_value = "labeled:sinkless")]
        generator: String,
        /// Comma-separated checks; defaults depend on the generator.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Progress lines on standard error.
        #[arg(long)]
        progress: bool,
    },
    /// Search sink-less digraphs for a large girth/ψ ratio.
    SearchRatio {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn json<T: Serialize>(code: i32, value: &T) -> Self {
        let mut stdout = serde_json::to_string_pretty(value).expect("serializable output");
        stdout.push('\n');
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Cycle length, with acyclic written as the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(usize),
    Inf,
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Length::Finite(k) => s.serialize_u64(*k as u64),
            Length::Inf => s.serialize_str("inf"),
        }
    }
}

type CmdResult = Result<Outcome, Outcome>;

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_digraph(path: &Path) -> Result<Digraph, Outcome> {
    parse_digraph(&read(path)?).map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_rainbow(path: &Path) -> Result<RainbowInstance, Outcome> {
    parse_rainbow(&read(path)?).map_err(|e| Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn revalidate(d: &Digraph, c: &CycleCertificate) -> Result<(), Outcome> {
    check_cycle(d, c).map_err(|e| Outcome::error(EXIT_VIOLATION, format!("invalid certificate: {e}")))
}

fn revalidate_rainbow(inst: &RainbowInstance, c: &RainbowCycleCertificate) -> Result<(), Outcome> {
    check_rainbow_cycle(inst, c)
        .map_err(|e| Outcome::error(EXIT_VIOLATION, format!("invalid certificate: {e}")))
}

fn oracle_failure(e: OracleError) -> Outcome {
    match e {
        OracleError::ResourceCap { .. } => Outcome::error(EXIT_CAP, e),
        OracleError::Acyclic | OracleError::Precondition(_) => Outcome::error(EXIT_USAGE, e),
        OracleError::TheoremViolation(_) | OracleError::BoundViolation(_) => {
            Outcome::error(EXIT_VIOLATION, e)
        }
    }
}

fn harness_failure(e: HarnessError) -> Outcome {
    match e {
        HarnessError::CapExceeded { .. } | HarnessError::ResourceCap(_) => {
            Outcome::error(EXIT_CAP, e)
        }
        HarnessError::Infeasible { .. } | HarnessError::BadConfig(_) => {
            Outcome::error(EXIT_USAGE, e)
        }
    }
}

#[derive(Serialize)]
struct GirthOut {
    n: usize,
    girth: Length,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CycleCertificate>,
}

fn cmd_girth(file: &Path) -> CmdResult {
    let d = load_digraph(file)?;
    let cert = girth_exact(&d);
    if let Some(c) = &cert {
        revalidate(&d, c)?;
    }
    Ok(Outcome::json(
        EXIT_OK,
        &GirthOut {
            n: d.n(),
            girth: cert.as_ref().map_or(Length::Inf, |c| Length::Finite(c.len())),
            certificate: cert,
        },
    ))
}

#[derive(Serialize)]
struct PeelOut {
    n: usize,
    phi: Rational,
    trace: PeelingTrace,
    certificate: CycleCertificate,
}

fn cmd_peel(file: &Path) -> CmdResult {
    let d = load_digraph(file)?;
    let trace = peel(&d).map_err(|e| match e {
        PeelError::LemmaViolation(_) => Outcome::error(EXIT_VIOLATION, e),
        _ => Outcome::error(EXIT_USAGE, e),
    })?;
    trace
        .check(&d)
        .map_err(|e| Outcome::error(EXIT_VIOLATION, format!("peeling trace: {e}")))?;
    let certificate = trace.certificate();
    revalidate(&d, &certificate)?;
    Ok(Outcome::json(
        EXIT_OK,
        &PeelOut {
            n: d.n(),
            phi: phi(&d),
            trace,
            certificate,
        },
    ))
}

#[derive(Serialize)]
struct RainbowOut {
    n: usize,
    m: usize,
    p: usize,
    length: usize,
    certificate: RainbowCycleCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    levels: Option<Vec<Level>>,
}

#[derive(Serialize)]
struct OracleOut {
    n: usize,
    m: usize,
    rg: Length,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<RainbowCycleCertificate>,
}

fn cmd_rainbow(file: &Path, oracle: bool, trace: bool) -> CmdResult {
    let inst = load_rainbow(file)?;
    if oracle {
        let cert = shortest_rainbow_cycle_exact(&inst).map_err(oracle_failure)?;
        if let Some(c) = &cert {
            revalidate_rainbow(&inst, c)?;
        }
        return Ok(Outcome::json(
            EXIT_OK,
            &OracleOut {
                n: inst.n(),
                m: inst.m(),
                rg: cert.as_ref().map_or(Length::Inf, |c| Length::Finite(c.len())),
                certificate: cert,
            },
        ));
    }
    let (cert, t) = find_rainbow_cycle_traced(&inst).map_err(|e| match e {
        RainbowError::NotSquare { .. } | RainbowError::Empty | RainbowError::NotSimpleOrigin => {
            Outcome::error(EXIT_USAGE, e)
        }
        RainbowError::Oracle(o) => oracle_failure(o),
        _ => Outcome::error(EXIT_VIOLATION, e),
    })?;
    revalidate_rainbow(&inst, &cert)?;
    debug_assert_eq!(cert.bound, Rational::from(rainbow_bound(inst.n(), inst.p())));
    Ok(Outcome::json(
        EXIT_OK,
        &RainbowOut {
            n: inst.n(),
            m: inst.m(),
            p: inst.p(),
            length: cert.len(),
            certificate: cert,
            levels: trace.then_some(t.levels),
        },
    ))
}

#[derive(Serialize)]
struct TwoCyclesOut {
    n: usize,
    p: usize,
    intersection_size: usize,
    intersection_bound: usize,
    pair: TwoCyclePair,
    /// Present when every out-degree is 1 or 2.
    #[serde(skip_serializing_if = "Option::is_none")]
    short_cycle: Option<CycleCertificate>,
}

fn cmd_two_cycles(file: &Path) -> CmdResult {
    let d = load_digraph(file)?;
    let pair = two_cycles_min_intersection(&d).map_err(oracle_failure)?;
    for c in [&pair.c1, &pair.c2] {
        let cert = CycleCertificate {
            kind: BoundKind::ExactGirth,
            vertices: c.clone(),
            bound: Rational::from(c.len()),
        };
        revalidate(&d, &cert)?;
    }
    let short_cycle = if pair.in_hypothesis {
        let c = deg2_short_cycle(&d).map_err(oracle_failure)?;
        revalidate(&d, &c)?;
        Some(c)
    } else {
        None
    };
    Ok(Outcome::json(
        EXIT_OK,
        &TwoCyclesOut {
            n: d.n(),
            p: pair.p,
            intersection_size: pair.intersection.len(),
            intersection_bound: pair.intersection_bound(),
            pair,
            short_cycle,
        },
    ))
}

fn parse_n_range(s: &str) -> Result<(usize, usize), Outcome> {
    let bad = || Outcome::error(EXIT_USAGE, format!("--n expects N or A..B, got '{s}'"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => {
            let n = num(s)?;
            Ok((n, n))
        }
    }
}

fn default_checks(g: Generator) -> Vec<Check> {
    match g {
        Generator::Labeled(_) => vec![Check::TwoPhi, Check::TwoPsiStrict, Check::SideSums],
        Generator::Outmaps { .. } => vec![Check::TwoCycles, Check::Deg2Girth],
        Generator::Rainbow { .. } | Generator::Pairings => {
            vec![Check::RainbowBound, Check::RdClaim]
        }
    }
}

fn cmd_verify(
    n: &str,
    generator: &str,
    checks: &[String],
    jobs: usize,
    seed: u64,
    progress: bool,
) -> CmdResult {
    let (n_min, n_max) = parse_n_range(n)?;
    let generator: Generator = generator.parse().map_err(harness_failure)?;
    let checks = if checks.is_empty() {
        default_checks(generator)
    } else {
        checks
            .iter()
            .map(|c| c.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(harness_failure)?
    };
    let cfg = SuiteConfig {
        n_min,
        n_max,
        generator,
        checks,
        workers: jobs,
        seed,
        progress,
    };
    let report = run_suite(&cfg).map_err(harness_failure)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Outcome::json(code, &report))
}

fn cmd_search_ratio(n: usize, budget: u64, seed: u64) -> CmdResult {
    let r = extremal_ratio_search(n, budget, seed).map_err(harness_failure)?;
    let code = if r.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    Ok(Outcome::json(code, &r))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let Format::Json = cli.format;
    let result = match &cli.command {
        Command::Girth { file } => cmd_girth(file),
        Command::Peel { file } => cmd_peel(file),
        Command::Rainbow { file, oracle, trace } => cmd_rainbow(file, *oracle, *trace),
        Command::TwoCycles { file } => cmd_two_cycles(file),
        Command::Verify {
            n,
            generator,
            checks,
            jobs,
            seed,
            progress,
        } => cmd_verify(n, generator, checks, *jobs, *seed, *progress),
        Command::SearchRatio { n, budget, seed } => cmd_search_ratio(*n, *budget, *seed),
    };
    result.unwrap_or_else(|e| e)
}
