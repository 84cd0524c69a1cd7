//! The `ymbv` command line: one subcommand per check family.
//!
//! Exit status is 0 when every requested check passes, 1 when a check fails
//! and 2 on a usage or input error.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::YmError;
use crate::exact_arith::{Rat, GR};
use crate::ym_complex::{Momentum4, StructureTables};
use report::{Envelope, ENVELOPE_FORMAT};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input.
    Usage(String),
    /// The computation itself could not be carried out.
    Check(String),
}

impl From<YmError> for CliError {
    fn from(e: YmError) -> Self {
        match e {
            YmError::Inconsistent(_) | YmError::NotAffine(_) | YmError::NotFound(_) | YmError::Degree(_) => {
                CliError::Check(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ymbv", version, about = "Exact homotopy BV checks for the Yang-Mills dgca")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the homotopy h and verify h² = 0, dh + hd = □.
    SolveH(SolveHArgs),
    /// Solve the θ tables through the given arity and emit a certificate.
    BuildTheta(ThetaArgs),
    /// Verify every axiom component, from scratch or from a stored certificate.
    VerifyAxioms(VerifyArgs),
    /// Plane-wave homology at one momentum.
    Homology(HomologyArgs),
    /// Vanishing of the ternary tree sums on homology at random null kinematics.
    Bcj(BcjArgs),
    /// Color-ordered partial amplitude for the legs in a kinematics file.
    Amplitude(AmplitudeArgs),
    /// Seeded checks of the strict structure on the cobar construction.
    CobarCheck(CobarArgs),
    /// Exact H⁰, H¹ of the complexes C_ℓ and the rank of W.
    Vanishing(VanishingArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct SolveHArgs {
    /// Use the alternate candidate order, which yields a second, distinct h.
    #[arg(long)]
    pub alternate: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct HInput {
    /// An `h/1` file, or a report from `solve-h --out`; solved afresh when absent.
    #[arg(long = "h")]
    pub h: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ThetaArgs {
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
    pub max_arity: u8,
    #[command(flatten)]
    #[serde(flatten)]
    pub h: HInput,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
    pub max_arity: u8,
    #[command(flatten)]
    #[serde(flatten)]
    pub h: HInput,
    /// Replay the verdicts of a `theta/1` certificate instead of re-solving.
    #[arg(long)]
    pub recheck: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct HomologyArgs {
    /// Four rational components `k0,k1,k2,k3`.
    #[arg(long, value_parser = parse_momentum, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_momentum")]
    pub momentum: Momentum4,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct BcjArgs {
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=5))]
    pub n: u8,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random null configurations.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..))]
    pub configs: u16,
    /// Also check the three-point identities as polynomials in symbolic momenta.
    #[arg(long)]
    pub lemma: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub h: HInput,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct AmplitudeArgs {
    /// Kinematics file; see docs/formats.md.
    #[arg(long)]
    pub kin: PathBuf,
    /// Recompute with a second solved h and require the same value.
    #[arg(long)]
    pub gauge_check: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub h: HInput,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CobarArgs {
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=4))]
    pub max_letters: u8,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub h: HInput,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VanishingArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub case: u8,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub n: u8,
    /// Inclusive range `a..b`, or a single value.
    #[arg(long, default_value = "-6..-1", value_parser = parse_ell_range, allow_hyphen_values = true)]
    #[serde(serialize_with = "ser_range")]
    pub ell_range: (i32, i32),
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_momentum(s: &str) -> Result<Momentum4, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected 4 comma-separated components, got {}", parts.len()));
    }
    let mut out = [GR::zero(), GR::zero(), GR::zero(), GR::zero()];
    for (o, p) in out.iter_mut().zip(parts) {
        let r: Rat = p.parse().map_err(|e| format!("component `{p}`: {e}"))?;
        *o = GR::real(r);
    }
    Ok(Momentum4(out))
}

pub fn parse_ell_range(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: i32 = a.parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: i32 = b.parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn ser_momentum<S: serde::Serializer>(k: &Momentum4, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(k.0.iter().map(|c| c.to_string()))
}

fn ser_range<S: serde::Serializer>(r: &(i32, i32), s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}..{}", r.0, r.1))
}

/// What a subcommand hands back to the driver.
pub struct Outcome {
    pub pass: bool,
    pub summary: Vec<String>,
    pub results: serde_json::Value,
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("YM_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| CliError::Usage(format!("YM_THREADS={v}")))?;
    // a second call in one process fails harmlessly; the first pool stays
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// The flags as JSON; output paths do not change the results and are dropped.
fn args_value<T: Serialize>(a: &T) -> serde_json::Value {
    let mut v = serde_json::to_value(a).expect("serializable");
    if let Some(m) = v.as_object_mut() {
        m.remove("out");
    }
    v
}

fn dispatch(cmd: &Command) -> Result<(&'static str, serde_json::Value, Option<&PathBuf>, Outcome), CliError> {
    Ok(match cmd {
        Command::SolveH(a) => ("solve-h", args_value(a), a.out.as_ref(), commands::solve_h(a)?),
        Command::BuildTheta(a) => ("build-theta", args_value(a), a.out.as_ref(), commands::build_theta(a)?),
        Command::VerifyAxioms(a) => ("verify-axioms", args_value(a), a.out.as_ref(), commands::verify_axioms(a)?),
        Command::Homology(a) => ("homology", args_value(a), a.out.as_ref(), commands::homology(a)?),
        Command::Bcj(a) => ("bcj", args_value(a), a.out.as_ref(), commands::bcj(a)?),
        Command::Amplitude(a) => ("amplitude", args_value(a), a.out.as_ref(), commands::amplitude(a)?),
        Command::CobarCheck(a) => ("cobar-check", args_value(a), a.out.as_ref(), commands::cobar_check(a)?),
        Command::Vanishing(a) => ("vanishing", args_value(a), a.out.as_ref(), commands::vanishing(a)?),
    })
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    if let Err(CliError::Usage(m) | CliError::Check(m)) = init_threads() {
        eprintln!("error: {m}");
        return EXIT_USAGE;
    }
    let start = Instant::now();
    let (command, args, out, outcome) = match dispatch(&cli.command) {
        Ok(x) => x,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            return EXIT_USAGE;
        }
        Err(CliError::Check(m)) => {
            eprintln!("check failed: {m}");
            return EXIT_FAIL;
        }
    };
    let elapsed = start.elapsed();
    for line in &outcome.summary {
        println!("{line}");
    }
    println!("{command}: {} in {:.2} s", if outcome.pass { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    if let Some(path) = out {
        let env = Envelope {
            format: ENVELOPE_FORMAT,
            tool_version: env!("CARGO_PKG_VERSION"),
            fixture_sha256: StructureTables::get().checksum.clone(),
            command,
            args,
            pass: outcome.pass,
            results: outcome.results,
        };
        if let Err(CliError::Usage(m) | CliError::Check(m)) = env.write(path) {
            eprintln!("error: {m}");
            return EXIT_USAGE;
        }
    }
    if outcome.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
