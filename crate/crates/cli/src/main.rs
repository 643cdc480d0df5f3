//! `wavegraph`: solvers and certificates for wave equations on weighted graphs.
//!
//! Exit status: 0 on success, 1 on invalid input, 2 when a certified
//! property fails.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

mod commands;
mod input;
mod output;
mod solution;

use commands::Outcome;
use output::{Header, Sink};

#[derive(Parser, Debug, Serialize)]
#[command(name = "wavegraph", version, about = "Wave equations on weighted graphs", allow_negative_numbers = true)]
struct Cli {
    /// Seed for randomized corpora; recorded in every artifact.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write artifacts into this directory instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Dirichlet wave problem on a finite vertex set, by eigen-expansion.
    Solve(SolveArgs),
    /// Dirichlet wave problem with a separable source `p(x) T(t)`.
    SolveForced(ForcedArgs),
    /// The flat-bump non-uniqueness series on the integer line.
    Counterexample(CounterexampleArgs),
    /// Lower bound on the time-analyticity radius.
    Radius(RadiusArgs),
    /// Sampled check of the growth class `|u| <= C d^(A1 d)`.
    ClassCheck(ClassArgs),
    /// Gap between two solutions, with the uniqueness hypotheses checked.
    Uniqueness(UniquenessArgs),
    /// Seeded property sweeps.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct SolveArgs {
    /// `line`, `line:R`, `star:n` or a graph JSON file.
    #[arg(long, default_value = "line")]
    graph: String,
    /// Dirichlet set: `a:b` or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    omega: String,
    /// Initial value: `id=value,...` or a CSV file; zero elsewhere.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Initial velocity, same format as `--g`.
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    #[arg(long, default_value_t = 1.0)]
    t1: f64,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    /// Eigensolver off-diagonal tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Exit 2 when the wave residual exceeds this.
    #[arg(long, default_value_t = 1e-9)]
    residual_tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct ForcedArgs {
    #[command(flatten)]
    solve: SolveArgs,
    /// Spatial source profile, same format as `--g`.
    #[arg(long, allow_hyphen_values = true)]
    source: Option<String>,
    /// `const`, `sin:w` or `cos:w`.
    #[arg(long, default_value = "const")]
    source_time: String,
    /// Quadrature step for the Duhamel integral.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
}

#[derive(Args, Debug, Serialize)]
struct CounterexampleArgs {
    #[arg(long, default_value_t = 3)]
    beta: u32,
    /// Equation order `m` in `d_t^m u = Delta u`.
    #[arg(long, default_value_t = 2)]
    order: u32,
    /// Working precision in bits.
    #[arg(long, default_value_t = 256)]
    precision: u32,
    #[arg(long, default_value_t = 2.0)]
    tmax: f64,
    /// Number of time steps on `[0, tmax]`.
    #[arg(long, default_value_t = 8)]
    tsteps: u32,
    #[arg(long, default_value_t = 10)]
    xmax: i64,
    /// Growth exponent excess; enables the growth-ratio column.
    #[arg(long)]
    eps: Option<f64>,
    /// Highest time derivative checked at `t = 0`.
    #[arg(long, default_value_t = 20)]
    jet_order: u32,
    /// Time at which the growth-ratio tail is reported.
    #[arg(long, default_value_t = 1.0)]
    ratio_t: f64,
    /// Time at which `u(t, 0)` must be nonzero.
    #[arg(long, default_value_t = 1.0)]
    probe_t: f64,
    #[arg(long, default_value_t = 1e-30)]
    residual_tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct RadiusArgs {
    /// Degree growth constant.
    #[arg(long = "D")]
    #[serde(rename = "D")]
    d_const: f64,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Growth exponent of the solution class.
    #[arg(long = "A1")]
    #[serde(rename = "A1")]
    a1: f64,
    /// Time step for the remainder trace.
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long = "C", default_value_t = 1.0)]
    #[serde(rename = "C")]
    c: f64,
    /// Distance from the base point.
    #[arg(long, default_value_t = 0)]
    d: u32,
    #[arg(long, default_value_t = 200)]
    kmax: u32,
}

#[derive(Args, Debug, Serialize)]
struct ClassArgs {
    /// A `solution.json` artifact, or `zero`.
    #[arg(long)]
    solution: String,
    /// Graph for distances when the solution carries none.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, default_value_t = 0)]
    p: i64,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long = "A1", default_value_t = 2.0)]
    #[serde(rename = "A1")]
    a1: f64,
    /// Class constant; derived from the data when omitted.
    #[arg(long = "C")]
    #[serde(rename = "C")]
    c: Option<f64>,
    /// Sample times, comma separated.
    #[arg(long, allow_hyphen_values = true, default_value = "0.25,0.5,1")]
    times: String,
    /// Sample vertices, `a:b` or a list; the base point is skipped.
    #[arg(long, allow_hyphen_values = true, default_value = "1:10")]
    xs: String,
    #[arg(long)]
    horizon: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct UniquenessArgs {
    /// First solution: a `solution.json` artifact, or `zero`.
    #[arg(long)]
    u: String,
    /// Second solution.
    #[arg(long)]
    v: String,
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, default_value_t = 0)]
    p: i64,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long = "A1", default_value_t = 2.0)]
    #[serde(rename = "A1")]
    a1: f64,
    #[arg(long = "Cu")]
    #[serde(rename = "Cu")]
    cu: Option<f64>,
    #[arg(long = "Cv")]
    #[serde(rename = "Cv")]
    cv: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value = "0.25,0.5,1")]
    times: String,
    #[arg(long, allow_hyphen_values = true, default_value = "1:10")]
    xs: String,
    #[arg(long)]
    horizon: Option<f64>,
    /// Tolerance on the initial data agreement.
    #[arg(long, default_value_t = 1e-12)]
    data_tol: f64,
    /// Exit 2 when the hypotheses hold and the gap exceeds this.
    #[arg(long, default_value_t = 1e-10)]
    gap_tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// lap-bound, ore, residual, growth, uniqueness or all.
    #[arg(default_value = "all")]
    suite: String,
}

fn thread_count() -> Result<Option<usize>> {
    match std::env::var("WAVEGRAPH_THREADS") {
        Ok(v) => {
            let n: usize = v.trim().parse().with_context(|| format!("WAVEGRAPH_THREADS must be a positive integer, got '{v}'"))?;
            if n == 0 {
                anyhow::bail!("WAVEGRAPH_THREADS must be positive");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let header = Header { seed: cli.seed, config: serde_json::to_value(&cli)? };
    let sink = Sink::new(cli.output.clone())?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;
    pool.install(|| match &cli.command {
        Command::Solve(a) => commands::solve(a, &header, &sink),
        Command::SolveForced(a) => commands::solve_forced(a, &header, &sink),
        Command::Counterexample(a) => commands::counterexample(a, &header, &sink),
        Command::Radius(a) => commands::radius(a, &header, &sink),
        Command::ClassCheck(a) => commands::class_check(a, &header, &sink),
        Command::Uniqueness(a) => commands::uniqueness(a, &header, &sink),
        Command::Verify(a) => commands::verify(a, cli.seed, &header, &sink),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::CertificationFailed(msg)) => {
            eprintln!("certification failed: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
