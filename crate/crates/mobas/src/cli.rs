//! Command-line interface: `solve`, `eval`, `front`, and `list`.
//!
//! Exit codes: 0 on success, 1 on any error, 2 on usage mistakes (from the
//! argument parser), and 3 when a solve hit its outer-run budget before the
//! archive filled, so scripts can tell a truncated front from a full one.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bas::SignConvention;
use crate::benchmarks::{self, FrontModel};
use crate::error::Result;
use crate::harness::{self, ConfigPatch, TraceGranularity};
use crate::problem::ProblemId;
use crate::solver::MobasParams;

/// Process exit status for a finished command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    Error,
    Truncated,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Error => 1,
            ExitStatus::Truncated => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "mobas",
    about = "Derivative-free multi-objective optimization with beetle antennae search",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an experiment and write front.csv, traces, and report.txt.
    Solve(SolveArgs),
    /// Recompute a front.csv's deviation from the file alone and print it.
    Eval(EvalArgs),
    /// Print analytic front samples of a built-in problem as CSV.
    Front(FrontArgs),
    /// List built-in problems and their default parameters.
    List,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Problem to solve: sch, zdt1, zdt2, or zdt3.
    #[arg(long)]
    problem: Option<ProblemId>,
    /// Archive target size M.
    #[arg(long)]
    points: Option<usize>,
    /// Inner iteration count N.
    #[arg(long)]
    iters: Option<usize>,
    /// Initial step delta0.
    #[arg(long)]
    step0: Option<f64>,
    /// Antenna-to-step ratio c.
    #[arg(long)]
    ratio: Option<f64>,
    /// Step decay factor alpha.
    #[arg(long)]
    alpha: Option<f64>,
    /// Decision-space dimension for the scalable problems.
    #[arg(long)]
    dim: Option<usize>,
    /// Outer-run budget before the solve gives up filling the archive.
    #[arg(long)]
    max_runs: Option<usize>,
    /// Master seed; every random draw derives from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for front.csv, traces, and report.txt.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key = value config file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Trace files to write: outer, inner, or both.
    #[arg(long)]
    trace: Option<TraceGranularity>,
    /// Position update direction: minus or printed.
    #[arg(long)]
    sign_convention: Option<SignConvention>,
    /// Run outer iterations concurrently (entry order differs from
    /// sequential mode, seeds still reproduce).
    #[arg(long)]
    parallel: bool,
}

impl SolveArgs {
    fn patch(&self) -> ConfigPatch {
        ConfigPatch {
            problem: self.problem,
            out_dir: self.out.clone(),
            dimension: self.dim,
            points: self.points,
            iterations: self.iters,
            initial_step: self.step0,
            antenna_ratio: self.ratio,
            attenuation: self.alpha,
            max_outer_runs: self.max_runs,
            seed: self.seed,
            trace: self.trace,
            sign_convention: self.sign_convention,
            // A bare flag cannot express "unset"; only carry it when given.
            parallel: if self.parallel { Some(true) } else { None },
        }
    }
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Problem whose analytic front to measure against.
    #[arg(long)]
    problem: ProblemId,
    /// Path to a front.csv.
    #[arg(long)]
    front: PathBuf,
}

#[derive(Args, Debug)]
struct FrontArgs {
    /// Problem whose analytic front to sample.
    #[arg(long)]
    problem: ProblemId,
    /// Number of evenly spread samples.
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

/// Parses `argv` and runs the chosen subcommand, printing results to
/// `stdout`. Usage errors exit the process with clap's status 2.
pub fn run<I, T>(argv: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::parse_from(argv);
    match dispatch(cli) {
        Ok(status) => status,
        Err(err) => {
            eprintln!("error: {err}");
            ExitStatus::Error
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitStatus> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Eval(args) => eval(args),
        Command::Front(args) => front(args),
        Command::List => {
            print!("{}", list_text());
            Ok(ExitStatus::Success)
        }
    }
}

fn solve(args: SolveArgs) -> Result<ExitStatus> {
    let mut patch = args.patch();
    if let Some(config_path) = &args.config {
        patch = patch.over(ConfigPatch::from_file(config_path)?);
    }
    let config = patch.finish()?;
    let report = harness::run_experiment(&config)?;
    println!(
        "{}: archive {} of {}, ad {}, {:.3}s solve, wrote {}",
        report.problem.name(),
        report.run.archive.len(),
        report.params.target_size,
        report.final_ad,
        report.run.stats.solve_seconds,
        config.out_dir.display(),
    );
    if report.run.stats.truncated {
        eprintln!(
            "warning: outer-run budget {} exhausted before the archive filled",
            report.params.max_outer_runs
        );
        return Ok(ExitStatus::Truncated);
    }
    Ok(ExitStatus::Success)
}

fn eval(args: EvalArgs) -> Result<ExitStatus> {
    let ad = harness::evaluate_front_file(&args.front, args.problem)?;
    println!("{ad}");
    Ok(ExitStatus::Success)
}

fn front(args: FrontArgs) -> Result<ExitStatus> {
    let front = FrontModel::for_problem(args.problem).ok_or(crate::error::Error::NoFrontModel)?;
    print!("{}", front_samples_csv(&front, args.samples));
    Ok(ExitStatus::Success)
}

/// CSV of analytic front samples: `f1,f2`, one row per sample.
pub fn front_samples_csv(front: &FrontModel, samples: usize) -> String {
    let mut out = String::from("f1,f2\n");
    for (f1, f2) in front.sample(samples) {
        let _ = writeln!(out, "{f1},{f2}");
    }
    out
}

/// Table of built-in problems and the defaults each would run with.
pub fn list_text() -> String {
    let mut out = String::from(
        "problem  dim  objectives  bounds            points  iters  step0     ratio  alpha    max_runs\n",
    );
    for id in ProblemId::BUILTINS {
        let problem = benchmarks::by_id(id, None).expect("built-ins construct with defaults");
        let params = MobasParams::for_problem(&problem);
        let bounds = problem.bounds();
        let box_text = format!(
            "[{}, {}]^{}",
            bounds.lower()[0],
            bounds.upper()[0],
            bounds.dimension()
        );
        let _ = writeln!(
            out,
            "{:<8} {:<4} {:<11} {:<17} {:<7} {:<6} {:<9} {:<6} {:<8} {}",
            id.name(),
            bounds.dimension(),
            problem.objective_count(),
            box_text,
            params.target_size,
            params.bas.max_iterations,
            format!("{:.4}", params.bas.initial_step),
            params.bas.antenna_ratio,
            format!("{:.5}", params.bas.attenuation),
            params.max_outer_runs,
        );
    }
    out
}
