//! Experiment runner: solves a problem, writes the archive and traces to
//! disk, and recomputes front deviation from files alone.
//!
//! An experiment produces four artifacts in its output directory:
//!
//! * `front.csv`: the final archive, header `f1,f2,x1,...,xk`, one row per
//!   entry with the full decision vector.
//! * `trace_outer.csv`: columns `outer_run,archive_size,ad`, one row per
//!   outer run.
//! * `trace_inner.csv` (optional): columns `outer_run,iteration,best_phi`,
//!   the best-so-far scalarized value per inner iteration.
//! * `report.txt`: every parameter the run used plus its counters and final
//!   deviation, so an output directory describes itself.
//!
//! Floats are written in Rust's shortest round-trip form, which makes
//! re-running a seed byte-identical and parsing lossless.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::bas::SignConvention;
use crate::benchmarks::{self, FrontModel};
use crate::error::{Error, Result};
use crate::pareto::{ad_error, in_domain_fraction, ArchiveEntry, ParetoArchive};
use crate::problem::{MultiObjectiveProblem, ProblemId};
use crate::solver::{
    solve_with, MobasParams, MobasRun, OuterRunRecord, SolveOptions, DEFAULT_OUTER_RUN_FACTOR,
};

/// Which trace files an experiment writes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TraceGranularity {
    /// Per-outer-run archive size and deviation only.
    #[default]
    Outer,
    /// Per-inner-iteration best values only.
    Inner,
    /// Both trace files.
    Both,
}

impl TraceGranularity {
    pub fn name(self) -> &'static str {
        match self {
            TraceGranularity::Outer => "outer",
            TraceGranularity::Inner => "inner",
            TraceGranularity::Both => "both",
        }
    }

    /// Whether the inner best-so-far series must be recorded.
    pub fn wants_inner(self) -> bool {
        matches!(self, TraceGranularity::Inner | TraceGranularity::Both)
    }

    /// Whether `trace_outer.csv` is written. The outer trace is the primary
    /// convergence artifact, so every granularity includes it.
    pub fn wants_outer(self) -> bool {
        true
    }
}

impl std::str::FromStr for TraceGranularity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "outer" => Ok(TraceGranularity::Outer),
            "inner" => Ok(TraceGranularity::Inner),
            "both" => Ok(TraceGranularity::Both),
            other => Err(Error::InvalidParameter {
                name: "trace",
                reason: format!("expected `outer`, `inner`, or `both`, got `{other}`"),
            }),
        }
    }
}

/// A fully specified experiment: the problem, where to write, and any
/// parameter overrides. Unset options fall back to the problem's defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub problem: ProblemId,
    pub out_dir: PathBuf,
    /// Decision-space dimension override for the scalable problems.
    pub dimension: Option<usize>,
    /// Archive target size `M`.
    pub points: Option<usize>,
    /// Inner iteration count `N`.
    pub iterations: Option<usize>,
    /// Initial step `delta0`.
    pub initial_step: Option<f64>,
    /// Antenna-to-step ratio `c`.
    pub antenna_ratio: Option<f64>,
    /// Step decay factor `alpha`.
    pub attenuation: Option<f64>,
    /// Outer-run budget.
    pub max_outer_runs: Option<usize>,
    pub seed: u64,
    pub trace: TraceGranularity,
    pub sign_convention: SignConvention,
    pub parallel: bool,
}

impl ExperimentConfig {
    pub fn new(problem: ProblemId, out_dir: impl Into<PathBuf>) -> ExperimentConfig {
        ExperimentConfig {
            problem,
            out_dir: out_dir.into(),
            dimension: None,
            points: None,
            iterations: None,
            initial_step: None,
            antenna_ratio: None,
            attenuation: None,
            max_outer_runs: None,
            seed: 0,
            trace: TraceGranularity::default(),
            sign_convention: SignConvention::default(),
            parallel: false,
        }
    }

    /// Builds the problem instance this config refers to.
    pub fn problem_instance(&self) -> Result<MultiObjectiveProblem> {
        benchmarks::by_id(self.problem, self.dimension)
    }

    /// Problem defaults with this config's overrides applied.
    ///
    /// Overriding `points` rescales the default outer-run budget before an
    /// explicit `max_outer_runs` is applied on top.
    pub fn resolved_params(&self, problem: &MultiObjectiveProblem) -> MobasParams {
        let mut params = MobasParams::for_problem(problem);
        if let Some(m) = self.points {
            let factor = params.max_outer_runs / params.target_size.max(1);
            params.target_size = m;
            params.max_outer_runs = factor.max(DEFAULT_OUTER_RUN_FACTOR) * m;
        }
        if let Some(n) = self.iterations {
            params.bas.max_iterations = n;
        }
        if let Some(step) = self.initial_step {
            params.bas.initial_step = step;
        }
        if let Some(ratio) = self.antenna_ratio {
            params.bas.antenna_ratio = ratio;
        }
        if let Some(alpha) = self.attenuation {
            params.bas.attenuation = alpha;
        }
        if let Some(cap) = self.max_outer_runs {
            params.max_outer_runs = cap;
        }
        params.bas.sign_convention = self.sign_convention;
        params.seed = self.seed;
        params
    }
}

/// A partial [`ExperimentConfig`]: every field optional, for layering a
/// config file under command-line flags.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigPatch {
    pub problem: Option<ProblemId>,
    pub out_dir: Option<PathBuf>,
    pub dimension: Option<usize>,
    pub points: Option<usize>,
    pub iterations: Option<usize>,
    pub initial_step: Option<f64>,
    pub antenna_ratio: Option<f64>,
    pub attenuation: Option<f64>,
    pub max_outer_runs: Option<usize>,
    pub seed: Option<u64>,
    pub trace: Option<TraceGranularity>,
    pub sign_convention: Option<SignConvention>,
    pub parallel: Option<bool>,
}

impl ConfigPatch {
    /// Parses a flat `key = value` file. Keys mirror the command-line flag
    /// names (dashes and underscores are interchangeable); `#` starts a
    /// comment; blank lines are skipped.
    pub fn from_file(path: &Path) -> Result<ConfigPatch> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_str_named(&text, path)
    }

    /// Parses config text, attributing errors to `path`.
    pub fn from_str_named(text: &str, path: &Path) -> Result<ConfigPatch> {
        let mut patch = ConfigPatch::default();
        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(path, line_no, "expected `key = value`".to_string()))?;
            patch.set(key.trim(), value.trim(), path, line_no)?;
        }
        Ok(patch)
    }

    fn set(&mut self, key: &str, value: &str, path: &Path, line: usize) -> Result<()> {
        fn bad<T>(path: &Path, line: usize, key: &str, value: &str) -> Result<T> {
            Err(Error::parse(
                path,
                line,
                format!("invalid value `{value}` for `{key}`"),
            ))
        }
        macro_rules! parse_as {
            ($ty:ty) => {
                match value.parse::<$ty>() {
                    Ok(v) => Some(v),
                    Err(_) => return bad(path, line, key, value),
                }
            };
        }
        match key.replace('-', "_").as_str() {
            "problem" => self.problem = parse_as!(ProblemId),
            "out" => self.out_dir = Some(PathBuf::from(value)),
            "dim" => self.dimension = parse_as!(usize),
            "points" => self.points = parse_as!(usize),
            "iters" => self.iterations = parse_as!(usize),
            "step0" => self.initial_step = parse_as!(f64),
            "ratio" => self.antenna_ratio = parse_as!(f64),
            "alpha" => self.attenuation = parse_as!(f64),
            "max_runs" => self.max_outer_runs = parse_as!(usize),
            "seed" => self.seed = parse_as!(u64),
            "trace" => self.trace = parse_as!(TraceGranularity),
            "sign_convention" => self.sign_convention = parse_as!(SignConvention),
            "parallel" => self.parallel = parse_as!(bool),
            other => return Err(Error::parse(path, line, format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Overlays `self` on `base`: fields set here win.
    pub fn over(self, base: ConfigPatch) -> ConfigPatch {
        ConfigPatch {
            problem: self.problem.or(base.problem),
            out_dir: self.out_dir.or(base.out_dir),
            dimension: self.dimension.or(base.dimension),
            points: self.points.or(base.points),
            iterations: self.iterations.or(base.iterations),
            initial_step: self.initial_step.or(base.initial_step),
            antenna_ratio: self.antenna_ratio.or(base.antenna_ratio),
            attenuation: self.attenuation.or(base.attenuation),
            max_outer_runs: self.max_outer_runs.or(base.max_outer_runs),
            seed: self.seed.or(base.seed),
            trace: self.trace.or(base.trace),
            sign_convention: self.sign_convention.or(base.sign_convention),
            parallel: self.parallel.or(base.parallel),
        }
    }

    /// Finalizes the patch into a runnable config. `problem` and `out` must
    /// have been supplied by some layer.
    pub fn finish(self) -> Result<ExperimentConfig> {
        let problem = self.problem.ok_or(Error::InvalidParameter {
            name: "problem",
            reason: "no problem named on the command line or in the config file".into(),
        })?;
        let out_dir = self.out_dir.ok_or(Error::InvalidParameter {
            name: "out",
            reason: "no output directory named on the command line or in the config file".into(),
        })?;
        let mut config = ExperimentConfig::new(problem, out_dir);
        config.dimension = self.dimension;
        config.points = self.points;
        config.iterations = self.iterations;
        config.initial_step = self.initial_step;
        config.antenna_ratio = self.antenna_ratio;
        config.attenuation = self.attenuation;
        config.max_outer_runs = self.max_outer_runs;
        config.seed = self.seed.unwrap_or(0);
        config.trace = self.trace.unwrap_or_default();
        config.sign_convention = self.sign_convention.unwrap_or_default();
        config.parallel = self.parallel.unwrap_or(false);
        Ok(config)
    }
}

/// Outcome of one experiment: the resolved setup, the solve itself, and the
/// final front deviation.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub problem: ProblemId,
    /// Decision-space dimension actually used.
    pub dimension: usize,
    /// Fully resolved parameters (the config echo).
    pub params: MobasParams,
    pub sign_convention: SignConvention,
    pub parallel: bool,
    /// Deviation of the final archive from the analytic front.
    pub final_ad: f64,
    /// Fraction of archive points whose `f1` lies inside the front's domain.
    pub in_domain: f64,
    pub run: MobasRun,
}

impl RunReport {
    /// Renders `report.txt`: one `key: value` line per setting or counter.
    pub fn render_text(&self) -> String {
        let stats = &self.run.stats;
        let mut out = String::new();
        let _ = writeln!(out, "problem: {}", self.problem.name());
        let _ = writeln!(out, "dimension: {}", self.dimension);
        let _ = writeln!(out, "points: {}", self.params.target_size);
        let _ = writeln!(out, "iterations: {}", self.params.bas.max_iterations);
        let _ = writeln!(out, "initial_step: {}", self.params.bas.initial_step);
        let _ = writeln!(out, "antenna_ratio: {}", self.params.bas.antenna_ratio);
        let _ = writeln!(out, "attenuation: {}", self.params.bas.attenuation);
        let _ = writeln!(out, "antenna_floor: {}", self.params.bas.antenna_floor);
        let _ = writeln!(out, "sign_convention: {}", self.sign_convention.name());
        let _ = writeln!(out, "seed: {}", self.params.seed);
        let _ = writeln!(out, "max_outer_runs: {}", self.params.max_outer_runs);
        let _ = writeln!(out, "parallel: {}", self.parallel);
        let _ = writeln!(out, "outer_runs: {}", stats.outer_runs);
        let _ = writeln!(out, "archive_size: {}", self.run.archive.len());
        let _ = writeln!(out, "truncated: {}", stats.truncated);
        let _ = writeln!(out, "accepted: {}", stats.accepted);
        let _ = writeln!(out, "rejected_dominated: {}", stats.rejected_dominated);
        let _ = writeln!(out, "rejected_duplicate: {}", stats.rejected_duplicate);
        let _ = writeln!(out, "infeasible: {}", stats.infeasible);
        let _ = writeln!(out, "evictions: {}", stats.evictions);
        let _ = writeln!(out, "final_ad: {}", self.final_ad);
        let _ = writeln!(out, "in_domain_fraction: {}", self.in_domain);
        let _ = writeln!(out, "solve_seconds: {:.3}", stats.solve_seconds);
        let _ = writeln!(out, "metric_seconds: {:.3}", stats.metric_seconds);
        out
    }
}

/// Serializes an archive as CSV with header `f1,f2,x1,...,xk`.
pub fn front_csv(archive: &ParetoArchive) -> Result<String> {
    let entries = archive.entries();
    let first = entries.first().ok_or(Error::EmptyPointSet)?;
    let mut out = String::new();
    for i in 1..=first.objectives.len() {
        if i > 1 {
            out.push(',');
        }
        let _ = write!(out, "f{i}");
    }
    for i in 1..=first.x.len() {
        let _ = write!(out, ",x{i}");
    }
    out.push('\n');
    for entry in entries {
        let mut first_col = true;
        for value in entry.objectives.iter().chain(&entry.x) {
            if !first_col {
                out.push(',');
            }
            let _ = write!(out, "{value}");
            first_col = false;
        }
        out.push('\n');
    }
    Ok(out)
}

/// Serializes per-outer-run progress as `outer_run,archive_size,ad`.
pub fn outer_trace_csv(records: &[OuterRunRecord]) -> String {
    let mut out = String::from("outer_run,archive_size,ad\n");
    for record in records {
        let _ = write!(out, "{},{},", record.run, record.archive_size);
        if let Some(ad) = record.ad {
            let _ = write!(out, "{ad}");
        }
        out.push('\n');
    }
    out
}

/// Serializes recorded inner traces as `outer_run,iteration,best_phi`.
/// Runs without a recorded trace are skipped.
pub fn inner_trace_csv(records: &[OuterRunRecord]) -> String {
    let mut out = String::from("outer_run,iteration,best_phi\n");
    for record in records {
        let Some(trace) = &record.inner_trace else {
            continue;
        };
        for (index, best) in trace.iter().enumerate() {
            let _ = writeln!(out, "{},{},{best}", record.run, index + 1);
        }
    }
    out
}

/// Reads a `front.csv` back into entries, checking the header shape and
/// attributing any defect to its line.
pub fn parse_front_csv(path: &Path) -> Result<Vec<ArchiveEntry>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(path, 1, "empty file, expected a header".to_string()))?;
    let columns: Vec<&str> = header.split(',').collect();
    let objective_count = columns.iter().take_while(|c| c.starts_with('f')).count();
    for (i, column) in columns.iter().enumerate() {
        let expected = if i < objective_count {
            format!("f{}", i + 1)
        } else {
            format!("x{}", i - objective_count + 1)
        };
        if *column != expected {
            return Err(Error::parse(
                path,
                1,
                format!("expected column `{expected}`, found `{column}`"),
            ));
        }
    }
    if objective_count < 2 {
        return Err(Error::parse(
            path,
            1,
            "need at least two objective columns".to_string(),
        ));
    }

    let mut entries = Vec::new();
    for (index, line) in lines {
        let line_no = index + 1;
        if line.is_empty() {
            continue;
        }
        let mut values = Vec::with_capacity(columns.len());
        for field in line.split(',') {
            let value: f64 = field
                .parse()
                .map_err(|_| Error::parse(path, line_no, format!("invalid number `{field}`")))?;
            values.push(value);
        }
        if values.len() != columns.len() {
            return Err(Error::parse(
                path,
                line_no,
                format!("expected {} fields, found {}", columns.len(), values.len()),
            ));
        }
        let x = values.split_off(objective_count);
        entries.push(ArchiveEntry {
            x,
            objectives: values,
        });
    }
    Ok(entries)
}

/// Recomputes the front deviation of a `front.csv` from the file alone.
///
/// This is the audit path for solver outputs: it shares no state with the
/// solve, only the analytic front and the metric definition.
pub fn evaluate_front_file(path: &Path, problem: ProblemId) -> Result<f64> {
    let front = FrontModel::for_problem(problem).ok_or(Error::NoFrontModel)?;
    let entries = parse_front_csv(path)?;
    let pairs: Vec<(f64, f64)> = entries
        .iter()
        .map(|e| (e.objectives[0], e.objectives[1]))
        .collect();
    ad_error(&pairs, &front)
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::io(path, e))
}

/// Runs one experiment end to end: solve, measure, and write `front.csv`,
/// `trace_outer.csv`, optional `trace_inner.csv`, and `report.txt`.
///
/// The output directory is created and probed for writability before any
/// search starts, so a bad path fails in milliseconds rather than after the
/// solve.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunReport> {
    let problem = config.problem_instance()?;
    let params = config.resolved_params(&problem);
    params.validate()?;

    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
    let front_path = config.out_dir.join("front.csv");
    fs::File::create(&front_path).map_err(|e| Error::io(&front_path, e))?;

    let options = SolveOptions {
        record_inner_traces: config.trace.wants_inner(),
        parallel: config.parallel,
    };
    let run = solve_with(&problem, &params, options)?;

    let front = FrontModel::for_problem(config.problem).ok_or(Error::NoFrontModel)?;
    let pairs = run.archive.objective_pairs();
    let final_ad = ad_error(&pairs, &front)?;
    let in_domain = in_domain_fraction(&pairs, &front);

    write_file(&front_path, &front_csv(&run.archive)?)?;
    write_file(
        &config.out_dir.join("trace_outer.csv"),
        &outer_trace_csv(&run.stats.records),
    )?;
    if config.trace.wants_inner() {
        write_file(
            &config.out_dir.join("trace_inner.csv"),
            &inner_trace_csv(&run.stats.records),
        )?;
    }

    let report = RunReport {
        problem: config.problem,
        dimension: problem.bounds().dimension(),
        params,
        sign_convention: config.sign_convention,
        parallel: config.parallel,
        final_ad,
        in_domain,
        run,
    };
    write_file(&config.out_dir.join("report.txt"), &report.render_text())?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn patch_from(text: &str) -> Result<ConfigPatch> {
        ConfigPatch::from_str_named(text, Path::new("test.conf"))
    }

    #[test]
    fn config_file_round_trips_every_key() {
        let patch = patch_from(
            "problem = zdt3\n\
             out = runs/demo\n\
             dim = 12\n\
             points = 50\n\
             iters = 100\n\
             step0 = 0.25\n\
             ratio = 4\n\
             alpha = 0.9\n\
             max-runs = 900\n\
             seed = 17\n\
             trace = both\n\
             sign-convention = printed\n\
             parallel = true\n",
        )
        .unwrap();
        let config = patch.finish().unwrap();
        assert_eq!(config.problem, ProblemId::Zdt3);
        assert_eq!(config.out_dir, PathBuf::from("runs/demo"));
        assert_eq!(config.dimension, Some(12));
        assert_eq!(config.points, Some(50));
        assert_eq!(config.iterations, Some(100));
        assert_eq!(config.initial_step, Some(0.25));
        assert_eq!(config.antenna_ratio, Some(4.0));
        assert_eq!(config.attenuation, Some(0.9));
        assert_eq!(config.max_outer_runs, Some(900));
        assert_eq!(config.seed, 17);
        assert_eq!(config.trace, TraceGranularity::Both);
        assert_eq!(config.sign_convention, SignConvention::Printed);
        assert!(config.parallel);
    }

    #[test]
    fn config_file_accepts_comments_blanks_and_underscores() {
        let patch = patch_from(
            "# an experiment\n\
             \n\
             problem = sch   # trailing comment\n\
             max_runs = 40\n\
             sign_convention = minus\n",
        )
        .unwrap();
        assert_eq!(patch.problem, Some(ProblemId::Sch));
        assert_eq!(patch.max_outer_runs, Some(40));
        assert_eq!(patch.sign_convention, Some(SignConvention::Minus));
    }

    #[test]
    fn config_file_errors_name_the_line() {
        let err = patch_from("problem = sch\nwat = 7\n").unwrap_err();
        assert!(
            matches!(&err, Error::Parse { line: 2, reason, .. } if reason.contains("wat")),
            "{err}"
        );

        let err = patch_from("alpha = fast\n").unwrap_err();
        assert!(
            matches!(&err, Error::Parse { line: 1, reason, .. } if reason.contains("fast")),
            "{err}"
        );

        let err = patch_from("just a line\n").unwrap_err();
        assert!(matches!(&err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn flags_override_file_values() {
        let file = patch_from("problem = zdt1\nseed = 3\npoints = 80\n").unwrap();
        let flags = ConfigPatch {
            seed: Some(9),
            out_dir: Some(PathBuf::from("out")),
            ..ConfigPatch::default()
        };
        let config = flags.over(file).finish().unwrap();
        assert_eq!(config.problem, ProblemId::Zdt1);
        assert_eq!(config.seed, 9, "flag beats file");
        assert_eq!(config.points, Some(80), "file fills the gap");
    }

    #[test]
    fn finish_requires_problem_and_out() {
        let err = ConfigPatch::default().finish().unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidParameter {
                name: "problem",
                ..
            }
        ));

        let err = ConfigPatch {
            problem: Some(ProblemId::Sch),
            ..ConfigPatch::default()
        }
        .finish()
        .unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { name: "out", .. }));
    }

    #[test]
    fn points_override_rescales_the_run_budget() {
        let config = ExperimentConfig {
            points: Some(10),
            ..ExperimentConfig::new(ProblemId::Sch, "out")
        };
        let problem = config.problem_instance().unwrap();
        let params = config.resolved_params(&problem);
        assert_eq!(params.target_size, 10);
        assert_eq!(params.max_outer_runs % 10, 0);
        assert!(params.max_outer_runs >= DEFAULT_OUTER_RUN_FACTOR * 10);

        let config = ExperimentConfig {
            points: Some(10),
            max_outer_runs: Some(25),
            ..ExperimentConfig::new(ProblemId::Sch, "out")
        };
        let params = config.resolved_params(&problem);
        assert_eq!(params.max_outer_runs, 25, "explicit cap wins");
    }

    #[test]
    fn front_csv_shape_and_round_trip() {
        let mut archive = ParetoArchive::new(4);
        archive.insert(ArchiveEntry {
            x: vec![0.1, 0.2, 0.3],
            objectives: vec![1.0, 2.0],
        });
        archive.insert(ArchiveEntry {
            x: vec![0.30000000000000004, 0.5, 0.7],
            objectives: vec![0.5, 3.0],
        });
        let csv = front_csv(&archive).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("f1,f2,x1,x2,x3"));
        assert_eq!(csv.lines().count(), 3);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("front.csv");
        fs::write(&path, &csv).unwrap();
        let parsed = parse_front_csv(&path).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].objectives, vec![1.0, 2.0]);
        assert_eq!(parsed[0].x, vec![0.1, 0.2, 0.3]);
        // Shortest round-trip text must restore the exact bit pattern.
        assert_eq!(parsed[1].x[0], 0.30000000000000004);
    }

    #[test]
    fn front_csv_rejects_empty_archives() {
        let archive = ParetoArchive::new(3);
        assert!(matches!(front_csv(&archive), Err(Error::EmptyPointSet)));
    }

    #[test]
    fn parse_front_csv_names_the_offending_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("front.csv");

        fs::write(&path, "f1,f2,x1\n0.5,0.5,0.5\n0.1,oops,0.9\n").unwrap();
        let err = parse_front_csv(&path).unwrap_err();
        assert!(
            matches!(&err, Error::Parse { line: 3, reason, .. } if reason.contains("oops")),
            "{err}"
        );

        fs::write(&path, "f1,f2,x1\n0.5,0.5\n").unwrap();
        let err = parse_front_csv(&path).unwrap_err();
        assert!(matches!(&err, Error::Parse { line: 2, .. }), "{err}");

        fs::write(&path, "f1,g2,x1\n").unwrap();
        let err = parse_front_csv(&path).unwrap_err();
        assert!(
            matches!(&err, Error::Parse { line: 1, reason, .. } if reason.contains("g2")),
            "{err}"
        );

        fs::write(&path, "f1,x1\n").unwrap();
        let err = parse_front_csv(&path).unwrap_err();
        assert!(
            matches!(&err, Error::Parse { line: 1, reason, .. } if reason.contains("two objective")),
            "{err}"
        );
    }

    #[test]
    fn evaluate_front_file_matches_hand_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("front.csv");

        // psi(0.25) = 1 - sqrt(0.25) = 0.5 on the convex front.
        fs::write(&path, "f1,f2,x1\n0.25,0.5,0.25\n").unwrap();
        let ad = evaluate_front_file(&path, ProblemId::Zdt1).unwrap();
        assert_eq!(ad, 0.0);

        // A single point 0.1 above the front: AD = 0.1 / 1.
        fs::write(&path, "f1,f2,x1\n0.25,0.6,0.25\n").unwrap();
        let ad = evaluate_front_file(&path, ProblemId::Zdt1).unwrap();
        assert!((ad - 0.1).abs() <= 1e-15, "{ad}");
    }

    #[test]
    fn evaluate_front_file_exact_samples_read_as_zero() {
        let dir = tempfile::tempdir().unwrap();
        for id in [
            ProblemId::Sch,
            ProblemId::Zdt1,
            ProblemId::Zdt2,
            ProblemId::Zdt3,
        ] {
            let front = FrontModel::for_problem(id).unwrap();
            let mut text = String::from("f1,f2,x1\n");
            for (f1, f2) in front.sample(64) {
                let _ = writeln!(text, "{f1},{f2},0");
            }
            let path = dir.path().join("samples.csv");
            fs::write(&path, &text).unwrap();
            let ad = evaluate_front_file(&path, id).unwrap();
            assert!(ad <= 1e-12, "{}: {ad}", id.name());
        }
    }

    #[test]
    fn evaluate_front_file_requires_an_analytic_front() {
        let err = evaluate_front_file(Path::new("nowhere.csv"), ProblemId::Custom).unwrap_err();
        assert!(matches!(err, Error::NoFrontModel));
    }

    #[test]
    fn minimal_experiment_writes_all_artifacts() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run");
        let config = ExperimentConfig {
            points: Some(1),
            iterations: Some(1),
            ..ExperimentConfig::new(ProblemId::Sch, &out)
        };
        let report = run_experiment(&config).unwrap();
        assert_eq!(report.run.archive.len(), 1);
        assert_eq!(report.dimension, 1);
        assert!(report.final_ad >= 0.0);
        assert!(out.join("front.csv").exists());
        assert!(out.join("trace_outer.csv").exists());
        assert!(!out.join("trace_inner.csv").exists(), "outer-only default");
        assert!(out.join("report.txt").exists());

        let text = fs::read_to_string(out.join("report.txt")).unwrap();
        for key in [
            "problem: sch",
            "points: 1",
            "iterations: 1",
            "seed: 0",
            "archive_size: 1",
            "final_ad:",
            "solve_seconds:",
        ] {
            assert!(text.contains(key), "report.txt missing `{key}`:\n{text}");
        }
    }

    #[test]
    fn inner_traces_appear_on_request() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run");
        let config = ExperimentConfig {
            points: Some(2),
            iterations: Some(3),
            trace: TraceGranularity::Both,
            ..ExperimentConfig::new(ProblemId::Sch, &out)
        };
        let report = run_experiment(&config).unwrap();
        let inner = fs::read_to_string(out.join("trace_inner.csv")).unwrap();
        let mut lines = inner.lines();
        assert_eq!(lines.next(), Some("outer_run,iteration,best_phi"));
        // Each counted outer run contributes exactly N rows.
        assert_eq!(
            inner.lines().count() - 1,
            report.run.stats.outer_runs * 3,
            "{inner}"
        );
    }

    #[test]
    fn unwritable_output_fails_before_solving() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("blocker");
        fs::write(&blocker, "a file, not a directory").unwrap();
        let config = ExperimentConfig {
            // A solve this size would take minutes; failing fast proves the
            // writability probe runs first.
            points: Some(100_000),
            ..ExperimentConfig::new(ProblemId::Zdt1, blocker.join("run"))
        };
        let start = std::time::Instant::now();
        let err = run_experiment(&config).unwrap_err();
        assert!(matches!(err, Error::Io { .. }), "{err}");
        assert!(start.elapsed().as_secs() < 5, "must fail before the solve");
    }

    #[test]
    fn rerunning_a_seed_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let run = |name: &str| -> (String, String) {
            let out = dir.path().join(name);
            let config = ExperimentConfig {
                points: Some(12),
                iterations: Some(60),
                seed: 5,
                ..ExperimentConfig::new(ProblemId::Sch, &out)
            };
            run_experiment(&config).unwrap();
            (
                fs::read_to_string(out.join("front.csv")).unwrap(),
                fs::read_to_string(out.join("trace_outer.csv")).unwrap(),
            )
        };
        let (front_a, trace_a) = run("a");
        let (front_b, trace_b) = run("b");
        assert_eq!(front_a, front_b);
        assert_eq!(trace_a, trace_b);
        assert!(front_a.lines().count() > 1);
    }

    #[test]
    fn eval_reproduces_the_report_deviation() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run");
        let config = ExperimentConfig {
            points: Some(15),
            iterations: Some(80),
            seed: 2,
            ..ExperimentConfig::new(ProblemId::Sch, &out)
        };
        let report = run_experiment(&config).unwrap();
        let ad = evaluate_front_file(&out.join("front.csv"), ProblemId::Sch).unwrap();
        assert!(
            (ad - report.final_ad).abs() <= 1e-12,
            "file {ad} vs report {}",
            report.final_ad
        );
    }
}
