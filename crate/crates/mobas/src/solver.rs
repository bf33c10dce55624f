//! Multi-objective solving by repeated scalarized beetle searches.
//!
//! Each outer run draws a random weight vector, scalarizes the objectives
//! into a single weighted sum, minimizes it with a fresh beetle search from
//! a random start (step schedule reset to its initial value), and offers the
//! run's best point to a Pareto archive. Runs repeat until the archive holds
//! its target number of entries or an outer-run budget is exhausted; hitting
//! the budget yields a truncated (partial) archive rather than an error.
//!
//! ```
//! use mobas::benchmarks;
//! use mobas::solver::{solve, MobasParams};
//!
//! let problem = benchmarks::sch();
//! let mut params = MobasParams::for_problem(&problem);
//! params.target_size = 12;
//! params.bas.max_iterations = 150;
//! params.seed = 3;
//! let run = solve(&problem, &params).unwrap();
//! assert_eq!(run.archive.len(), 12);
//! assert!(!run.stats.truncated);
//! ```

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bas::{self, BasParams, BasRun};
use crate::benchmarks::FrontModel;
use crate::error::{Error, Result};
use crate::pareto::{ad_error, ArchiveEntry, InsertOutcome, ParetoArchive};
use crate::problem::MultiObjectiveProblem;

/// Tolerance on the weight-vector sum.
pub const WEIGHT_SUM_EPSILON: f64 = 1e-12;

/// Default archive target size `M`.
pub const DEFAULT_TARGET_SIZE: usize = 200;

/// Default outer-run budget as a multiple of the target size.
pub const DEFAULT_OUTER_RUN_FACTOR: usize = 20;

/// Outer-run budget multiple for the high-dimensional benchmark presets.
///
/// On the 30-dimensional problems most candidates lose their dominance
/// battle against the archive, and quality keeps improving for thousands of
/// runs as later candidates evict earlier, worse entries. A 20x budget cuts
/// that refinement short; 100x lets it play out in a few seconds.
pub const REFINEMENT_RUN_FACTOR: usize = 100;

/// Batch width used by the parallel mode.
const PARALLEL_BATCH: usize = 64;

/// Initial step, as a fraction of the widest box side, for the scalable
/// benchmark presets (calibrated at their default dimension).
const ZDT_STEP_FACTOR: f64 = 0.5;

/// Step decay for the presets whose fronts reward slow archive filling
/// (calibrated at the default dimension alongside [`ZDT_STEP_FACTOR`]).
const SLOW_FILL_ATTENUATION: f64 = 0.995;

/// Non-negative weights summing to one, used to collapse objectives into a
/// single scalar value.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Accepts weights that are already non-negative and sum to one within
    /// [`WEIGHT_SUM_EPSILON`].
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: "at least one weight is required".into(),
            });
        }
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: format!("weights must be finite and non-negative, got {weights:?}"),
            });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_EPSILON {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: format!("weights must sum to 1, got {sum}"),
            });
        }
        Ok(WeightVector(weights))
    }

    /// Rescales raw non-negative draws so they sum to one. Rejects negative
    /// components and vectors whose sum is below [`WEIGHT_SUM_EPSILON`].
    pub fn normalized(raw: Vec<f64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: "at least one weight is required".into(),
            });
        }
        if raw.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: format!("raw weights must be finite and non-negative, got {raw:?}"),
            });
        }
        let sum: f64 = raw.iter().sum();
        if sum < WEIGHT_SUM_EPSILON {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: format!("raw weight sum {sum} is too small to normalize"),
            });
        }
        Ok(WeightVector(raw.into_iter().map(|w| w / sum).collect()))
    }

    /// Draws independent uniform components on `[0, 1)` and normalizes,
    /// redrawing in the (measure-zero) case of a vanishing sum.
    pub fn random(count: usize, rng: &mut impl Rng) -> Self {
        assert!(count > 0, "at least one weight is required");
        loop {
            let raw: Vec<f64> = (0..count).map(|_| rng.random::<f64>()).collect();
            if let Ok(w) = WeightVector::normalized(raw) {
                return w;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Weighted sum of an objective vector. Non-finite objective values
    /// propagate into the result, where the beetle search rejects them.
    /// Panics on length mismatch.
    pub fn scalarize(&self, objectives: &[f64]) -> f64 {
        assert_eq!(
            self.0.len(),
            objectives.len(),
            "scalarization needs one weight per objective"
        );
        self.0.iter().zip(objectives).map(|(w, f)| w * f).sum()
    }
}

/// Parameters of one multi-objective solve.
#[derive(Clone, Debug, PartialEq)]
pub struct MobasParams {
    /// Archive target size `M`.
    pub target_size: usize,
    /// Outer-run budget; hitting it truncates the archive.
    pub max_outer_runs: usize,
    /// Master seed for all randomness in the solve.
    pub seed: u64,
    /// Inner beetle-search settings, including the iteration count `N`.
    pub bas: BasParams,
}

impl MobasParams {
    /// Defaults for a problem: 200 archive points and a beetle search scaled
    /// to the problem's box, with calibrated presets for the built-in
    /// benchmarks.
    ///
    /// The scalable benchmarks get a larger initial step, a bigger outer-run
    /// budget, and (except for the one with a concave front, where the
    /// dimension-scaled decay already measures best) a slower step decay.
    /// All three changes trade seconds of extra search for an order of
    /// magnitude less front deviation at the default dimension. Custom
    /// problems use the dimension-scaled formula alone.
    pub fn for_problem(problem: &MultiObjectiveProblem) -> MobasParams {
        use crate::problem::ProblemId;

        let target_size = DEFAULT_TARGET_SIZE;
        let mut params = MobasParams {
            target_size,
            max_outer_runs: DEFAULT_OUTER_RUN_FACTOR * target_size,
            seed: 0,
            bas: BasParams::for_bounds(problem.bounds()),
        };
        match problem.id() {
            ProblemId::Zdt1 | ProblemId::Zdt3 => {
                params.bas.initial_step = ZDT_STEP_FACTOR * problem.bounds().max_width();
                params.bas.attenuation = SLOW_FILL_ATTENUATION;
                params.max_outer_runs = REFINEMENT_RUN_FACTOR * target_size;
            }
            ProblemId::Zdt2 => {
                params.bas.initial_step = ZDT_STEP_FACTOR * problem.bounds().max_width();
                params.max_outer_runs = REFINEMENT_RUN_FACTOR * target_size;
            }
            ProblemId::Sch | ProblemId::Custom => {}
        }
        params
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_size == 0 {
            return Err(Error::InvalidParameter {
                name: "target_size",
                reason: "at least one archive entry is required".into(),
            });
        }
        if self.max_outer_runs == 0 {
            return Err(Error::InvalidParameter {
                name: "max_outer_runs",
                reason: "at least one outer run is required".into(),
            });
        }
        self.bas.validate()
    }
}

/// How a single outer run's candidate fared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateOutcome {
    /// Entered the archive, evicting this many dominated entries.
    Accepted { evicted: usize },
    /// Dominated by an existing archive entry.
    RejectedDominated,
    /// Duplicated an existing archive entry's objectives.
    RejectedDuplicate,
    /// Failed the problem's feasibility check and was never offered.
    Infeasible,
}

impl From<InsertOutcome> for CandidateOutcome {
    fn from(outcome: InsertOutcome) -> Self {
        match outcome {
            InsertOutcome::Accepted { evicted } => CandidateOutcome::Accepted { evicted },
            InsertOutcome::RejectedDominated => CandidateOutcome::RejectedDominated,
            InsertOutcome::RejectedDuplicate => CandidateOutcome::RejectedDuplicate,
        }
    }
}

/// One outer run's bookkeeping.
#[derive(Clone, Debug)]
pub struct OuterRunRecord {
    /// 1-based outer run index.
    pub run: usize,
    /// The weight vector drawn for this run.
    pub weights: Vec<f64>,
    /// Objective vector of the run's best point.
    pub objectives: Vec<f64>,
    /// Best scalarized value reached by the inner search.
    pub best_value: f64,
    /// What happened to the candidate.
    pub outcome: CandidateOutcome,
    /// Archive size after this run.
    pub archive_size: usize,
    /// Front deviation of the archive after this run, when an analytic
    /// front exists and the archive is non-empty.
    pub ad: Option<f64>,
    /// Best-so-far scalarized value per inner iteration, when recording is
    /// enabled.
    pub inner_trace: Option<Vec<f64>>,
}

/// Counters and per-run records for a whole solve.
#[derive(Clone, Debug, Default)]
pub struct RunStats {
    /// Outer runs whose result was used (in parallel mode, a few extra runs
    /// may be computed and discarded when the archive fills mid-batch).
    pub outer_runs: usize,
    pub accepted: usize,
    pub rejected_dominated: usize,
    pub rejected_duplicate: usize,
    pub infeasible: usize,
    /// Entries evicted by later dominating candidates.
    pub evictions: usize,
    /// True when the run budget was exhausted before the archive filled.
    pub truncated: bool,
    /// True when the parallel mode produced this solve.
    pub parallel: bool,
    /// Wall-clock seconds spent solving, excluding metric evaluation.
    pub solve_seconds: f64,
    /// Wall-clock seconds spent on front-deviation metrics.
    pub metric_seconds: f64,
    /// One record per counted outer run.
    pub records: Vec<OuterRunRecord>,
}

/// A finished solve: the archive plus its statistics.
#[derive(Clone, Debug)]
pub struct MobasRun {
    pub archive: ParetoArchive,
    pub stats: RunStats,
}

/// Optional behaviors of [`solve_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Keep each run's inner best-so-far trace (memory for runs x N values).
    pub record_inner_traces: bool,
    /// Run outer iterations concurrently. Entries arrive in a different
    /// order than the sequential mode, but all archive invariants and
    /// per-seed reproducibility still hold.
    pub parallel: bool,
}

/// Solves with default options (sequential, no inner traces).
pub fn solve(problem: &MultiObjectiveProblem, params: &MobasParams) -> Result<MobasRun> {
    solve_with(problem, params, SolveOptions::default())
}

/// Solves a multi-objective problem by weighted-sum beetle searches.
///
/// All randomness derives from `params.seed`; a repeated call with identical
/// inputs reproduces the archive and all records bit for bit.
pub fn solve_with(
    problem: &MultiObjectiveProblem,
    params: &MobasParams,
    options: SolveOptions,
) -> Result<MobasRun> {
    params.validate()?;
    let front = FrontModel::for_problem(problem.id());
    let mut archive = ParetoArchive::new(params.target_size);
    let mut stats = RunStats {
        parallel: options.parallel,
        ..RunStats::default()
    };
    let started = Instant::now();
    let mut metric_time = Duration::ZERO;

    if options.parallel {
        let mut launched = 0usize;
        'batches: while !archive.is_full() && launched < params.max_outer_runs {
            let batch = PARALLEL_BATCH.min(params.max_outer_runs - launched);
            let candidates: Vec<Result<Candidate>> = (0..batch)
                .into_par_iter()
                .map(|j| {
                    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
                    rng.set_stream((launched + j) as u64 + 1);
                    sample_candidate(problem, params, &mut rng)
                })
                .collect();
            launched += batch;
            for candidate in candidates {
                process_candidate(
                    candidate?,
                    &mut archive,
                    &mut stats,
                    front.as_ref(),
                    &options,
                    &mut metric_time,
                );
                if archive.is_full() {
                    break 'batches;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        while !archive.is_full() && stats.outer_runs < params.max_outer_runs {
            let candidate = sample_candidate(problem, params, &mut rng)?;
            process_candidate(
                candidate,
                &mut archive,
                &mut stats,
                front.as_ref(),
                &options,
                &mut metric_time,
            );
        }
    }

    stats.truncated = !archive.is_full();
    stats.metric_seconds = metric_time.as_secs_f64();
    stats.solve_seconds = (started.elapsed().saturating_sub(metric_time)).as_secs_f64();
    Ok(MobasRun { archive, stats })
}

/// One outer run's raw product, before it meets the archive.
struct Candidate {
    weights: WeightVector,
    bas_run: BasRun,
    objectives: Vec<f64>,
    feasible: bool,
}

fn sample_candidate(
    problem: &MultiObjectiveProblem,
    params: &MobasParams,
    rng: &mut ChaCha8Rng,
) -> Result<Candidate> {
    let weights = WeightVector::random(problem.objective_count(), rng);
    let bounds = problem.bounds();
    let x0: Vec<f64> = bounds
        .lower()
        .iter()
        .zip(bounds.upper())
        .map(|(&lo, &hi)| rng.random_range(lo..=hi))
        .collect();
    let scalarized = |x: &[f64]| weights.scalarize(&problem.evaluate_unchecked(x));
    let bas_run = bas::minimize(scalarized, bounds, &x0, &params.bas, rng)?;
    let objectives = problem.evaluate_unchecked(&bas_run.best_position);
    let feasible = problem.is_feasible(&bas_run.best_position);
    Ok(Candidate {
        weights,
        bas_run,
        objectives,
        feasible,
    })
}

fn process_candidate(
    candidate: Candidate,
    archive: &mut ParetoArchive,
    stats: &mut RunStats,
    front: Option<&FrontModel>,
    options: &SolveOptions,
    metric_time: &mut Duration,
) {
    stats.outer_runs += 1;
    let outcome = if candidate.feasible {
        let insert = archive.insert(ArchiveEntry {
            x: candidate.bas_run.best_position.clone(),
            objectives: candidate.objectives.clone(),
        });
        match insert {
            InsertOutcome::Accepted { evicted } => {
                stats.accepted += 1;
                stats.evictions += evicted;
            }
            InsertOutcome::RejectedDominated => stats.rejected_dominated += 1,
            InsertOutcome::RejectedDuplicate => stats.rejected_duplicate += 1,
        }
        insert.into()
    } else {
        stats.infeasible += 1;
        CandidateOutcome::Infeasible
    };

    let ad = front.and_then(|fm| {
        if archive.is_empty() {
            None
        } else {
            let t = Instant::now();
            let value = ad_error(&archive.objective_pairs(), fm).ok();
            *metric_time += t.elapsed();
            value
        }
    });

    stats.records.push(OuterRunRecord {
        run: stats.outer_runs,
        weights: candidate.weights.as_slice().to_vec(),
        objectives: candidate.objectives,
        best_value: candidate.bas_run.best_value,
        outcome,
        archive_size: archive.len(),
        ad,
        inner_trace: options
            .record_inner_traces
            .then_some(candidate.bas_run.trace),
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{self, FrontModel};
    use crate::pareto::dominates;
    use crate::problem::{Bounds, ProblemId};
    use proptest::prelude::*;

    #[test]
    fn weights_normalize_raw_draws() {
        let w = WeightVector::normalized(vec![0.2, 0.6]).unwrap();
        assert!((w.as_slice()[0] - 0.25).abs() <= 1e-15);
        assert!((w.as_slice()[1] - 0.75).abs() <= 1e-15);
        let exact = WeightVector::normalized(vec![1.0, 3.0]).unwrap();
        assert_eq!(exact.as_slice(), &[0.25, 0.75]);
    }

    #[test]
    fn weights_reject_bad_input() {
        assert!(WeightVector::new(vec![0.5, 0.6]).is_err());
        assert!(WeightVector::new(vec![1.5, -0.5]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
        assert!(WeightVector::normalized(vec![0.0, 0.0]).is_err());
        assert!(WeightVector::normalized(vec![-0.1, 0.9]).is_err());
        assert!(WeightVector::new(vec![0.5, 0.5]).is_ok());
        assert!(WeightVector::new(vec![1.0, 0.0]).is_ok());
    }

    #[test]
    fn scalarize_is_the_weighted_sum() {
        let half = WeightVector::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(half.scalarize(&[2.0, 4.0]), 3.0);
        let first_only = WeightVector::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(first_only.scalarize(&[2.0, 4.0]), 2.0);
        assert!(half.scalarize(&[f64::NAN, 1.0]).is_nan());
    }

    #[test]
    #[should_panic(expected = "one weight per objective")]
    fn scalarize_panics_on_length_mismatch() {
        WeightVector::new(vec![1.0]).unwrap().scalarize(&[1.0, 2.0]);
    }

    #[test]
    fn random_weights_are_normalized() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for k in [1usize, 2, 5] {
            for _ in 0..500 {
                let w = WeightVector::random(k, &mut rng);
                assert_eq!(w.len(), k);
                assert!(w.as_slice().iter().all(|&v| v >= 0.0));
                let sum: f64 = w.as_slice().iter().sum();
                assert!((sum - 1.0).abs() <= WEIGHT_SUM_EPSILON);
                if k == 1 {
                    assert_eq!(w.as_slice(), &[1.0]);
                }
            }
        }
    }

    #[test]
    fn benchmark_presets_follow_the_calibration() {
        let sch = MobasParams::for_problem(&benchmarks::sch());
        assert_eq!(sch.target_size, DEFAULT_TARGET_SIZE);
        assert_eq!(sch.bas.initial_step, 200.0);
        assert_eq!(sch.bas.attenuation, 0.95);
        assert_eq!(
            sch.max_outer_runs,
            DEFAULT_OUTER_RUN_FACTOR * sch.target_size
        );

        let zdt1 = MobasParams::for_problem(&benchmarks::zdt1(30).unwrap());
        assert_eq!(zdt1.bas.initial_step, 0.5);
        assert_eq!(zdt1.bas.attenuation, 0.995);
        assert_eq!(
            zdt1.max_outer_runs,
            REFINEMENT_RUN_FACTOR * zdt1.target_size
        );

        let zdt2 = MobasParams::for_problem(&benchmarks::zdt2(30).unwrap());
        assert_eq!(zdt2.bas.initial_step, 0.5);
        assert_eq!(zdt2.bas.attenuation, 1.0 - 0.05 / 30f64.sqrt());
        assert_eq!(
            zdt2.max_outer_runs,
            REFINEMENT_RUN_FACTOR * zdt2.target_size
        );

        let zdt3 = MobasParams::for_problem(&benchmarks::zdt3(30).unwrap());
        assert_eq!(zdt3.bas.initial_step, 0.5);
        assert_eq!(zdt3.bas.attenuation, 0.995);

        // Custom problems fall through to the dimension-scaled formula.
        let custom = crate::problem::MultiObjectiveProblem::custom(
            Bounds::uniform(9, 0.0, 2.0).unwrap(),
            2,
            |x| vec![x[0], x[1]],
            None,
        )
        .unwrap();
        let params = MobasParams::for_problem(&custom);
        assert_eq!(params.bas.initial_step, 0.1 * 3.0 * 2.0);
        assert_eq!(params.bas.attenuation, 1.0 - 0.05 / 3.0);
        assert_eq!(
            params.max_outer_runs,
            DEFAULT_OUTER_RUN_FACTOR * params.target_size
        );
    }

    fn small_sch_params(target: usize, iters: usize, seed: u64) -> MobasParams {
        let problem = benchmarks::sch();
        let mut params = MobasParams::for_problem(&problem);
        params.target_size = target;
        params.max_outer_runs = 20 * target;
        params.bas.max_iterations = iters;
        params.seed = seed;
        params
    }

    #[test]
    fn sch_solve_fills_a_clean_archive() {
        let problem = benchmarks::sch();
        let params = small_sch_params(10, 200, 42);
        let run = solve(&problem, &params).unwrap();
        assert_eq!(run.archive.len(), 10);
        assert!(!run.stats.truncated);
        let front = FrontModel::for_problem(ProblemId::Sch).unwrap();
        let entries = run.archive.entries();
        for (i, a) in entries.iter().enumerate() {
            assert!(problem.is_feasible(&a.x));
            let deviation = (front.psi(a.objectives[0]) - a.objectives[1]).abs();
            assert!(deviation <= 1e-2, "entry {i} deviates by {deviation}");
            for (j, b) in entries.iter().enumerate() {
                if i != j {
                    assert!(!dominates(&a.objectives, &b.objectives));
                }
            }
        }
    }

    #[test]
    fn single_point_solve_replays_one_outer_run() {
        use rand::SeedableRng;
        let problem = benchmarks::sch();
        let params = small_sch_params(1, 100, 5);
        let run = solve(&problem, &params).unwrap();
        assert_eq!(run.archive.len(), 1);
        assert_eq!(run.stats.outer_runs, 1);

        // Replay the documented draw order by hand: weights, start point,
        // then the inner search on the scalarized objective.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let w = WeightVector::random(2, &mut rng);
        let bounds = problem.bounds();
        let x0: Vec<f64> = bounds
            .lower()
            .iter()
            .zip(bounds.upper())
            .map(|(&lo, &hi)| rng.random_range(lo..=hi))
            .collect();
        let inner = crate::bas::minimize(
            |x: &[f64]| w.scalarize(&problem.evaluate_unchecked(x)),
            bounds,
            &x0,
            &params.bas,
            &mut rng,
        )
        .unwrap();
        assert_eq!(run.archive.entries()[0].x, inner.best_position);
        assert_eq!(run.stats.records[0].weights, w.as_slice());
        assert_eq!(run.stats.records[0].best_value, inner.best_value);
    }

    #[test]
    fn identical_seeds_reproduce_the_archive_bit_for_bit() {
        let problem = benchmarks::zdt1(6).unwrap();
        let mut params = MobasParams::for_problem(&problem);
        params.target_size = 15;
        params.bas.max_iterations = 120;
        params.seed = 99;
        let a = solve(&problem, &params).unwrap();
        let b = solve(&problem, &params).unwrap();
        assert_eq!(a.archive.entries().len(), b.archive.entries().len());
        for (ea, eb) in a.archive.entries().iter().zip(b.archive.entries()) {
            assert_eq!(ea, eb);
        }
        assert_eq!(a.stats.outer_runs, b.stats.outer_runs);

        params.seed = 100;
        let c = solve(&problem, &params).unwrap();
        assert_ne!(
            a.archive.entries().first().map(|e| e.objectives.clone()),
            c.archive.entries().first().map(|e| e.objectives.clone()),
            "a different seed should explore differently"
        );
    }

    #[test]
    fn recorded_best_values_match_recomputed_weighted_sums() {
        let problem = benchmarks::zdt2(5).unwrap();
        let mut params = MobasParams::for_problem(&problem);
        params.target_size = 10;
        params.bas.max_iterations = 80;
        params.seed = 17;
        let run = solve(&problem, &params).unwrap();
        for record in &run.stats.records {
            let w = WeightVector::new(record.weights.clone()).unwrap();
            let recomputed = w.scalarize(&record.objectives);
            assert!(
                (recomputed - record.best_value).abs() <= 1e-9,
                "run {}: {} vs {}",
                record.run,
                recomputed,
                record.best_value
            );
        }
    }

    #[test]
    fn exhausted_budget_truncates_without_error() {
        let problem = benchmarks::sch();
        let mut params = small_sch_params(200, 50, 1);
        params.max_outer_runs = 3;
        let run = solve(&problem, &params).unwrap();
        assert!(run.stats.truncated);
        assert_eq!(run.stats.outer_runs, 3);
        assert!(run.archive.len() <= 3);
        assert!(!run.archive.is_empty());
    }

    #[test]
    fn counters_reconcile_with_the_archive() {
        let problem = benchmarks::zdt1(4).unwrap();
        let mut params = MobasParams::for_problem(&problem);
        params.target_size = 25;
        params.bas.max_iterations = 60;
        params.seed = 2;
        let run = solve(&problem, &params).unwrap();
        let s = &run.stats;
        assert_eq!(
            s.accepted + s.rejected_dominated + s.rejected_duplicate + s.infeasible,
            s.outer_runs
        );
        assert_eq!(s.accepted - s.evictions, run.archive.len());
        assert_eq!(s.records.len(), s.outer_runs);
        assert_eq!(s.records.last().unwrap().archive_size, run.archive.len());
        let monotone_ad = s.records.iter().filter_map(|r| r.ad).all(|ad| ad >= 0.0);
        assert!(monotone_ad);
    }

    #[test]
    fn inner_traces_are_recorded_on_request() {
        let problem = benchmarks::sch();
        let params = small_sch_params(3, 40, 11);
        let with = solve_with(
            &problem,
            &params,
            SolveOptions {
                record_inner_traces: true,
                parallel: false,
            },
        )
        .unwrap();
        for record in &with.stats.records {
            let trace = record.inner_trace.as_ref().expect("trace requested");
            assert_eq!(trace.len(), 40);
            assert_eq!(*trace.last().unwrap(), record.best_value);
        }
        let without = solve(&problem, &params).unwrap();
        assert!(without
            .stats
            .records
            .iter()
            .all(|r| r.inner_trace.is_none()));
    }

    #[test]
    fn parallel_mode_upholds_archive_invariants_deterministically() {
        let problem = benchmarks::zdt1(5).unwrap();
        let mut params = MobasParams::for_problem(&problem);
        params.target_size = 20;
        params.bas.max_iterations = 100;
        params.seed = 31;
        let options = SolveOptions {
            record_inner_traces: false,
            parallel: true,
        };
        let a = solve_with(&problem, &params, options).unwrap();
        assert_eq!(a.archive.len(), 20);
        assert!(a.stats.parallel);
        let entries = a.archive.entries();
        for (i, ea) in entries.iter().enumerate() {
            assert!(problem.is_feasible(&ea.x));
            for (j, eb) in entries.iter().enumerate() {
                if i != j {
                    assert!(!dominates(&ea.objectives, &eb.objectives));
                }
            }
        }
        let b = solve_with(&problem, &params, options).unwrap();
        for (ea, eb) in a.archive.entries().iter().zip(b.archive.entries()) {
            assert_eq!(ea, eb, "parallel mode replays per-run streams");
        }
    }

    #[test]
    fn invalid_params_are_rejected() {
        let problem = benchmarks::sch();
        let mut params = MobasParams::for_problem(&problem);
        params.target_size = 0;
        assert!(solve(&problem, &params).is_err());
        params.target_size = 5;
        params.max_outer_runs = 0;
        assert!(solve(&problem, &params).is_err());
        params.max_outer_runs = 10;
        params.bas.attenuation = 1.5;
        assert!(solve(&problem, &params).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn archives_are_non_dominated_for_any_seed(seed in 0u64..1000) {
            let problem = benchmarks::zdt3(4).unwrap();
            let mut params = MobasParams::for_problem(&problem);
            params.target_size = 8;
            params.bas.max_iterations = 50;
            params.seed = seed;
            let run = solve(&problem, &params).unwrap();
            let entries = run.archive.entries();
            prop_assert!(!entries.is_empty());
            for (i, a) in entries.iter().enumerate() {
                for (j, b) in entries.iter().enumerate() {
                    if i != j {
                        prop_assert!(!dominates(&a.objectives, &b.objectives));
                    }
                }
            }
        }
    }
}
