//! Derivative-free multi-objective optimization with beetle antennae search.
//!
//! The crate approximates the Pareto front of a box-bounded minimization
//! problem by running many independent beetle searches, each on a randomly
//! weighted sum of the objectives, and collecting the non-dominated results
//! in an archive:
//!
//! * [`bas`]: the single-objective beetle antennae search.
//! * [`solver`]: the weighted-sum outer loop and Pareto archive filling.
//! * [`pareto`]: dominance, the archive itself, and front-deviation metrics.
//! * [`benchmarks`]: the `sch` and `zdt1`/`zdt2`/`zdt3` test problems with
//!   their analytic fronts.
//! * [`harness`]: experiment configs, CSV/report output, and front-file
//!   evaluation.
//! * [`cli`]: the `mobas` command-line interface.
//!
//! ```
//! use mobas::benchmarks;
//! use mobas::pareto::ad_error;
//! use mobas::solver::{solve, MobasParams};
//!
//! let problem = benchmarks::sch();
//! let mut params = MobasParams::for_problem(&problem);
//! params.target_size = 20;
//! params.seed = 7;
//! let run = solve(&problem, &params).unwrap();
//!
//! let front = benchmarks::FrontModel::for_problem(problem.id()).unwrap();
//! let ad = ad_error(&run.archive.objective_pairs(), &front).unwrap();
//! assert!(ad < 1e-3);
//! ```

pub mod bas;
pub mod benchmarks;
pub mod cli;
pub mod error;
pub mod harness;
pub mod pareto;
pub mod problem;
pub mod solver;

pub use error::{Error, Result};

// Compile and run every code block in the guide as a doctest, one module per
// chapter so a failure names its source file. This keeps the book from
// drifting away from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/beetle-search.md")]
    mod beetle_search {}
    #[doc = include_str!("../../../book/src/pareto-archive.md")]
    mod pareto_archive {}
    #[doc = include_str!("../../../book/src/solver.md")]
    mod solver {}
    #[doc = include_str!("../../../book/src/benchmarks.md")]
    mod benchmarks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
