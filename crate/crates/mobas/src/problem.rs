//! Problem definitions: box bounds and the multi-objective problem contract.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Axis-aligned box constraints, one `[lower, upper]` pair per coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    /// Builds bounds from parallel lower/upper vectors.
    ///
    /// Fails if the vectors disagree in length, are empty, contain
    /// non-finite values, or have `lower > upper` anywhere.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::InvalidParameter {
                name: "bounds",
                reason: "at least one coordinate is required".into(),
            });
        }
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::InvalidParameter {
                    name: "bounds",
                    reason: format!("coordinate {i} has invalid range [{lo}, {hi}]"),
                });
            }
        }
        Ok(Bounds { lower, upper })
    }

    /// The same finite range for every coordinate.
    pub fn uniform(dimension: usize, lower: f64, upper: f64) -> Result<Self> {
        Bounds::new(vec![lower; dimension], vec![upper; dimension])
    }

    /// Number of coordinates.
    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    /// Per-coordinate lower bounds.
    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    /// Per-coordinate upper bounds.
    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Largest componentwise box width.
    pub fn max_width(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| hi - lo)
            .fold(0.0, f64::max)
    }

    /// True when every coordinate of `x` lies inside its range (inclusive).
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| v >= lo && v <= hi)
    }

    /// Projects `x` componentwise onto the box, in place.
    pub fn clamp(&self, x: &mut [f64]) {
        for (v, (&lo, &hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(lo, hi);
        }
    }

    /// Returns the componentwise projection of `x` onto the box.
    pub fn clamped(&self, x: &[f64]) -> Vec<f64> {
        let mut out = x.to_vec();
        self.clamp(&mut out);
        out
    }

    /// Rejects points of the wrong dimension or outside the box.
    pub fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: x.len(),
            });
        }
        for (i, (&v, (&lo, &hi))) in x.iter().zip(self.lower.iter().zip(&self.upper)).enumerate() {
            if !(v >= lo && v <= hi) {
                return Err(Error::OutOfBounds {
                    index: i,
                    value: v,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(())
    }
}

/// Identifier of a problem instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemId {
    Sch,
    Zdt1,
    Zdt2,
    Zdt3,
    /// A user-supplied problem with no analytic front.
    Custom,
}

impl ProblemId {
    /// The four built-in benchmark ids, in listing order.
    pub const BUILTINS: [ProblemId; 4] = [
        ProblemId::Sch,
        ProblemId::Zdt1,
        ProblemId::Zdt2,
        ProblemId::Zdt3,
    ];

    /// Lowercase name used by the CLI and config files.
    pub fn name(self) -> &'static str {
        match self {
            ProblemId::Sch => "sch",
            ProblemId::Zdt1 => "zdt1",
            ProblemId::Zdt2 => "zdt2",
            ProblemId::Zdt3 => "zdt3",
            ProblemId::Custom => "custom",
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sch" => Ok(ProblemId::Sch),
            "zdt1" => Ok(ProblemId::Zdt1),
            "zdt2" => Ok(ProblemId::Zdt2),
            "zdt3" => Ok(ProblemId::Zdt3),
            other => Err(Error::UnknownProblem(other.to_string())),
        }
    }
}

type ObjectiveFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;
type FeasibilityFn = dyn Fn(&[f64]) -> bool + Send + Sync;

/// A box-bounded minimization problem with `objective_count` objectives.
///
/// Built-in benchmarks are constructed in [`crate::benchmarks`]; custom
/// problems supply their own evaluator (and optionally an extra feasibility
/// predicate on top of box membership).
#[derive(Clone)]
pub struct MultiObjectiveProblem {
    id: ProblemId,
    bounds: Bounds,
    objective_count: usize,
    objective: Arc<ObjectiveFn>,
    feasibility: Option<Arc<FeasibilityFn>>,
}

impl MultiObjectiveProblem {
    pub(crate) fn builtin(
        id: ProblemId,
        bounds: Bounds,
        objective_count: usize,
        objective: Arc<ObjectiveFn>,
    ) -> Self {
        MultiObjectiveProblem {
            id,
            bounds,
            objective_count,
            objective,
            feasibility: None,
        }
    }

    /// Wraps a user-supplied evaluator as a problem with no analytic front.
    ///
    /// `objective` must return exactly `objective_count` values for any
    /// in-bounds point; non-finite values are passed through and handled by
    /// the solver's step rejection.
    pub fn custom(
        bounds: Bounds,
        objective_count: usize,
        objective: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
        feasibility: Option<Box<FeasibilityFn>>,
    ) -> Result<Self> {
        if objective_count == 0 {
            return Err(Error::InvalidParameter {
                name: "objective_count",
                reason: "at least one objective is required".into(),
            });
        }
        Ok(MultiObjectiveProblem {
            id: ProblemId::Custom,
            bounds,
            objective_count,
            objective: Arc::new(objective),
            feasibility: feasibility.map(Arc::from),
        })
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    /// Decision-space dimension `k`.
    pub fn dimension(&self) -> usize {
        self.bounds.dimension()
    }

    /// Number of objectives `K`.
    pub fn objective_count(&self) -> usize {
        self.objective_count
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    /// Evaluates the objective vector at an in-bounds point.
    ///
    /// Rejects points of the wrong dimension or outside the box; callers
    /// clamp before evaluating. Also rejects evaluators that return the
    /// wrong number of values.
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.bounds.check(x)?;
        let f = (self.objective)(x);
        if f.len() != self.objective_count {
            return Err(Error::ObjectiveArity {
                expected: self.objective_count,
                actual: f.len(),
            });
        }
        Ok(f)
    }

    /// Evaluates without validation; `x` must already have the right
    /// dimension. Used on solver-internal points, which are clamped by
    /// construction.
    pub fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dimension());
        (self.objective)(x)
    }

    /// Box membership plus any custom feasibility predicate.
    pub fn is_feasible(&self, x: &[f64]) -> bool {
        self.bounds.contains(x) && self.feasibility.as_ref().is_none_or(|p| p(x))
    }
}

impl fmt::Debug for MultiObjectiveProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiObjectiveProblem")
            .field("id", &self.id)
            .field("dimension", &self.dimension())
            .field("objective_count", &self.objective_count)
            .finish_non_exhaustive()
    }
}
