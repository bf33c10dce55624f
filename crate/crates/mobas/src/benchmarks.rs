//! Built-in benchmark problems and their analytic Pareto fronts.
//!
//! Four two-objective minimization problems are provided:
//!
//! * `sch`: one decision variable `x` in `[-1000, 1000]`, objectives
//!   `f1 = x^2` and `f2 = (x - 2)^2`. Front: `f2 = (sqrt(f1) - 2)^2` for
//!   `f1` in `[0, 4]`.
//! * `zdt1`: `k` variables in `[0, 1]`, `f1 = x1`,
//!   `f2 = g (1 - sqrt(f1/g))` with `g = 1 + 9 (x2 + .. + xk) / (k - 1)`.
//!   Convex front `f2 = 1 - sqrt(f1)`.
//! * `zdt2`: same `g`, `f2 = g (1 - (f1/g)^2)`. Concave front
//!   `f2 = 1 - f1^2`.
//! * `zdt3`: same `g`, `f2 = g (1 - sqrt(f1/g) - (f1/g) sin(10 pi f1))`.
//!   Disconnected front `f2 = 1 - sqrt(f1) - f1 sin(10 pi f1)` over five
//!   `f1` intervals.
//!
//! Setting every tail variable `x2..xk` to zero makes `g = 1` and places a
//! ZDT point exactly on its front.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problem::{Bounds, MultiObjectiveProblem, ProblemId};

/// Default decision-space dimension for the ZDT family.
pub const DEFAULT_ZDT_DIMENSION: usize = 30;

/// The `sch` problem: `f1 = x^2`, `f2 = (x - 2)^2` on `[-1000, 1000]`.
pub fn sch() -> MultiObjectiveProblem {
    let bounds = Bounds::uniform(1, -1000.0, 1000.0).expect("valid constant bounds");
    MultiObjectiveProblem::builtin(
        ProblemId::Sch,
        bounds,
        2,
        Arc::new(|x: &[f64]| {
            let v = x[0];
            vec![v * v, (v - 2.0) * (v - 2.0)]
        }),
    )
}

/// Shared ZDT scaling term `g(x) = 1 + 9 (x2 + .. + xk) / (k - 1)`.
fn zdt_g(x: &[f64]) -> f64 {
    let tail: f64 = x[1..].iter().sum();
    1.0 + 9.0 * tail / (x.len() - 1) as f64
}

fn zdt_bounds(dimension: usize) -> Result<Bounds> {
    if dimension < 2 {
        return Err(Error::InvalidParameter {
            name: "dimension",
            reason: format!("ZDT problems need at least 2 variables, got {dimension}"),
        });
    }
    Bounds::uniform(dimension, 0.0, 1.0)
}

/// The `zdt1` problem with `dimension` variables (at least 2).
pub fn zdt1(dimension: usize) -> Result<MultiObjectiveProblem> {
    let bounds = zdt_bounds(dimension)?;
    Ok(MultiObjectiveProblem::builtin(
        ProblemId::Zdt1,
        bounds,
        2,
        Arc::new(|x: &[f64]| {
            let f1 = x[0];
            let g = zdt_g(x);
            let r = f1 / g;
            vec![f1, g * (1.0 - r.sqrt())]
        }),
    ))
}

/// The `zdt2` problem with `dimension` variables (at least 2).
pub fn zdt2(dimension: usize) -> Result<MultiObjectiveProblem> {
    let bounds = zdt_bounds(dimension)?;
    Ok(MultiObjectiveProblem::builtin(
        ProblemId::Zdt2,
        bounds,
        2,
        Arc::new(|x: &[f64]| {
            let f1 = x[0];
            let g = zdt_g(x);
            let r = f1 / g;
            vec![f1, g * (1.0 - r * r)]
        }),
    ))
}

/// The `zdt3` problem with `dimension` variables (at least 2).
pub fn zdt3(dimension: usize) -> Result<MultiObjectiveProblem> {
    let bounds = zdt_bounds(dimension)?;
    Ok(MultiObjectiveProblem::builtin(
        ProblemId::Zdt3,
        bounds,
        2,
        Arc::new(|x: &[f64]| {
            let f1 = x[0];
            let g = zdt_g(x);
            let r = f1 / g;
            vec![f1, g * (1.0 - r.sqrt() - r * (10.0 * PI * f1).sin())]
        }),
    ))
}

/// Builds a built-in problem by id, optionally overriding the dimension.
///
/// `sch` is fixed at one variable; the ZDT problems default to
/// [`DEFAULT_ZDT_DIMENSION`].
pub fn by_id(id: ProblemId, dimension: Option<usize>) -> Result<MultiObjectiveProblem> {
    match id {
        ProblemId::Sch => match dimension {
            None | Some(1) => Ok(sch()),
            Some(d) => Err(Error::InvalidParameter {
                name: "dimension",
                reason: format!("sch has exactly 1 variable, got {d}"),
            }),
        },
        ProblemId::Zdt1 => zdt1(dimension.unwrap_or(DEFAULT_ZDT_DIMENSION)),
        ProblemId::Zdt2 => zdt2(dimension.unwrap_or(DEFAULT_ZDT_DIMENSION)),
        ProblemId::Zdt3 => zdt3(dimension.unwrap_or(DEFAULT_ZDT_DIMENSION)),
        ProblemId::Custom => Err(Error::UnknownProblem("custom".into())),
    }
}

/// A contiguous piece of an f1 domain; the upper end is always included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lower: f64,
    upper: f64,
    lower_inclusive: bool,
}

impl Interval {
    /// Closed interval `[lower, upper]`.
    pub fn closed(lower: f64, upper: f64) -> Self {
        Interval {
            lower,
            upper,
            lower_inclusive: true,
        }
    }

    /// Half-open interval `(lower, upper]`.
    pub fn open_closed(lower: f64, upper: f64) -> Self {
        Interval {
            lower,
            upper,
            lower_inclusive: false,
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn lower_inclusive(&self) -> bool {
        self.lower_inclusive
    }

    pub fn length(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64) -> bool {
        let above = if self.lower_inclusive {
            v >= self.lower
        } else {
            v > self.lower
        };
        above && v <= self.upper
    }
}

/// Analytic front `f2 = psi(f1)` of a built-in problem, together with the
/// set of f1 values the front actually occupies.
#[derive(Clone, Debug)]
pub struct FrontModel {
    psi: fn(f64) -> f64,
    f1_domain: Vec<Interval>,
}

fn psi_sch(f1: f64) -> f64 {
    let s = f1.sqrt() - 2.0;
    s * s
}

fn psi_zdt1(f1: f64) -> f64 {
    1.0 - f1.sqrt()
}

fn psi_zdt2(f1: f64) -> f64 {
    1.0 - f1 * f1
}

fn psi_zdt3(f1: f64) -> f64 {
    1.0 - f1.sqrt() - f1 * (10.0 * PI * f1).sin()
}

impl FrontModel {
    /// The analytic front of a built-in problem; `None` for custom problems.
    pub fn for_problem(id: ProblemId) -> Option<FrontModel> {
        let (psi, f1_domain): (fn(f64) -> f64, Vec<Interval>) = match id {
            ProblemId::Sch => (psi_sch, vec![Interval::closed(0.0, 4.0)]),
            ProblemId::Zdt1 => (psi_zdt1, vec![Interval::closed(0.0, 1.0)]),
            ProblemId::Zdt2 => (psi_zdt2, vec![Interval::closed(0.0, 1.0)]),
            ProblemId::Zdt3 => (
                psi_zdt3,
                vec![
                    Interval::closed(0.0, 0.083),
                    Interval::open_closed(0.182, 0.258),
                    Interval::open_closed(0.409, 0.454),
                    Interval::open_closed(0.618, 0.653),
                    Interval::open_closed(0.823, 0.852),
                ],
            ),
            ProblemId::Custom => return None,
        };
        Some(FrontModel { psi, f1_domain })
    }

    /// Evaluates the front's closed form at any `f1`, including values
    /// between or beyond the domain pieces. Deviation metrics use this
    /// extension so that every point gets a finite reference value.
    pub fn psi(&self, f1: f64) -> f64 {
        (self.psi)(f1)
    }

    /// Evaluates the front at `f1`, rejecting values outside the domain.
    pub fn true_front(&self, f1: f64) -> Result<f64> {
        if self.contains(f1) {
            Ok(self.psi(f1))
        } else {
            Err(Error::OutsideFrontDomain(f1))
        }
    }

    /// The f1 intervals the front occupies, in ascending order.
    pub fn f1_domain(&self) -> &[Interval] {
        &self.f1_domain
    }

    /// True when `f1` lies inside one of the domain intervals.
    pub fn contains(&self, f1: f64) -> bool {
        self.f1_domain.iter().any(|iv| iv.contains(f1))
    }

    /// `count` front points `(f1, psi(f1))` spread evenly over the domain.
    ///
    /// Samples are allocated to intervals in proportion to their length and
    /// placed at sub-segment midpoints, so every sample lies strictly inside
    /// its interval regardless of open endpoints.
    pub fn sample(&self, count: usize) -> Vec<(f64, f64)> {
        if count == 0 {
            return Vec::new();
        }
        let total: f64 = self.f1_domain.iter().map(Interval::length).sum();
        // Largest-remainder allocation keeps the total at exactly `count`.
        let mut alloc: Vec<usize> = Vec::with_capacity(self.f1_domain.len());
        let mut fractions: Vec<(usize, f64)> = Vec::with_capacity(self.f1_domain.len());
        for (i, iv) in self.f1_domain.iter().enumerate() {
            let quota = count as f64 * iv.length() / total;
            alloc.push(quota.floor() as usize);
            fractions.push((i, quota - quota.floor()));
        }
        let assigned: usize = alloc.iter().sum();
        fractions.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        for &(i, _) in fractions.iter().take(count - assigned) {
            alloc[i] += 1;
        }
        let mut points = Vec::with_capacity(count);
        for (iv, n) in self.f1_domain.iter().zip(alloc) {
            for j in 0..n {
                let f1 = iv.lower() + (j as f64 + 0.5) * iv.length() / n as f64;
                points.push((f1, self.psi(f1)));
            }
        }
        points
    }
}
