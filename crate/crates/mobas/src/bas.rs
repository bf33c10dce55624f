//! Beetle antennae search: a single-agent, derivative-free minimizer.
//!
//! Each iteration draws a random unit direction `b`, evaluates the objective
//! at two antenna probes `x + d b` and `x - d b`, and moves the beetle by
//! `delta` against the sign of the probe difference, so the body steps toward
//! the better-smelling side. The step `delta` decays geometrically while the
//! antenna length `d` tracks it down to a fixed floor, and a greedy
//! best-so-far record of body positions is returned at the end.
//!
//! ```
//! use mobas::bas::{minimize, BasParams};
//! use mobas::problem::Bounds;
//! use rand::SeedableRng;
//!
//! let bounds = Bounds::uniform(2, -10.0, 10.0).unwrap();
//! let params = BasParams {
//!     initial_step: 1.0,
//!     max_iterations: 400,
//!     ..BasParams::for_bounds(&bounds)
//! };
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
//! let run = minimize(
//!     |x| x[0] * x[0] + x[1] * x[1],
//!     &bounds,
//!     &[4.0, -3.0],
//!     &params,
//!     &mut rng,
//! )
//! .unwrap();
//! assert!(run.best_value < 1e-6);
//! assert_eq!(run.evaluations, 1 + 3 * 400);
//! ```

use rand::Rng;

use crate::error::{Error, Result};
use crate::problem::Bounds;

/// Sign placement in the position update.
///
/// `Minus` moves the beetle toward the better probe and is the default;
/// `Printed` flips the move toward the worse probe, kept available for
/// comparing the two published forms of the update rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    #[default]
    Minus,
    Printed,
}

impl SignConvention {
    pub fn name(self) -> &'static str {
        match self {
            SignConvention::Minus => "minus",
            SignConvention::Printed => "printed",
        }
    }
}

impl std::str::FromStr for SignConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" => Ok(SignConvention::Minus),
            "printed" => Ok(SignConvention::Printed),
            other => Err(Error::InvalidParameter {
                name: "sign_convention",
                reason: format!("expected `minus` or `printed`, got `{other}`"),
            }),
        }
    }
}

/// Base fraction of the widest box side for the default initial step; the
/// default scales it by `sqrt(k)` for a `k`-dimensional box.
pub const DEFAULT_STEP_FACTOR: f64 = 0.1;
/// Default antenna-to-step ratio `c`.
pub const DEFAULT_ANTENNA_RATIO: f64 = 5.0;
/// Base gap between the default step decay `alpha` and 1; the default
/// shrinks it by `sqrt(k)`.
pub const DEFAULT_ATTENUATION_GAP: f64 = 0.05;
/// Default lower limit on the antenna length.
pub const DEFAULT_ANTENNA_FLOOR: f64 = 0.01;
/// Default iteration count `N`.
pub const DEFAULT_ITERATIONS: usize = 500;

/// Tuning parameters for one search run.
#[derive(Clone, Debug, PartialEq)]
pub struct BasParams {
    /// Initial step length `delta0`.
    pub initial_step: f64,
    /// Antenna length as a multiple `c` of the current step.
    pub antenna_ratio: f64,
    /// Geometric decay factor `alpha` applied to the step each iteration.
    pub attenuation: f64,
    /// Number of iterations `N`.
    pub max_iterations: usize,
    /// Antenna length never drops below this floor.
    pub antenna_floor: f64,
    /// Direction of the position update relative to the probe comparison.
    pub sign_convention: SignConvention,
}

impl BasParams {
    /// Defaults scaled to a problem's box.
    ///
    /// A random unit direction in `k` dimensions advances a fixed descent
    /// direction by only ~`1/sqrt(k)` of the step, so both the step scale
    /// and the decay horizon stretch with `sqrt(k)`:
    ///
    /// * `initial_step = 0.1 * sqrt(k) * max_width`
    /// * `attenuation  = 1 - 0.05 / sqrt(k)`
    ///
    /// At `k = 1` these reduce to a tenth of the box and a 0.95 decay; the
    /// total travel budget `initial_step / (1 - attenuation)` grows linearly
    /// with `k`, which keeps high-dimensional runs from stalling far from
    /// the optimum before the step has decayed away.
    pub fn for_bounds(bounds: &Bounds) -> BasParams {
        let scale = (bounds.dimension() as f64).sqrt();
        BasParams {
            initial_step: DEFAULT_STEP_FACTOR * scale * bounds.max_width(),
            antenna_ratio: DEFAULT_ANTENNA_RATIO,
            attenuation: 1.0 - DEFAULT_ATTENUATION_GAP / scale,
            max_iterations: DEFAULT_ITERATIONS,
            antenna_floor: DEFAULT_ANTENNA_FLOOR,
            sign_convention: SignConvention::default(),
        }
    }

    /// Rejects step, ratio, decay, or iteration settings that cannot drive
    /// a search.
    pub fn validate(&self) -> Result<()> {
        if !(self.initial_step.is_finite() && self.initial_step > 0.0) {
            return Err(Error::InvalidParameter {
                name: "initial_step",
                reason: format!("must be finite and positive, got {}", self.initial_step),
            });
        }
        if !(self.antenna_ratio.is_finite() && self.antenna_ratio > 0.0) {
            return Err(Error::InvalidParameter {
                name: "antenna_ratio",
                reason: format!("must be finite and positive, got {}", self.antenna_ratio),
            });
        }
        if !(self.attenuation > 0.0 && self.attenuation < 1.0) {
            return Err(Error::InvalidParameter {
                name: "attenuation",
                reason: format!("must lie in (0, 1), got {}", self.attenuation),
            });
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter {
                name: "max_iterations",
                reason: "at least one iteration is required".into(),
            });
        }
        if !(self.antenna_floor.is_finite() && self.antenna_floor >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "antenna_floor",
                reason: format!(
                    "must be finite and non-negative, got {}",
                    self.antenna_floor
                ),
            });
        }
        Ok(())
    }
}

/// Draws a unit direction with no preferred axis: components are sampled
/// uniformly from `[-1, 1]` and the vector is normalized (redrawing in the
/// measure-zero case of a vanishing norm). For `k = 1` this yields +1 or -1
/// with equal probability.
pub fn random_direction<R: Rng + ?Sized>(dimension: usize, rng: &mut R) -> Vec<f64> {
    assert!(dimension > 0, "direction needs at least one component");
    let mut b = vec![0.0; dimension];
    loop {
        for v in &mut b {
            *v = rng.random_range(-1.0..=1.0);
        }
        let norm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm >= 1e-12 {
            for v in &mut b {
                *v /= norm;
            }
            return b;
        }
    }
}

/// Antenna length for the current step: `max(c * step, floor)`.
pub fn antenna_length(step: f64, params: &BasParams) -> f64 {
    (params.antenna_ratio * step).max(params.antenna_floor)
}

/// The two antenna probes `(x + d b, x - d b)`, each clamped into bounds.
pub fn antenna_probes(
    x: &[f64],
    direction: &[f64],
    length: f64,
    bounds: &Bounds,
) -> (Vec<f64>, Vec<f64>) {
    let mut right = Vec::with_capacity(x.len());
    let mut left = Vec::with_capacity(x.len());
    for (&xi, &bi) in x.iter().zip(direction) {
        right.push(xi + length * bi);
        left.push(xi - length * bi);
    }
    bounds.clamp(&mut right);
    bounds.clamp(&mut left);
    (right, left)
}

/// One position update from a probe comparison.
///
/// Moves `step` along `direction`, with the sign chosen from
/// `sign(f_right - f_left)` under the given convention, then clamps into
/// bounds. Equal probe values leave the position unchanged, and a non-finite
/// probe value rejects the move entirely.
pub fn bas_step(
    x: &[f64],
    direction: &[f64],
    step: f64,
    f_right: f64,
    f_left: f64,
    bounds: &Bounds,
    convention: SignConvention,
) -> Vec<f64> {
    if !f_right.is_finite() || !f_left.is_finite() {
        return x.to_vec();
    }
    let diff = f_right - f_left;
    let sign = if diff == 0.0 { 0.0 } else { diff.signum() };
    let orientation = match convention {
        SignConvention::Minus => -1.0,
        SignConvention::Printed => 1.0,
    };
    let mut next = Vec::with_capacity(x.len());
    for (&xi, &bi) in x.iter().zip(direction) {
        next.push(xi + orientation * step * sign * bi);
    }
    bounds.clamp(&mut next);
    next
}

/// Geometric step decay: the step after an iteration is `alpha` times the
/// step before it, so the antenna length follows via [`antenna_length`].
pub fn update_step(step: f64, params: &BasParams) -> f64 {
    params.attenuation * step
}

/// A beetle mid-search: its position, schedule state, and best-so-far record.
#[derive(Clone, Debug)]
pub struct BeetleState {
    /// Current body position, always inside bounds.
    pub position: Vec<f64>,
    /// Current step length.
    pub step: f64,
    /// Antenna length paired with the current step.
    pub antenna_length: f64,
    /// Most recent probe direction (unit length once the search has run).
    pub direction: Vec<f64>,
    /// Best body position seen so far.
    pub best_position: Vec<f64>,
    /// Objective value at `best_position`.
    pub best_value: f64,
}

/// What one iteration did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepReport {
    /// The move was rejected because a probe value was non-finite.
    pub rejected: bool,
    /// The body's best-so-far record improved.
    pub improved: bool,
}

impl BeetleState {
    /// A beetle resting at `x0` (already evaluated to `f0`) before its first
    /// iteration.
    pub fn new(x0: Vec<f64>, f0: f64, params: &BasParams) -> BeetleState {
        BeetleState {
            direction: vec![0.0; x0.len()],
            best_position: x0.clone(),
            best_value: f0,
            step: params.initial_step,
            antenna_length: antenna_length(params.initial_step, params),
            position: x0,
        }
    }

    /// Runs one iteration: probe both antennae, move the body, record the
    /// body's value, and attenuate the step.
    ///
    /// Makes exactly three objective evaluations. Only body positions can
    /// update the best-so-far record; probe values steer but never score.
    pub fn advance(
        &mut self,
        objective: &mut dyn FnMut(&[f64]) -> f64,
        bounds: &Bounds,
        params: &BasParams,
        rng: &mut dyn rand::RngCore,
    ) -> StepReport {
        self.direction = random_direction(self.position.len(), rng);
        self.antenna_length = antenna_length(self.step, params);
        let (right, left) =
            antenna_probes(&self.position, &self.direction, self.antenna_length, bounds);
        let f_right = objective(&right);
        let f_left = objective(&left);
        let rejected = !f_right.is_finite() || !f_left.is_finite();
        if !rejected {
            self.position = bas_step(
                &self.position,
                &self.direction,
                self.step,
                f_right,
                f_left,
                bounds,
                params.sign_convention,
            );
        }
        let f_body = objective(&self.position);
        let improved = f_body < self.best_value;
        if improved {
            self.best_value = f_body;
            self.best_position = self.position.clone();
        }
        self.step = update_step(self.step, params);
        StepReport { rejected, improved }
    }
}

/// Result of a full search run.
#[derive(Clone, Debug)]
pub struct BasRun {
    /// Best body position found.
    pub best_position: Vec<f64>,
    /// Objective value at the best position.
    pub best_value: f64,
    /// Best-so-far value after each iteration; never increases.
    pub trace: Vec<f64>,
    /// Total objective evaluations: always `1 + 3 N`.
    pub evaluations: usize,
    /// Iterations whose move was rejected due to non-finite probe values.
    pub rejected_steps: usize,
}

/// Minimizes `objective` over the box from start point `x0`.
///
/// Runs exactly `params.max_iterations` iterations and spends exactly
/// `1 + 3 N` objective evaluations: one on the start point, then two probes
/// and one body point per iteration. Fails if `x0` is outside bounds or its
/// objective value is non-finite.
pub fn minimize(
    mut objective: impl FnMut(&[f64]) -> f64,
    bounds: &Bounds,
    x0: &[f64],
    params: &BasParams,
    rng: &mut impl Rng,
) -> Result<BasRun> {
    params.validate()?;
    bounds.check(x0)?;

    let mut evaluations = 0usize;
    let mut counted = |x: &[f64]| {
        evaluations += 1;
        objective(x)
    };

    let f0 = counted(x0);
    if !f0.is_finite() {
        return Err(Error::NonFiniteStart {
            position: x0.to_vec(),
        });
    }

    let mut state = BeetleState::new(x0.to_vec(), f0, params);
    let mut trace = Vec::with_capacity(params.max_iterations);
    let mut rejected_steps = 0usize;
    for _ in 0..params.max_iterations {
        let report = state.advance(&mut counted, bounds, params, rng);
        if report.rejected {
            rejected_steps += 1;
        }
        trace.push(state.best_value);
    }

    Ok(BasRun {
        best_position: state.best_position,
        best_value: state.best_value,
        trace,
        evaluations,
        rejected_steps,
    })
}
