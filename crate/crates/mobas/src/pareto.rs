//! Pareto dominance, the non-dominated archive, and front-deviation metrics.
//!
//! All objectives are minimized. A vector dominates another when it is no
//! worse in every component and strictly better in at least one. The archive
//! keeps a flat list of mutually non-dominated entries: candidates dominated
//! by (or duplicating) an existing entry are rejected, and an accepted
//! candidate evicts everything it dominates.

use crate::benchmarks::FrontModel;
use crate::error::{Error, Result};

/// Componentwise tolerance under which two objective vectors count as the
/// same point for archive deduplication.
pub const DUPLICATE_EPSILON: f64 = 1e-12;

/// True when `a` dominates `b`: `a[i] <= b[i]` for all `i` and
/// `a[i] < b[i]` for at least one `i`. Panics on length mismatch.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(
        a.len(),
        b.len(),
        "dominance needs equal-length objective vectors"
    );
    let mut strictly_better = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strictly_better = true;
        }
    }
    strictly_better
}

fn within_duplicate_epsilon(a: &[f64], b: &[f64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(&ai, &bi)| (ai - bi).abs() <= DUPLICATE_EPSILON)
}

/// A decision vector together with its objective values.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchiveEntry {
    /// Decision-space point.
    pub x: Vec<f64>,
    /// Objective vector at `x`.
    pub objectives: Vec<f64>,
}

/// What [`ParetoArchive::insert`] did with a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    /// The candidate joined the archive, evicting this many dominated
    /// entries.
    Accepted { evicted: usize },
    /// An existing entry dominates the candidate.
    RejectedDominated,
    /// An existing entry has the same objectives within
    /// [`DUPLICATE_EPSILON`].
    RejectedDuplicate,
}

impl InsertOutcome {
    pub fn is_accepted(self) -> bool {
        matches!(self, InsertOutcome::Accepted { .. })
    }
}

/// A bounded archive of mutually non-dominated entries.
///
/// The archive is full once it holds `target_size` entries; eviction can
/// shrink it below the target again, in which case later candidates keep
/// filling it.
#[derive(Clone, Debug)]
pub struct ParetoArchive {
    entries: Vec<ArchiveEntry>,
    target_size: usize,
}

impl ParetoArchive {
    /// An empty archive aiming for `target_size` entries.
    pub fn new(target_size: usize) -> ParetoArchive {
        ParetoArchive {
            entries: Vec::with_capacity(target_size),
            target_size,
        }
    }

    /// Number of entries currently held.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True once the archive holds at least `target_size` entries.
    pub fn is_full(&self) -> bool {
        self.entries.len() >= self.target_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    /// Entries in insertion order (minus any evicted along the way).
    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    /// The objective pairs `(f1, f2)` of a two-objective archive.
    pub fn objective_pairs(&self) -> Vec<(f64, f64)> {
        self.entries
            .iter()
            .map(|e| (e.objectives[0], e.objectives[1]))
            .collect()
    }

    /// Offers a candidate to the archive.
    ///
    /// Duplicates (objectives within [`DUPLICATE_EPSILON`] of an existing
    /// entry) and dominated candidates are rejected; otherwise the candidate
    /// is appended and every entry it dominates is removed. The entries are
    /// mutually non-dominated before and after every call.
    pub fn insert(&mut self, candidate: ArchiveEntry) -> InsertOutcome {
        if let Some(first) = self.entries.first() {
            assert_eq!(
                first.objectives.len(),
                candidate.objectives.len(),
                "candidate objective count must match the archive"
            );
        }
        if self
            .entries
            .iter()
            .any(|e| within_duplicate_epsilon(&e.objectives, &candidate.objectives))
        {
            return InsertOutcome::RejectedDuplicate;
        }
        if self
            .entries
            .iter()
            .any(|e| dominates(&e.objectives, &candidate.objectives))
        {
            return InsertOutcome::RejectedDominated;
        }
        let before = self.entries.len();
        self.entries
            .retain(|e| !dominates(&candidate.objectives, &e.objectives));
        let evicted = before - self.entries.len();
        self.entries.push(candidate);
        InsertOutcome::Accepted { evicted }
    }
}

/// Average deviation of a point set from an analytic front:
/// `sqrt(sum((psi(f1) - f2)^2)) / M` over the `M` points.
///
/// Each point is compared against the front's closed form at its own `f1`,
/// including `f1` values between the domain pieces of a disconnected front.
/// The per-point prefactor is `1 / M`, not `1 / sqrt(M)`, so adding on-front
/// points drives the value down. Fails on an empty point set.
pub fn ad_error(points: &[(f64, f64)], front: &FrontModel) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let sum_squares: f64 = points
        .iter()
        .map(|&(f1, f2)| {
            let d = front.psi(f1) - f2;
            d * d
        })
        .sum();
    Ok(sum_squares.sqrt() / points.len() as f64)
}

/// Fraction of points whose `f1` lies inside the front's f1 domain.
///
/// On a disconnected front this reports how many points sit over an actual
/// front piece rather than in a gap. Returns 0 for an empty set.
pub fn in_domain_fraction(points: &[(f64, f64)], front: &FrontModel) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let inside = points.iter().filter(|&&(f1, _)| front.contains(f1)).count();
    inside as f64 / points.len() as f64
}
