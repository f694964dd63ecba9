//! Saturating sets: verification, greedy and random constructions, completion,
//! closed-form bounds, and exhaustive oracles.
//!
//! A set `S` saturates the plane when every point outside `S` lies on a line
//! through two points of `S`. Points outside `S` that fail this are the
//! *unsaturated* points `R`.

mod bounds;
mod bruteforce;
mod complete;
mod greedy;
mod random;
mod state;

pub use bounds::{
    contraction_product, expected_unsaturated, expected_unsaturated_main_term,
    lunelli_sce_bound, sampling_probability, theorem_bound, theorem_step_count,
};
pub use bruteforce::{minsat_bruteforce, BRUTE_FORCE_CAP, BRUTE_FORCE_OVERRIDE_CAP};
pub use complete::{complete, Completion};
pub use greedy::{
    greedy_construct, greedy_construct_observed, greedy_step, max_benefit, GreedyOutcome,
    GreedyTrace, StopRule, TraceStep, Variant,
};
pub use random::{
    monte_carlo_expectation, random_construct, sample_points, trial_rng, unit_interval,
    RandomOutcome, RandomTrialStats,
};
pub use state::SaturationState;

use crate::plane::ProjectivePlane;
use crate::pointset::PointSet;

/// Points outside `set` not collinear with any two points of `set`.
pub fn unsaturated(plane: &ProjectivePlane, set: &PointSet) -> PointSet {
    let n = plane.num_points();
    let mut hits = vec![0u32; n];
    for p in set.iter() {
        for &l in plane.lines_through(p) {
            hits[l as usize] += 1;
        }
    }
    let mut covered = set.clone();
    for (l, &h) in hits.iter().enumerate() {
        if h >= 2 {
            for &x in plane.points_on(l as u32) {
                covered.insert(x);
            }
        }
    }
    covered.complement()
}

/// Number of points on no line through two points of `set`, including points of `set`
/// itself. Differs from `unsaturated(plane, set).len()` only when `|set| = 1`.
pub fn undetermined_count(plane: &ProjectivePlane, set: &PointSet) -> usize {
    unsaturated(plane, set).len() + usize::from(set.len() == 1)
}

/// `true` iff `set` has at least two points and leaves nothing unsaturated.
pub fn is_saturating(plane: &ProjectivePlane, set: &PointSet) -> bool {
    set.len() >= 2 && unsaturated(plane, set).is_empty()
}
