//! Independent point sampling and its completion.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`). A run with seed `s` uses the
//! generator `ChaCha8Rng::seed_from_u64(s)` on stream `t` for trial `t` (stream 0 for a
//! single run). Points are visited in index order and point `P` is kept iff
//! `(next_u64() >> 11) · 2⁻⁵³ < p`. This fixes every sampled set bit-for-bit across
//! platforms.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::bounds::sampling_probability;
use super::complete::complete;
use super::{is_saturating, undetermined_count, unsaturated};
use crate::error::SaturationError;
use crate::plane::ProjectivePlane;
use crate::pointset::PointSet;

/// Generator for trial `stream` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A uniform draw from `[0, 1)` with 53 random bits.
#[inline]
pub fn unit_interval(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Keeps each point independently with probability `p`.
pub fn sample_points(n: usize, p: f64, rng: &mut impl RngCore) -> PointSet {
    let mut set = PointSet::empty(n);
    for point in 0..n as u32 {
        if unit_interval(rng) < p {
            set.insert(point);
        }
    }
    set
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomTrialStats {
    pub seed: u64,
    /// Points sampled (`X`).
    pub sampled: usize,
    /// Points of the plane on no secant of the sample (`Y`).
    pub unsaturated: usize,
    pub startup_added: usize,
    pub completion_added: usize,
    pub final_size: usize,
}

#[derive(Clone, Debug)]
pub struct RandomOutcome {
    pub set: PointSet,
    pub stats: RandomTrialStats,
}

fn check_probability(p: f64) -> Result<(), SaturationError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(SaturationError::Probability(p))
    }
}

/// Samples with probability `p_override` (default [`sampling_probability`]) and completes.
pub fn random_construct(
    plane: &ProjectivePlane,
    seed: u64,
    p_override: Option<f64>,
) -> Result<RandomOutcome, SaturationError> {
    let q = plane.order();
    if q < 2 {
        return Err(SaturationError::OrderTooSmall(q));
    }
    let p = p_override.unwrap_or_else(|| sampling_probability(q));
    check_probability(p)?;

    let mut rng = trial_rng(seed, 0);
    let sample = sample_points(plane.num_points(), p, &mut rng);
    let y = undetermined_count(plane, &sample);
    let completion = complete(plane, &sample);
    if !is_saturating(plane, &completion.set) {
        return Err(SaturationError::NotSaturating(
            unsaturated(plane, &completion.set).len(),
        ));
    }
    let stats = RandomTrialStats {
        seed,
        sampled: sample.len(),
        unsaturated: y,
        startup_added: completion.startup_added.len(),
        completion_added: completion.added.len(),
        final_size: completion.set.len(),
    };
    Ok(RandomOutcome {
        set: completion.set,
        stats,
    })
}

/// Mean and standard error of the undetermined count `Y` over `trials` seeded samples.
///
/// Trials run in parallel; trial `t` always uses stream `t`, and the reduction runs in
/// trial order, so results do not depend on scheduling.
pub fn monte_carlo_expectation(
    plane: &ProjectivePlane,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<(f64, f64), SaturationError> {
    check_probability(p)?;
    let trials = trials.max(1);
    let n = plane.num_points();
    let counts: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            undetermined_count(plane, &sample_points(n, p, &mut rng)) as f64
        })
        .collect();
    let m = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / m;
    if counts.len() < 2 {
        return Ok((mean, 0.0));
    }
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (m - 1.0);
    Ok((mean, (var / m).sqrt()))
}
