//! Benefit-maximizing greedy construction.
//!
//! Starting from points 0 and 1 (benefits vanish while `|S| < 2`), each step adds one
//! point with large benefit. The `skew` variant restricts the choice to a line skew to
//! `S` with the fewest unsaturated points; `global` scans every point. Ties always go
//! to the lowest index. Once the stop rule fires, the leftover unsaturated points are
//! handled by [`complete`](super::complete).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::complete::complete;
use super::state::SaturationState;
use super::{bounds, is_saturating};
use crate::error::SaturationError;
use crate::plane::ProjectivePlane;
use crate::pointset::PointSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Skew,
    Global,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Skew => "skew",
            Variant::Global => "global",
        })
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "skew" => Ok(Variant::Skew),
            "global" => Ok(Variant::Global),
            other => Err(format!("unknown variant `{other}` (expected skew|global)")),
        }
    }
}

/// When the greedy phase hands over to completion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StopRule {
    /// Stop once no point has benefit above 1.
    #[default]
    BenefitFloor,
    /// Stop at `|S| = k`; `None` means `k = ⌈√(3 q ln q)⌉`.
    StepCap(Option<u32>),
    /// Run until nothing is unsaturated; completion is never needed.
    Exhaust,
}

impl StopRule {
    fn cap(&self, q: u32) -> Option<usize> {
        match self {
            StopRule::StepCap(Some(k)) => Some(*k as usize),
            StopRule::StepCap(None) => Some(bounds::theorem_step_count(q) as usize),
            _ => None,
        }
    }
}

impl fmt::Display for StopRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopRule::BenefitFloor => f.write_str("benefit-floor"),
            StopRule::StepCap(None) => f.write_str("step-cap"),
            StopRule::StepCap(Some(k)) => write!(f, "step-cap:{k}"),
            StopRule::Exhaust => f.write_str("exhaust"),
        }
    }
}

impl FromStr for StopRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "benefit-floor" => Ok(StopRule::BenefitFloor),
            "exhaust" => Ok(StopRule::Exhaust),
            "step-cap" => Ok(StopRule::StepCap(None)),
            other => other
                .strip_prefix("step-cap:")
                .and_then(|k| k.parse().ok())
                .map(|k| StopRule::StepCap(Some(k)))
                .ok_or_else(|| {
                    format!("unknown stop rule `{other}` (expected benefit-floor|step-cap[:K]|exhaust)")
                }),
        }
    }
}

/// One greedy step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// `|S|` before the step.
    pub i: usize,
    pub point: u32,
    pub benefit: usize,
    pub r_before: usize,
    pub r_after: usize,
    /// Skew line with the fewest unsaturated points, if any line is skew to `S`.
    pub skew_line: Option<u32>,
    pub min_skew_intersection: Option<usize>,
}

pub type GreedyTrace = Vec<TraceStep>;

#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    pub set: PointSet,
    pub trace: GreedyTrace,
    /// `|S|` when the greedy phase stopped.
    pub greedy_size: usize,
    /// Points added afterwards by completion.
    pub completion_added: Vec<u32>,
}

/// Largest benefit over all points outside `S` (0 if none).
pub fn max_benefit(state: &SaturationState) -> usize {
    let n = state.plane().num_points() as u32;
    (0..n)
        .filter(|&p| !state.set().contains(p))
        .map(|p| state.benefit_unchecked(p))
        .max()
        .unwrap_or(0)
}

/// Skew line with minimal `|ℓ ∩ R|`, lowest index on ties.
fn best_skew_line(state: &SaturationState) -> Option<(u32, usize)> {
    let n = state.plane().num_lines() as u32;
    (0..n)
        .filter(|&l| state.line_hits(l) == 0)
        .map(|l| (l, state.unsaturated_on(l) as usize))
        .min_by_key(|&(l, r)| (r, l))
}

/// Highest-benefit candidate, lowest index on ties.
fn best_point(state: &SaturationState, candidates: impl Iterator<Item = u32>) -> Option<(u32, usize)> {
    candidates
        .filter(|&p| !state.set().contains(p))
        .map(|p| (p, state.benefit_unchecked(p)))
        .fold(None, |best, (p, b)| match best {
            Some((_, bb)) if bb >= b => best,
            _ => Some((p, b)),
        })
}

/// Adds one point chosen by `variant` and reports what happened.
pub fn greedy_step(state: &mut SaturationState, variant: Variant) -> Result<TraceStep, SaturationError> {
    let r_before = state.unsaturated().len();
    if r_before == 0 {
        return Err(SaturationError::NothingUnsaturated);
    }
    let plane = state.plane();
    let skew = best_skew_line(state);
    let pick = match (variant, skew) {
        (Variant::Skew, Some((line, _))) => best_point(state, plane.points_on(line).iter().copied()),
        _ => best_point(state, 0..plane.num_points() as u32),
    };
    let (point, benefit) = pick.ok_or(SaturationError::NothingUnsaturated)?;
    let i = state.step();
    let removed = state.add(point);
    debug_assert!(i == 0 || removed == benefit);
    Ok(TraceStep {
        i,
        point,
        benefit,
        r_before,
        r_after: state.unsaturated().len(),
        skew_line: skew.map(|s| s.0),
        min_skew_intersection: skew.map(|s| s.1),
    })
}

/// Greedy construction followed by completion; the result is always verified.
pub fn greedy_construct(
    plane: &ProjectivePlane,
    variant: Variant,
    stop: StopRule,
) -> Result<GreedyOutcome, SaturationError> {
    greedy_construct_observed(plane, variant, stop, |_, _| {})
}

/// As [`greedy_construct`], calling `observe(state_before, step)` for every greedy step.
pub fn greedy_construct_observed<F>(
    plane: &ProjectivePlane,
    variant: Variant,
    stop: StopRule,
    mut observe: F,
) -> Result<GreedyOutcome, SaturationError>
where
    F: FnMut(&SaturationState, &TraceStep),
{
    let q = plane.order();
    if q < 2 {
        return Err(SaturationError::OrderTooSmall(q));
    }
    let mut state = SaturationState::new(plane);
    state.add(0);
    state.add(1);

    let cap = stop.cap(q);
    let mut trace = Vec::new();
    while !state.unsaturated().is_empty() {
        if cap.is_some_and(|k| state.step() >= k) {
            break;
        }
        if stop == StopRule::BenefitFloor && max_benefit(&state) <= 1 {
            break;
        }
        let before = state.clone();
        let step = greedy_step(&mut state, variant)?;
        observe(&before, &step);
        trace.push(step);
    }

    let greedy_size = state.step();
    let finished = complete(plane, state.set());
    if !is_saturating(plane, &finished.set) {
        return Err(SaturationError::NotSaturating(
            super::unsaturated(plane, &finished.set).len(),
        ));
    }
    Ok(GreedyOutcome {
        set: finished.set,
        trace,
        greedy_size,
        completion_added: finished.added,
    })
}
