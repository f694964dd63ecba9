use crate::error::SaturationError;
use crate::precise;

fn points(q: u32) -> f64 {
    let q = q as f64;
    q * q + q + 1.0
}

/// Inclusion probability `√(3 q ln q) / (q² + q + 1)` for the random construction.
pub fn sampling_probability(q: u32) -> f64 {
    let qf = q as f64;
    (3.0 * qf * qf.ln()).sqrt() / points(q)
}

/// Expected number of unsaturated points when every point is sampled independently
/// with probability `p`:
///
/// `n (1−p)^n ( p/(1−p) + (1 + q p/(1−p))^{q+1} )`, `n = q² + q + 1`.
///
/// Evaluated in log space so that `(1−p)^n` does not underflow.
pub fn expected_unsaturated(q: u32, p: f64) -> Result<f64, SaturationError> {
    if !(0.0..1.0).contains(&p) {
        return Err(SaturationError::Probability(p));
    }
    let n = points(q);
    if p == 0.0 {
        return Ok(n);
    }
    let odds = p / (1.0 - p);
    // The point itself is chosen (and nothing else), or it is not and each of its
    // q+1 lines carries at most one chosen point.
    let chosen = odds.ln();
    let unchosen = (q as f64 + 1.0) * (q as f64 * odds).ln_1p();
    let (hi, lo) = if chosen > unchosen { (chosen, unchosen) } else { (unchosen, chosen) };
    let log_sum = hi + (lo - hi).exp().ln_1p();
    Ok((n.ln() + n * (-p).ln_1p() + log_sum).exp())
}

/// Main-term approximation `n · exp(−½ q (q²−1) p²)` of the expected unsaturated count.
pub fn expected_unsaturated_main_term(q: u32, p: f64) -> f64 {
    let qf = q as f64;
    points(q) * (-0.5 * qf * (qf * qf - 1.0) * p * p).exp()
}

/// `√(2q) + 1`; every saturating set is strictly larger.
pub fn lunelli_sce_bound(q: u32) -> f64 {
    (2.0 * q as f64).sqrt() + 1.0
}

/// `⌈√(3 q ln q)⌉`, the number of greedy steps in the contraction argument.
pub fn theorem_step_count(q: u32) -> u64 {
    precise::ceil_sqrt_three_q_ln_q(q as u64)
}

/// `⌈√(3 q ln q)⌉ + ⌈(√q + 1)/2⌉`.
pub fn theorem_bound(q: u32) -> u64 {
    theorem_step_count(q) + precise::ceil_half_sqrt_plus_one(q as u64)
}

/// `Π_{i=1..k} (1 − i/(q+2))`, computed as a sum of logs.
pub fn contraction_product(q: u32, k: u32) -> Result<f64, SaturationError> {
    if k > q + 1 {
        return Err(SaturationError::ProductRange { k, max: q + 1 });
    }
    let denom = q as f64 + 2.0;
    let log: f64 = (1..=k).map(|i| (-(i as f64) / denom).ln_1p()).sum();
    Ok(log.exp())
}
