use super::state::SaturationState;
use crate::plane::ProjectivePlane;
use crate::pointset::PointSet;

/// Result of [`complete`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub set: PointSet,
    /// Lowest-index points added first so that `|S| ≥ 2`.
    pub startup_added: Vec<u32>,
    /// `|R|` after startup; at most `⌈|R|/2⌉` further points are added.
    pub unsaturated_after_startup: usize,
    /// Points added by pairing, in order.
    pub added: Vec<u32>,
}

/// Extends `set` to a saturating set by pairing up unsaturated points.
///
/// For the two lowest unsaturated points `x, x'` and the two lowest points `s, s'` of
/// `S`, the point `⟨x,s⟩ ∩ ⟨x',s'⟩` saturates both. A single leftover `x` is handled by
/// the lowest free point of `⟨x,s⟩`.
pub fn complete(plane: &ProjectivePlane, set: &PointSet) -> Completion {
    let mut start = set.clone();
    let mut startup_added = Vec::new();
    let mut candidate = 0u32;
    while start.len() < 2 {
        if start.insert(candidate) {
            startup_added.push(candidate);
        }
        candidate += 1;
    }

    let mut state = SaturationState::from_set(plane, &start);
    let unsaturated_after_startup = state.unsaturated().len();
    let mut added = Vec::new();

    let (s, s_prime) = {
        let mut it = state.set().iter();
        (it.next().unwrap(), it.next().unwrap())
    };

    while state.unsaturated().len() >= 2 {
        let (x, x_prime) = {
            let mut it = state.unsaturated().iter();
            (it.next().unwrap(), it.next().unwrap())
        };
        let l1 = plane.join(x, s);
        let l2 = plane.join(x_prime, s_prime);
        // l1 = l2 would put s and s' on one line through x, so x would be determined.
        assert_ne!(l1, l2, "unsaturated point {x} lies on a secant");
        let y = plane.intersect(l1, l2);
        // y ∈ S would make ⟨x,s⟩ or ⟨x',s'⟩ a secant. y may equal x or x'.
        assert!(!state.set().contains(y), "pairing point {y} already chosen");
        state.add(y);
        added.push(y);
        debug_assert!(!state.unsaturated().contains(x) && !state.unsaturated().contains(x_prime));
    }

    if let Some(x) = state.unsaturated().first() {
        let line = plane.join(x, s);
        let y = plane
            .points_on(line)
            .iter()
            .copied()
            .find(|&y| y != x && !state.set().contains(y))
            .expect("a line through an unsaturated point meets S once");
        state.add(y);
        added.push(y);
    }
    debug_assert!(state.unsaturated().is_empty());

    Completion {
        set: state.set().clone(),
        startup_added,
        unsaturated_after_startup,
        added,
    }
}
