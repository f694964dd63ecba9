use crate::error::SaturationError;
use crate::plane::ProjectivePlane;
use crate::pointset::PointSet;

/// Incrementally maintained partition of the points into the current set `S`,
/// the points `D` outside `S` lying on a secant of `S`, and the remaining
/// unsaturated points `R`.
#[derive(Clone, Debug)]
pub struct SaturationState<'a> {
    plane: &'a ProjectivePlane,
    set: PointSet,
    determined: PointSet,
    unsaturated: PointSet,
    /// `|ℓ ∩ S|` per line.
    line_hits: Vec<u32>,
    /// `|ℓ ∩ R|` per line.
    line_unsaturated: Vec<u32>,
}

impl<'a> SaturationState<'a> {
    pub fn new(plane: &'a ProjectivePlane) -> Self {
        let n = plane.num_points();
        SaturationState {
            plane,
            set: PointSet::empty(n),
            determined: PointSet::empty(n),
            unsaturated: PointSet::full(n),
            line_hits: vec![0; n],
            line_unsaturated: vec![plane.order() + 1; n],
        }
    }

    pub fn from_set(plane: &'a ProjectivePlane, set: &PointSet) -> Self {
        let mut state = Self::new(plane);
        for p in set.iter() {
            state.add(p);
        }
        state
    }

    pub fn plane(&self) -> &'a ProjectivePlane {
        self.plane
    }

    pub fn set(&self) -> &PointSet {
        &self.set
    }

    pub fn determined(&self) -> &PointSet {
        &self.determined
    }

    pub fn unsaturated(&self) -> &PointSet {
        &self.unsaturated
    }

    /// `i = |S|`.
    pub fn step(&self) -> usize {
        self.set.len()
    }

    #[inline]
    pub fn line_hits(&self, line: u32) -> u32 {
        self.line_hits[line as usize]
    }

    #[inline]
    pub fn unsaturated_on(&self, line: u32) -> u32 {
        self.line_unsaturated[line as usize]
    }

    /// Adds `point` to `S` and returns how many points left `R`.
    /// Adding a point already in `S` is a no-op returning 0.
    pub fn add(&mut self, point: u32) -> usize {
        if self.set.contains(point) {
            return 0;
        }
        let plane = self.plane;
        let mut removed = 0;
        self.determined.remove(point);
        if self.unsaturated.remove(point) {
            removed += 1;
            for &l in plane.lines_through(point) {
                self.line_unsaturated[l as usize] -= 1;
            }
        }
        self.set.insert(point);
        for &l in plane.lines_through(point) {
            self.line_hits[l as usize] += 1;
            if self.line_hits[l as usize] != 2 {
                continue;
            }
            // A new secant: everything unsaturated on it becomes determined.
            for &x in plane.points_on(l) {
                if self.unsaturated.remove(x) {
                    self.determined.insert(x);
                    removed += 1;
                    for &m in plane.lines_through(x) {
                        self.line_unsaturated[m as usize] -= 1;
                    }
                }
            }
        }
        removed
    }

    /// `b(P) = |⟨P, S⟩ ∩ R|`, with `P` itself counted when `P ∈ R` and `S ≠ ∅`.
    pub fn benefit(&self, point: u32) -> Result<usize, SaturationError> {
        if self.set.contains(point) {
            return Err(SaturationError::PointInSet(point));
        }
        Ok(self.benefit_unchecked(point))
    }

    /// Lines through `point` that meet `S` pairwise share only `point`, so their `R`
    /// counts add up once `point` itself is accounted for separately.
    #[inline]
    pub(crate) fn benefit_unchecked(&self, point: u32) -> usize {
        if self.set.is_empty() {
            return 0;
        }
        let own = self.unsaturated.contains(point) as u32;
        let mut total = own;
        for &l in self.plane.lines_through(point) {
            if self.line_hits[l as usize] > 0 {
                total += self.line_unsaturated[l as usize] - own;
            }
        }
        total as usize
    }

    /// Verifies the partition and the cached per-line counts against a recount.
    pub fn check_consistency(&self) -> Result<(), String> {
        let n = self.plane.num_points();
        let all = self.set.union(&self.determined).union(&self.unsaturated);
        if all.len() != n
            || !self.set.is_disjoint(&self.determined)
            || !self.set.is_disjoint(&self.unsaturated)
            || !self.determined.is_disjoint(&self.unsaturated)
        {
            return Err("S, D, R do not partition the points".into());
        }
        for l in 0..n as u32 {
            let pts = self.plane.points_on(l);
            if self.set.count_in(pts) as u32 != self.line_hits(l) {
                return Err(format!("line {l}: stale hit count"));
            }
            if self.unsaturated.count_in(pts) as u32 != self.unsaturated_on(l) {
                return Err(format!("line {l}: stale unsaturated count"));
            }
        }
        let fresh = super::unsaturated(self.plane, &self.set);
        if fresh != self.unsaturated {
            return Err("R differs from a fresh computation".into());
        }
        Ok(())
    }
}
