//! Subsets of the points of a plane.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::PlaneError;

/// A set of point indices in `[0, n)`, iterated in ascending order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        PointSet { bits }
    }

    pub fn from_indices<I>(n: usize, indices: I) -> Result<Self, PlaneError>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut set = Self::empty(n);
        for i in indices {
            if i as usize >= n {
                return Err(PlaneError::IndexOutOfRange { index: i, n });
            }
            set.bits.insert(i as usize);
        }
        Ok(set)
    }

    /// Size of the ambient point set.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, point: u32) -> bool {
        self.bits.contains(point as usize)
    }

    /// Returns `true` if the point was newly added.
    #[inline]
    pub fn insert(&mut self, point: u32) -> bool {
        assert!((point as usize) < self.bits.len(), "point {point} out of range");
        !self.bits.put(point as usize)
    }

    /// Returns `true` if the point was present.
    #[inline]
    pub fn remove(&mut self, point: u32) -> bool {
        let was = self.contains(point);
        self.bits.set(point as usize, false);
        was
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Lowest member, if any.
    pub fn first(&self) -> Option<u32> {
        self.bits.minimum().map(|i| i as u32)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        PointSet { bits }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        PointSet { bits }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        PointSet { bits }
    }

    pub fn complement(&self) -> PointSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        PointSet { bits }
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Number of members among `points`.
    pub fn count_in<'a>(&self, points: impl IntoIterator<Item = &'a u32>) -> usize {
        points.into_iter().filter(|&&p| self.contains(p)).count()
    }

    /// Renders the point-set file format: one ascending index per line.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for p in self.iter() {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the point-set file format. `#` starts a comment; blank lines are ignored;
    /// indices must be strictly ascending.
    pub fn parse(text: &str, n: usize) -> Result<Self, PlaneError> {
        let mut set = Self::empty(n);
        let mut last: Option<u32> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let index: u32 = line.parse().map_err(|_| {
                PlaneError::Malformed(format!("line {}: `{}` is not a point index", lineno + 1, line))
            })?;
            if index as usize >= n {
                return Err(PlaneError::IndexOutOfRange { index, n });
            }
            if last.is_some_and(|l| l >= index) {
                return Err(PlaneError::Malformed(format!(
                    "line {}: indices must be strictly ascending",
                    lineno + 1
                )));
            }
            last = Some(index);
            set.bits.insert(index as usize);
        }
        Ok(set)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
