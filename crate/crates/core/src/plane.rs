//! Projective planes as point/line incidence structures.
//!
//! Canonical PG(2,q) indexing: points `0..q²` are `(1,a,b)` at index `a·q + b`,
//! points `q²..q²+q` are `(0,1,a)`, and the last point is `(0,0,1)`. Lines use the
//! same normalization on their dual coordinates, and point `P` lies on line `L`
//! iff the dot product of their triples is zero.

use std::fmt;
use std::io::{BufRead, Write};

use crate::error::PlaneError;
use crate::field::{FieldElement, GaloisField};
use crate::pointset::PointSet;

pub const PLANE_HEADER: &str = "PLANE v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    CanonicalPg2,
    LoadedFile,
}

/// Homogeneous coordinates with the leftmost nonzero coordinate equal to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousTriple(pub [FieldElement; 3]);

impl HomogeneousTriple {
    /// Scales `coords` so that the leftmost nonzero entry is 1. `None` for the zero vector.
    pub fn normalize(field: &GaloisField, coords: [FieldElement; 3]) -> Option<Self> {
        let lead = coords.iter().copied().find(|c| !c.is_zero())?;
        let scale = field.inv(lead).ok()?;
        Some(HomogeneousTriple(coords.map(|c| field.mul(c, scale))))
    }

    /// Canonical index of this triple in a plane of order `q`.
    pub fn index(&self, q: u32) -> u32 {
        let [x, y, z] = self.0;
        if x == FieldElement::ONE {
            y.0 * q + z.0
        } else if y == FieldElement::ONE {
            q * q + z.0
        } else {
            q * q + q
        }
    }

    /// Inverse of [`HomogeneousTriple::index`].
    pub fn from_index(index: u32, q: u32) -> Self {
        let fe = FieldElement;
        let qq = q * q;
        if index < qq {
            HomogeneousTriple([fe(1), fe(index / q), fe(index % q)])
        } else if index < qq + q {
            HomogeneousTriple([fe(0), fe(1), fe(index - qq)])
        } else {
            HomogeneousTriple([fe(0), fe(0), fe(1)])
        }
    }

    pub fn dot(&self, field: &GaloisField, other: &HomogeneousTriple) -> FieldElement {
        let [a, b, c] = self.0;
        let [x, y, z] = other.0;
        field.add(field.add(field.mul(a, x), field.mul(b, y)), field.mul(c, z))
    }
}

/// First failed check reported by [`validate_incidence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    LineCount { expected: usize, found: usize },
    LineSize { line: usize, size: usize },
    IndexRange { line: usize, point: u32 },
    LineOrder { line: usize },
    PointDegree { point: u32, degree: usize },
    UniqueMeet { line_a: usize, line_b: usize },
    UniqueJoin { point_a: u32, point_b: u32 },
    CrossIndex { point: u32, line: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::LineCount { expected, found } => {
                write!(f, "line count: expected {expected}, found {found}")
            }
            AxiomViolation::LineSize { line, size } => {
                write!(f, "line size: line {line} has {size} points")
            }
            AxiomViolation::IndexRange { line, point } => {
                write!(f, "index range: line {line} lists point {point}")
            }
            AxiomViolation::LineOrder { line } => {
                write!(f, "line order: line {line} is not strictly ascending")
            }
            AxiomViolation::PointDegree { point, degree } => {
                write!(f, "point degree: point {point} lies on {degree} lines")
            }
            AxiomViolation::UniqueMeet { line_a, line_b } => {
                write!(f, "unique meet: lines {line_a} and {line_b} share more than one point")
            }
            AxiomViolation::UniqueJoin { point_a, point_b } => {
                write!(f, "unique join: points {point_a} and {point_b} lie on more than one line")
            }
            AxiomViolation::CrossIndex { point, line } => {
                write!(f, "cross index: point {point} and line {line} disagree")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `rows` (one ascending point list per line) form a projective plane of order `q`.
pub fn validate_incidence(q: u32, rows: &[Vec<u32>]) -> AxiomReport {
    let fail = |v| AxiomReport { violation: Some(v) };
    let n = (q as usize) * (q as usize) + q as usize + 1;
    let k = q as usize + 1;
    if rows.len() != n {
        return fail(AxiomViolation::LineCount { expected: n, found: rows.len() });
    }
    for (l, row) in rows.iter().enumerate() {
        if row.len() != k {
            return fail(AxiomViolation::LineSize { line: l, size: row.len() });
        }
        if let Some(&p) = row.iter().find(|&&p| p as usize >= n) {
            return fail(AxiomViolation::IndexRange { line: l, point: p });
        }
        if row.windows(2).any(|w| w[0] >= w[1]) {
            return fail(AxiomViolation::LineOrder { line: l });
        }
    }
    let mut lines_of: Vec<Vec<u32>> = vec![Vec::with_capacity(k); n];
    for (l, row) in rows.iter().enumerate() {
        for &p in row {
            lines_of[p as usize].push(l as u32);
        }
    }

    // Each line must meet every other line exactly once; stamps detect repeats.
    let mut stamp = vec![usize::MAX; n];
    for (l, row) in rows.iter().enumerate() {
        for &p in row {
            for &m in &lines_of[p as usize] {
                let m = m as usize;
                if m == l {
                    continue;
                }
                if stamp[m] == l {
                    return fail(AxiomViolation::UniqueMeet { line_a: l.min(m), line_b: l.max(m) });
                }
                stamp[m] = l;
            }
        }
    }
    if let Some((p, ls)) = lines_of.iter().enumerate().find(|(_, ls)| ls.len() != k) {
        return fail(AxiomViolation::PointDegree { point: p as u32, degree: ls.len() });
    }
    stamp.fill(usize::MAX);
    for (p, ls) in lines_of.iter().enumerate() {
        for &l in ls {
            for &x in &rows[l as usize] {
                let x = x as usize;
                if x == p {
                    continue;
                }
                if stamp[x] == p {
                    return fail(AxiomViolation::UniqueJoin {
                        point_a: p.min(x) as u32,
                        point_b: p.max(x) as u32,
                    });
                }
                stamp[x] = p;
            }
        }
    }
    AxiomReport { violation: None }
}

/// An immutable finite projective plane of order `q`.
#[derive(Clone)]
pub struct ProjectivePlane {
    q: u32,
    n: usize,
    /// `n * (q+1)` entries; row `l` holds the ascending points of line `l`.
    line_points: Vec<u32>,
    /// `n * (q+1)` entries; row `p` holds the ascending lines through point `p`.
    point_lines: Vec<u32>,
    origin: Origin,
    field: Option<GaloisField>,
}

impl fmt::Debug for ProjectivePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProjectivePlane")
            .field("q", &self.q)
            .field("n", &self.n)
            .field("origin", &self.origin)
            .finish()
    }
}

impl PartialEq for ProjectivePlane {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.line_points == other.line_points
    }
}

impl ProjectivePlane {
    /// The Desarguesian plane over `field`, with canonical indexing.
    pub fn pg2(field: GaloisField) -> Self {
        let q = field.order();
        let n = (q * q + q + 1) as usize;
        let k = q as usize + 1;
        let mut line_points = Vec::with_capacity(n * k);
        let mut row = Vec::with_capacity(k);
        for l in 0..n as u32 {
            row.clear();
            points_on_dual(&field, HomogeneousTriple::from_index(l, q), &mut row);
            row.sort_unstable();
            debug_assert_eq!(row.len(), k);
            line_points.extend_from_slice(&row);
        }
        let point_lines = transpose(&line_points, n, k);
        ProjectivePlane {
            q,
            n,
            line_points,
            point_lines,
            origin: Origin::CanonicalPg2,
            field: Some(field),
        }
    }

    /// PG(2,q) for a prime power `q`.
    pub fn pg2_of_order(q: u64) -> Result<Self, PlaneError> {
        Ok(Self::pg2(GaloisField::with_order(q)?))
    }

    /// Builds a plane from per-line point lists after full axiom validation.
    pub fn from_lines(q: u32, rows: &[Vec<u32>]) -> Result<Self, PlaneError> {
        let report = validate_incidence(q, rows);
        if let Some(v) = report.violation {
            return Err(match v {
                AxiomViolation::LineCount { expected, found } => {
                    PlaneError::LineCount { q, expected, found }
                }
                AxiomViolation::IndexRange { point, .. } => {
                    PlaneError::IndexOutOfRange { index: point, n: rows.len() }
                }
                other => PlaneError::Axiom(other.to_string()),
            });
        }
        let n = rows.len();
        let k = q as usize + 1;
        let line_points: Vec<u32> = rows.iter().flatten().copied().collect();
        let point_lines = transpose(&line_points, n, k);
        Ok(ProjectivePlane {
            q,
            n,
            line_points,
            point_lines,
            origin: Origin::LoadedFile,
            field: None,
        })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Number of points, which equals the number of lines.
    #[inline]
    pub fn num_points(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_lines(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// The coordinate field, for canonical planes.
    pub fn field(&self) -> Option<&GaloisField> {
        self.field.as_ref()
    }

    #[inline]
    pub fn points_on(&self, line: u32) -> &[u32] {
        let k = self.q as usize + 1;
        let start = line as usize * k;
        &self.line_points[start..start + k]
    }

    #[inline]
    pub fn lines_through(&self, point: u32) -> &[u32] {
        let k = self.q as usize + 1;
        let start = point as usize * k;
        &self.point_lines[start..start + k]
    }

    pub fn is_incident(&self, point: u32, line: u32) -> bool {
        self.points_on(line).binary_search(&point).is_ok()
    }

    pub fn point_set(&self, line: u32) -> PointSet {
        let mut s = PointSet::empty(self.n);
        for &p in self.points_on(line) {
            s.insert(p);
        }
        s
    }

    /// Coordinates of a point in a canonical plane.
    pub fn point_coords(&self, point: u32) -> Option<HomogeneousTriple> {
        self.field.as_ref()?;
        Some(HomogeneousTriple::from_index(point, self.q))
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, a: u32, b: u32) -> Result<u32, PlaneError> {
        self.check_point(a)?;
        self.check_point(b)?;
        if a == b {
            return Err(PlaneError::SamePoint);
        }
        Ok(self.join(a, b))
    }

    /// The unique common point of two distinct lines.
    pub fn meet(&self, l1: u32, l2: u32) -> Result<u32, PlaneError> {
        self.check_point(l1)?;
        self.check_point(l2)?;
        if l1 == l2 {
            return Err(PlaneError::SameLine);
        }
        Ok(self.intersect(l1, l2))
    }

    /// `line_through` without argument checks; `a != b` is the caller's responsibility.
    #[inline]
    pub(crate) fn join(&self, a: u32, b: u32) -> u32 {
        debug_assert_ne!(a, b);
        sorted_common(self.lines_through(a), self.lines_through(b))
            .expect("two points share a line")
    }

    #[inline]
    pub(crate) fn intersect(&self, l1: u32, l2: u32) -> u32 {
        debug_assert_ne!(l1, l2);
        sorted_common(self.points_on(l1), self.points_on(l2)).expect("two lines share a point")
    }

    /// Lines containing no point of `set`, ascending.
    pub fn skew_lines(&self, set: &PointSet) -> Vec<u32> {
        let mut hit = vec![false; self.n];
        for p in set.iter() {
            for &l in self.lines_through(p) {
                hit[l as usize] = true;
            }
        }
        (0..self.n as u32).filter(|&l| !hit[l as usize]).collect()
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n as u32).map(|l| self.points_on(l).to_vec()).collect()
    }

    /// Full axiom check on this plane's incidence data.
    pub fn validate_axioms(&self) -> AxiomReport {
        let report = validate_incidence(self.q, &self.rows());
        if !report.passed() {
            return report;
        }
        for p in 0..self.n as u32 {
            for &l in self.lines_through(p) {
                if !self.is_incident(p, l) {
                    return AxiomReport {
                        violation: Some(AxiomViolation::CrossIndex { point: p, line: l as usize }),
                    };
                }
            }
        }
        report
    }

    /// Writes the `PLANE v1` text format.
    pub fn save<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(self.to_file_string().as_bytes())
    }

    pub fn to_file_string(&self) -> String {
        let mut s = String::with_capacity(self.line_points.len() * 6 + 32);
        s.push_str(PLANE_HEADER);
        s.push('\n');
        s.push_str(&format!("q={}\n", self.q));
        for l in 0..self.n as u32 {
            let row = self.points_on(l);
            for (i, p) in row.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&p.to_string());
            }
            s.push('\n');
        }
        s
    }

    /// Reads and validates a `PLANE v1` file.
    pub fn load<R: BufRead>(input: R) -> Result<Self, PlaneError> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .transpose()?
            .ok_or_else(|| PlaneError::Malformed("empty input".into()))?;
        if header.trim_end() != PLANE_HEADER {
            return Err(PlaneError::Malformed(format!("bad header `{header}`")));
        }
        let qline = lines
            .next()
            .transpose()?
            .ok_or_else(|| PlaneError::Malformed("missing order line".into()))?;
        let q: u32 = qline
            .trim_end()
            .strip_prefix("q=")
            .and_then(|v| v.parse().ok())
            .filter(|&q| (2..=1 << 12).contains(&q))
            .ok_or_else(|| PlaneError::Malformed(format!("bad order line `{qline}`")))?;

        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PlaneError::Malformed(format!("row {}: non-integer entry", i + 1)))?;
            rows.push(row);
        }
        Self::from_lines(q, &rows)
    }

    pub fn parse(text: &str) -> Result<Self, PlaneError> {
        Self::load(text.as_bytes())
    }

    fn check_point(&self, i: u32) -> Result<(), PlaneError> {
        if (i as usize) < self.n {
            Ok(())
        } else {
            Err(PlaneError::IndexOutOfRange { index: i, n: self.n })
        }
    }
}

/// Points on the line with dual coordinates `line`, solved directly per coordinate chart.
fn points_on_dual(field: &GaloisField, line: HomogeneousTriple, out: &mut Vec<u32>) {
    let q = field.order();
    let [a, b, c] = line.0;
    let idx = |t: [FieldElement; 3]| HomogeneousTriple(t).index(q);
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    if !c.is_zero() {
        // a + b x + c z = 0 on (1, x, z); b + c z = 0 on (0, 1, z); (0,0,1) is off the line.
        let neg_c_inv = field.neg(field.inv(c).expect("nonzero"));
        for x in field.elements() {
            let z = field.mul(field.add(a, field.mul(b, x)), neg_c_inv);
            out.push(idx([one, x, z]));
        }
        out.push(idx([zero, one, field.mul(b, neg_c_inv)]));
    } else if !b.is_zero() {
        let y = field.mul(field.neg(a), field.inv(b).expect("nonzero"));
        for z in field.elements() {
            out.push(idx([one, y, z]));
        }
        out.push(idx([zero, zero, one]));
    } else {
        for z in field.elements() {
            out.push(idx([zero, one, z]));
        }
        out.push(idx([zero, zero, one]));
    }
}

fn transpose(line_points: &[u32], n: usize, k: usize) -> Vec<u32> {
    let mut fill = vec![0usize; n];
    let mut out = vec![0u32; n * k];
    // Lines are visited in ascending order, so each point's row comes out sorted.
    for (l, row) in line_points.chunks_exact(k).enumerate() {
        for &p in row {
            let p = p as usize;
            out[p * k + fill[p]] = l as u32;
            fill[p] += 1;
        }
    }
    out
}

fn sorted_common(a: &[u32], b: &[u32]) -> Option<u32> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}
