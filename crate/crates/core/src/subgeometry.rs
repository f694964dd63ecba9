//! Baer subplanes of PG(2, s²) and the three-subline saturating set.

use crate::error::SubgeometryError;
use crate::field::FieldElement;
use crate::plane::{HomogeneousTriple, Origin, ProjectivePlane};
use crate::pointset::PointSet;

/// The subplane PG(2, s) of PG(2, s²) cut out by the subfield GF(s).
#[derive(Clone, Debug)]
pub struct BaerEmbedding<'a> {
    plane: &'a ProjectivePlane,
    s: u32,
    subfield: Vec<FieldElement>,
    points: PointSet,
    /// Big-plane index of each subplane line, ascending.
    line_indices: Vec<u32>,
    /// The `s + 1` subplane points on each subplane line.
    lines: Vec<Vec<u32>>,
}

impl<'a> BaerEmbedding<'a> {
    pub fn plane(&self) -> &'a ProjectivePlane {
        self.plane
    }

    /// Order of the subplane.
    pub fn sub_order(&self) -> u32 {
        self.s
    }

    pub fn subfield(&self) -> &[FieldElement] {
        &self.subfield
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn line_indices(&self) -> &[u32] {
        &self.line_indices
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    /// Subplane points on the big-plane line `line`, if it is a subplane line.
    pub fn subline(&self, line: u32) -> Option<&[u32]> {
        let i = self.line_indices.binary_search(&line).ok()?;
        Some(&self.lines[i])
    }
}

fn in_subfield(subfield: &[FieldElement], t: HomogeneousTriple) -> bool {
    t.0.iter().all(|c| subfield.binary_search(c).is_ok())
}

/// Builds the canonical Baer subplane and checks that every line meets it in 1 or `s+1` points.
pub fn baer_subplane(plane: &ProjectivePlane) -> Result<BaerEmbedding<'_>, SubgeometryError> {
    let field = match (plane.origin(), plane.field()) {
        (Origin::CanonicalPg2, Some(f)) => f,
        _ => return Err(SubgeometryError::NotCanonical),
    };
    let q = plane.order();
    let s = (q as f64).sqrt().round() as u32;
    if s * s != q || field.degree() % 2 != 0 {
        return Err(SubgeometryError::NotSquare(q));
    }
    let subfield = field.subfield_elements(s)?;
    let n = plane.num_points() as u32;

    let points = PointSet::from_indices(
        n as usize,
        (0..n).filter(|&p| in_subfield(&subfield, HomogeneousTriple::from_index(p, q))),
    )
    .expect("indices in range");

    let mut line_indices = Vec::new();
    let mut lines = Vec::new();
    for l in 0..n {
        let on: Vec<u32> = plane.points_on(l).iter().copied().filter(|&p| points.contains(p)).collect();
        if on.len() != 1 && on.len() != s as usize + 1 {
            return Err(SubgeometryError::BaerProperty { line: l, count: on.len() });
        }
        if in_subfield(&subfield, HomogeneousTriple::from_index(l, q)) {
            if on.len() != s as usize + 1 {
                return Err(SubgeometryError::BaerProperty { line: l, count: on.len() });
            }
            line_indices.push(l);
            lines.push(on);
        }
    }

    Ok(BaerEmbedding {
        plane,
        s,
        subfield,
        points,
        line_indices,
        lines,
    })
}

/// Union of the subplane lines `x = 0`, `y = 0`, `z = 0`: `3s` points.
///
/// The result is not verified here.
pub fn three_subline_construction(embedding: &BaerEmbedding) -> PointSet {
    let plane = embedding.plane();
    let q = plane.order();
    let mut set = PointSet::empty(plane.num_points());
    for dual in triangle_lines(q) {
        let subline = embedding.subline(dual).expect("coordinate lines are subplane lines");
        for &p in subline {
            set.insert(p);
        }
    }
    set
}

/// Big-plane indices of the coordinate lines with dual coordinates (1,0,0), (0,1,0), (0,0,1).
pub fn triangle_lines(q: u32) -> [u32; 3] {
    [0, q * q, q * q + q]
}
