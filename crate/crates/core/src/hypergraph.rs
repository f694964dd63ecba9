//! Saturation hypergraphs and greedy transversals.
//!
//! For a seed set `S0`, every point `x` left unsaturated by `S0` gets the edge
//! `H_x = ⟨x, S0⟩ \ S0`: adding any vertex of `H_x` to `S0` saturates `x`. A transversal
//! of the family therefore completes `S0` to a saturating set.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::HypergraphError;
use crate::plane::ProjectivePlane;
use crate::pointset::PointSet;
use crate::saturation::unsaturated;

pub const FAMILY_HEADER: &str = "FAMILY v1";

/// A list of subsets (edges) of `0..n`, each stored ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    edges: Vec<Vec<u32>>,
    /// Unsaturated point each edge was built for, when the family came from a plane.
    labels: Option<Vec<u32>>,
}

impl SetFamily {
    /// Builds a family; edges are sorted and deduplicated.
    pub fn new(n: usize, edges: Vec<Vec<u32>>) -> Result<Self, HypergraphError> {
        let mut edges = edges;
        for edge in &mut edges {
            edge.sort_unstable();
            edge.dedup();
            if let Some(&v) = edge.last() {
                if v as usize >= n {
                    return Err(HypergraphError::Malformed(format!("vertex {v} outside 0..{n}")));
                }
            }
        }
        Ok(SetFamily { n, edges, labels: None })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    /// Number of edges containing each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for edge in &self.edges {
            for &v in edge {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    pub fn save<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(self.to_file_string().as_bytes())
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("{FAMILY_HEADER} n={} m={}\n", self.n, self.edges.len());
        for edge in &self.edges {
            let row: Vec<String> = edge.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    pub fn load<R: BufRead>(input: R) -> Result<Self, HypergraphError> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| HypergraphError::Malformed("empty input".into()))??;
        let (n, m) = parse_header(&header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| HypergraphError::Malformed(format!("bad vertex `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(HypergraphError::Malformed(format!("row {} is not strictly ascending", edges.len())));
            }
            edges.push(row);
        }
        if edges.len() != m {
            return Err(HypergraphError::Malformed(format!("header says m={m}, found {} rows", edges.len())));
        }
        SetFamily::new(n, edges)
    }

    pub fn parse(text: &str) -> Result<Self, HypergraphError> {
        SetFamily::load(text.as_bytes())
    }
}

fn parse_header(line: &str) -> Result<(usize, usize), HypergraphError> {
    let bad = || HypergraphError::Malformed(format!("bad header `{line}`"));
    let rest = line.trim().strip_prefix(FAMILY_HEADER).ok_or_else(bad)?;
    let mut parts = rest.split_whitespace();
    let n = parts.next().and_then(|t| t.strip_prefix("n=")).and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    let m = parts.next().and_then(|t| t.strip_prefix("m=")).and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((n, m))
}

/// One edge `⟨x, S0⟩ \ S0` per point `x` not saturated by `S0`, in increasing order of `x`.
pub fn saturation_family(plane: &ProjectivePlane, seed: &PointSet) -> Result<SetFamily, HypergraphError> {
    if seed.len() < 2 {
        return Err(HypergraphError::SeedTooSmall(seed.len()));
    }
    let open = unsaturated(plane, seed);
    let mut edges = Vec::with_capacity(open.len());
    let mut labels = Vec::with_capacity(open.len());
    for x in open.iter() {
        let mut edge = PointSet::empty(plane.num_points());
        for s in seed.iter() {
            for &p in plane.points_on(plane.join(x, s)) {
                if !seed.contains(p) {
                    edge.insert(p);
                }
            }
        }
        edges.push(edge.to_vec());
        labels.push(x);
    }
    Ok(SetFamily {
        n: plane.num_points(),
        edges,
        labels: Some(labels),
    })
}

/// Uniformity and pairwise intersections of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionProfile {
    /// Common edge size, if all edges have the same size.
    pub r: Option<usize>,
    /// Minimum pairwise intersection; `None` for fewer than two edges.
    pub t: Option<usize>,
    /// `|H_i ∩ H_j|` for `i < j`, row by row.
    pub pair_sizes: Vec<usize>,
}

impl IntersectionProfile {
    /// Size of the intersection of edges `i < j`.
    pub fn pair(&self, m: usize, i: usize, j: usize) -> usize {
        assert!(i < j && j < m);
        // Rows 0..i hold m-1, m-2, ... entries.
        let before = i * (2 * m - i - 1) / 2;
        self.pair_sizes[before + j - i - 1]
    }
}

fn intersection_size(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

pub fn check_uniform_intersecting(family: &SetFamily) -> IntersectionProfile {
    let edges = family.edges();
    let r = edges
        .first()
        .map(Vec::len)
        .filter(|&r| edges.iter().all(|e| e.len() == r));
    let mut pair_sizes = Vec::with_capacity(edges.len() * edges.len().saturating_sub(1) / 2);
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            pair_sizes.push(intersection_size(a, b));
        }
    }
    let t = pair_sizes.iter().copied().min();
    IntersectionProfile { r, t, pair_sizes }
}

/// Pairwise intersections of a saturation family compared against the two-case formula:
/// `k(k−1)` when `⟨x_i, x_j⟩` misses `S0`, `(k−1)(k−2)+q` when it meets `S0` once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaCheck {
    pub pairs: usize,
    /// Pairs whose joining line misses the seed set.
    pub disjoint_case: usize,
    /// Pairs whose joining line meets the seed set once.
    pub tangent_case: usize,
    /// `(i, j, expected, found)`; `expected` is `None` if the line carries two seed points.
    pub mismatches: Vec<(usize, usize, Option<usize>, usize)>,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks every pair of a family built by [`saturation_family`] from `seed`.
pub fn intersection_lemma(
    plane: &ProjectivePlane,
    seed: &PointSet,
    family: &SetFamily,
    profile: &IntersectionProfile,
) -> LemmaCheck {
    let labels = family.labels().expect("family built from a plane");
    let (k, q, m) = (seed.len(), plane.order() as usize, family.len());
    let mut check = LemmaCheck::default();
    for i in 0..m {
        for j in i + 1..m {
            let line = plane.join(labels[i], labels[j]);
            let found = profile.pair(m, i, j);
            let expected = match seed.count_in(plane.points_on(line)) {
                0 => {
                    check.disjoint_case += 1;
                    Some(k * (k - 1))
                }
                1 => {
                    check.tangent_case += 1;
                    Some((k - 1) * (k - 2) + q)
                }
                _ => None,
            };
            check.pairs += 1;
            if expected != Some(found) {
                check.mismatches.push((i, j, expected, found));
            }
        }
    }
    check
}

/// `⌈rm/(tm+r) · ln m⌉`.
pub fn transversal_bound(r: usize, t: usize, m: usize) -> Result<u64, HypergraphError> {
    if r == 0 {
        return Err(HypergraphError::ZeroRank);
    }
    if m < 2 {
        return Err(HypergraphError::TooFewEdges(m));
    }
    let (r, t, m) = (r as f64, t as f64, m as f64);
    Ok((r * m / (t * m + r) * m.ln()).ceil() as u64)
}

/// `1 + ⌈tm/r⌉`, the claimed minimum for the largest vertex degree.
pub fn degree_claim(r: usize, t: usize, m: usize) -> Result<usize, HypergraphError> {
    if r == 0 {
        return Err(HypergraphError::ZeroRank);
    }
    Ok(1 + (t * m).div_ceil(r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalResult {
    /// Chosen vertices in pick order.
    pub vertices: Vec<u32>,
    /// Uncovered edges hit by each pick.
    pub covered_counts: Vec<usize>,
    /// [`transversal_bound`] for uniform families with `m ≥ 2`.
    pub bound: Option<u64>,
}

impl TransversalResult {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Repeatedly takes the vertex lying in the most uncovered edges (lowest index on ties).
pub fn greedy_transversal(family: &SetFamily) -> Result<TransversalResult, HypergraphError> {
    let edges = family.edges();
    if edges.is_empty() {
        return Err(HypergraphError::NoEdges);
    }
    if let Some(i) = edges.iter().position(Vec::is_empty) {
        return Err(HypergraphError::EmptyEdge(i));
    }
    let mut covered = vec![false; edges.len()];
    let mut left = edges.len();
    let mut vertices = Vec::new();
    let mut covered_counts = Vec::new();
    let mut deg = vec![0usize; family.ground_size()];
    while left > 0 {
        deg.iter_mut().for_each(|d| *d = 0);
        for (edge, _) in edges.iter().zip(&covered).filter(|(_, &c)| !c) {
            for &v in edge {
                deg[v as usize] += 1;
            }
        }
        let (best, count) = deg
            .iter()
            .enumerate()
            .fold((0, 0), |acc, (v, &d)| if d > acc.1 { (v, d) } else { acc });
        let best = best as u32;
        for (edge, c) in edges.iter().zip(covered.iter_mut()) {
            if !*c && edge.binary_search(&best).is_ok() {
                *c = true;
            }
        }
        left -= count;
        vertices.push(best);
        covered_counts.push(count);
    }
    debug_assert!(edges.iter().all(|e| e.iter().any(|v| vertices.contains(v))));

    let profile_r = edges.first().map(Vec::len).filter(|&r| edges.iter().all(|e| e.len() == r));
    let bound = match profile_r {
        Some(r) if edges.len() >= 2 => {
            let t = check_uniform_intersecting(family).t.unwrap_or(0);
            Some(transversal_bound(r, t, edges.len())?)
        }
        _ => None,
    };
    Ok(TransversalResult {
        vertices,
        covered_counts,
        bound,
    })
}

/// True iff every edge contains a chosen vertex.
pub fn is_transversal(family: &SetFamily, vertices: &[u32]) -> bool {
    let mut chosen = vec![false; family.ground_size()];
    for &v in vertices {
        if let Some(c) = chosen.get_mut(v as usize) {
            *c = true;
        }
    }
    family.edges().iter().all(|e| e.iter().any(|&v| chosen[v as usize]))
}

/// `m` edges sharing the core `0..t`, each with `r - t` private vertices.
pub fn sunflower(r: usize, t: usize, m: usize) -> SetFamily {
    assert!(t <= r);
    let petal = r - t;
    let n = t + petal * m;
    let edges = (0..m)
        .map(|i| {
            (0..t as u32)
                .chain((t + i * petal..t + (i + 1) * petal).map(|v| v as u32))
                .collect()
        })
        .collect();
    SetFamily { n, edges, labels: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saturation::is_saturating;

    #[test]
    fn fano_single_edge() {
        let plane = ProjectivePlane::pg2_of_order(2).unwrap();
        let s0 = PointSet::from_indices(7, [0, 4, 6]).unwrap();
        let fam = saturation_family(&plane, &s0).unwrap();
        assert_eq!(fam.labels(), Some(&[3][..]));
        // ⟨3,0⟩ = {0,3,5}, ⟨3,4⟩ and ⟨3,6⟩ give the remaining points 1 and 2.
        assert_eq!(fam.edges(), &[vec![1, 2, 3, 5]]);
        let prof = check_uniform_intersecting(&fam);
        assert_eq!((prof.r, prof.t), (Some(4), None));
        let tr = greedy_transversal(&fam).unwrap();
        assert_eq!(tr.vertices, vec![1]);
        assert_eq!(tr.bound, None);
    }

    #[test]
    fn saturating_seed_gives_empty_family() {
        let plane = ProjectivePlane::pg2_of_order(2).unwrap();
        let s0 = PointSet::from_indices(7, [0, 4, 5, 6]).unwrap();
        assert!(saturation_family(&plane, &s0).unwrap().is_empty());
        let one = PointSet::from_indices(7, [0]).unwrap();
        assert!(matches!(saturation_family(&plane, &one), Err(HypergraphError::SeedTooSmall(1))));
    }

    #[test]
    fn bound_values() {
        assert_eq!(transversal_bound(10, 2, 20).unwrap(), 12);
        assert_eq!(transversal_bound(3, 0, 8).unwrap(), 17);
        for r in 1..20 {
            for t in 0..=r {
                assert!(transversal_bound(r, t, 2).unwrap() >= 1);
            }
        }
        assert!(matches!(transversal_bound(3, 1, 1), Err(HypergraphError::TooFewEdges(1))));
        assert!(matches!(transversal_bound(0, 0, 5), Err(HypergraphError::ZeroRank)));
        assert_eq!(degree_claim(10, 2, 20).unwrap(), 5);
    }

    #[test]
    fn sunflower_family() {
        let fam = sunflower(10, 2, 20);
        let prof = check_uniform_intersecting(&fam);
        assert_eq!((prof.r, prof.t), (Some(10), Some(2)));
        let tr = greedy_transversal(&fam).unwrap();
        assert_eq!(tr.vertices, vec![0]);
        assert_eq!(tr.covered_counts, vec![20]);
        assert!(tr.size() as u64 <= tr.bound.unwrap());
    }

    #[test]
    fn identical_edges() {
        let fam = SetFamily::new(6, vec![vec![1, 3, 5], vec![5, 3, 1]]).unwrap();
        let prof = check_uniform_intersecting(&fam);
        assert_eq!((prof.r, prof.t), (Some(3), Some(3)));
        assert_eq!(greedy_transversal(&fam).unwrap().vertices, vec![1]);
    }

    #[test]
    fn errors() {
        assert!(matches!(greedy_transversal(&SetFamily::new(3, vec![]).unwrap()), Err(HypergraphError::NoEdges)));
        let fam = SetFamily::new(3, vec![vec![0], vec![]]).unwrap();
        assert!(matches!(greedy_transversal(&fam), Err(HypergraphError::EmptyEdge(1))));
        assert!(SetFamily::new(3, vec![vec![3]]).is_err());
    }

    #[test]
    fn pair_indexing() {
        let fam = SetFamily::new(8, vec![vec![0, 1], vec![1, 2], vec![0, 1, 2], vec![7]]).unwrap();
        let prof = check_uniform_intersecting(&fam);
        assert_eq!(prof.r, None);
        let m = fam.len();
        for i in 0..m {
            for j in i + 1..m {
                assert_eq!(prof.pair(m, i, j), intersection_size(&fam.edges()[i], &fam.edges()[j]));
            }
        }
        assert_eq!(prof.t, Some(0));
    }

    #[test]
    fn file_round_trip() {
        let fam = sunflower(4, 1, 3);
        let text = fam.to_file_string();
        assert!(text.starts_with("FAMILY v1 n=10 m=3\n"));
        assert_eq!(SetFamily::parse(&text).unwrap(), fam);
        assert!(SetFamily::parse("FAMILY v1 n=3 m=2\n0 1\n").is_err());
        assert!(SetFamily::parse("FAMILY v1 n=3 m=1\n1 0\n").is_err());
        assert!(SetFamily::parse("FAMILY v2 n=3 m=0\n").is_err());
    }

    #[test]
    fn transversal_completes_seed() {
        let plane = ProjectivePlane::pg2_of_order(7).unwrap();
        let s0 = PointSet::from_indices(57, [0, 9, 20, 33]).unwrap();
        let fam = saturation_family(&plane, &s0).unwrap();
        assert!(fam.edges().iter().all(|e| e.len() == 4 * 6 + 1));
        let tr = greedy_transversal(&fam).unwrap();
        assert!(is_transversal(&fam, &tr.vertices));
        let mut full = s0.clone();
        for &v in &tr.vertices {
            full.insert(v);
        }
        assert!(is_saturating(&plane, &full));
    }

    #[test]
    fn lemma_cases_q7() {
        let plane = ProjectivePlane::pg2_of_order(7).unwrap();
        let s0 = PointSet::from_indices(57, [0, 9, 20, 33, 47]).unwrap();
        let fam = saturation_family(&plane, &s0).unwrap();
        let prof = check_uniform_intersecting(&fam);
        let check = intersection_lemma(&plane, &s0, &fam, &prof);
        assert!(check.holds(), "{:?}", check.mismatches);
        assert_eq!(check.pairs, prof.pair_sizes.len());
        assert_eq!(check.disjoint_case + check.tangent_case, check.pairs);
        assert!(prof.pair_sizes.iter().all(|&c| c == 20 || c == 19));
    }
}
