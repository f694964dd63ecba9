use crate::error::SaturationError;
use crate::plane::ProjectivePlane;
use crate::pointset::PointSet;

/// Largest plane searched without an explicit override (PG(2,4)).
pub const BRUTE_FORCE_CAP: usize = 21;
/// Hard limit with override: subsets are 64-bit masks.
pub const BRUTE_FORCE_OVERRIDE_CAP: usize = 64;

/// Smallest saturating set, by exhaustive search in increasing size and lexicographic
/// order within a size. Returns the size and the first witness found.
pub fn minsat_bruteforce(
    plane: &ProjectivePlane,
    allow_large: bool,
) -> Result<(usize, PointSet), SaturationError> {
    let n = plane.num_points();
    let cap = if allow_large { BRUTE_FORCE_OVERRIDE_CAP } else { BRUTE_FORCE_CAP };
    if n > cap {
        return Err(SaturationError::BruteForceCap { n, cap });
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let lines: Vec<u64> = (0..n as u32)
        .map(|l| plane.points_on(l).iter().fold(0u64, |m, &p| m | 1 << p))
        .collect();
    let saturates = |mask: u64| {
        let mut covered = mask;
        for &line in &lines {
            if (line & mask).count_ones() >= 2 {
                covered |= line;
            }
        }
        covered == full
    };

    for size in 2..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
            if saturates(mask) {
                let witness = PointSet::from_indices(n, idx.iter().map(|&i| i as u32))
                    .expect("indices in range");
                return Ok((size, witness));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the full point set saturates")
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
