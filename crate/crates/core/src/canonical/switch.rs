//! Switch distance of an integer matrix to the nearest 0-1 matrix with the
//! same margins.

use crate::degree::BipartiteDegreeSequence;
use crate::error::{Error, Result};
use crate::realize::is_graphical;
use crate::ryser::CappedDistance;

use super::fmatrix::HatMatrix;

/// Default search depth for [`switch_distance`].
pub const DEFAULT_SWITCH_CAP: usize = 6;

/// Fewest switches (`+1` on one diagonal of a 2x2 submatrix, `-1` on the
/// other) turning `m` into a 0-1 matrix, or `Exceeds(cap)`.
///
/// Switches add up independently of their order, so the search is over
/// multisets: iterative deepening, each level fixing the first entry that
/// is not 0 or 1.
pub fn switch_distance(m: &HatMatrix, cap: usize) -> Result<CappedDistance> {
    let (rows, cols) = (m.row_sums(), m.col_sums());
    if rows.iter().chain(&cols).any(|&s| s < 0) {
        return Err(Error::MarginMismatch("negative margin".into()));
    }
    let ds = BipartiteDegreeSequence::from_unsorted(
        rows.iter().map(|&s| s as usize).collect(),
        cols.iter().map(|&s| s as usize).collect(),
    )
    .map_err(|e| Error::MarginMismatch(e.to_string()))?;
    if !is_graphical(&ds) {
        return Err(Error::MarginMismatch("margins have no 0-1 realization".into()));
    }
    let mut e: Vec<i32> = m.entries().iter().map(|&x| x as i32).collect();
    let (k, l) = (m.k(), m.l());
    for depth in lower_bound(&e)..=cap {
        if search(&mut e, k, l, depth) {
            return Ok(CappedDistance::Exact(depth));
        }
    }
    Ok(CappedDistance::Exceeds(cap))
}

/// Each switch lowers two entries and raises two.
fn lower_bound(e: &[i32]) -> usize {
    let over: i32 = e.iter().map(|&x| (x - 1).max(0)).sum();
    let under: i32 = e.iter().map(|&x| (-x).max(0)).sum();
    (over.max(under) as usize).div_ceil(2)
}

fn search(e: &mut [i32], k: usize, l: usize, depth: usize) -> bool {
    let Some(c) = e.iter().position(|&x| !(0..=1).contains(&x)) else {
        return true;
    };
    if depth == 0 || lower_bound(e) > depth {
        return false;
    }
    let (u, v) = (c / l, c % l);
    let s = if e[c] > 1 { -1 } else { 1 };
    for u2 in (0..k).filter(|&x| x != u) {
        for v2 in (0..l).filter(|&x| x != v) {
            let cells = [(u * l + v, s), (u2 * l + v2, s), (u * l + v2, -s), (u2 * l + v, -s)];
            for &(i, d) in &cells {
                e[i] += d;
            }
            let found = search(e, k, l, depth - 1);
            for &(i, d) in &cells {
                e[i] -= d;
            }
            if found {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn hat(k: usize, l: usize, e: &[i8]) -> HatMatrix {
        HatMatrix::from_entries(k, l, e.to_vec()).unwrap()
    }

    /// Plain breadth-first search over all switch sequences.
    fn bfs(m: &HatMatrix, cap: usize) -> Option<usize> {
        let (k, l) = (m.k(), m.l());
        let start: Vec<i32> = m.entries().iter().map(|&x| x as i32).collect();
        let mut seen = HashSet::from([start.clone()]);
        let mut q = VecDeque::from([(start, 0)]);
        while let Some((e, d)) = q.pop_front() {
            if e.iter().all(|x| (0..=1).contains(x)) {
                return Some(d);
            }
            if d == cap {
                continue;
            }
            for u1 in 0..k {
                for u2 in u1 + 1..k {
                    for v1 in 0..l {
                        for v2 in 0..l {
                            if v1 == v2 {
                                continue;
                            }
                            let mut n = e.clone();
                            n[u1 * l + v1] += 1;
                            n[u2 * l + v2] += 1;
                            n[u1 * l + v2] -= 1;
                            n[u2 * l + v1] -= 1;
                            if seen.insert(n.clone()) {
                                q.push_back((n, d + 1));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn binary_matrix_is_at_zero() {
        assert_eq!(switch_distance(&hat(2, 2, &[1, 0, 0, 1]), 6).unwrap(), CappedDistance::Exact(0));
    }

    #[test]
    fn a_two_next_to_a_partner_is_one_switch() {
        // 2 at (0,0); the -1 partner sits diagonally
        let m = hat(2, 3, &[2, 0, 0, 0, 1, 1]);
        assert_eq!(switch_distance(&m, 6).unwrap(), CappedDistance::Exact(1));
    }

    #[test]
    fn unrealizable_margins_are_rejected() {
        let m = hat(2, 2, &[2, 2, 0, 0]);
        assert!(matches!(switch_distance(&m, 6), Err(Error::MarginMismatch(_))));
    }

    #[test]
    fn agrees_with_breadth_first_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 60 {
            let (k, l) = (rng.random_range(2..4), rng.random_range(2..4));
            let e: Vec<i8> = (0..k * l).map(|_| rng.random_range(-1..3)).collect();
            let m = hat(k, l, &e);
            let Ok(d) = switch_distance(&m, 4) else { continue };
            assert_eq!(d.exact(), bfs(&m, 4), "{e:?}");
            checked += 1;
        }
    }
}
