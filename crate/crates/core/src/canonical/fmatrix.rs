//! Cycle-local F-matrices, hat matrices, cousins and the position metric.

use std::collections::VecDeque;

use crate::cycles::AlternatingCycle;
use crate::error::{Error, Result};
use crate::graph::{check_compatible, BipartiteGraph};

use super::frame::{offset, CycleFrame, Pos};

/// The `l x l` matrix `F_Z` of one alternating cycle: diagonal and small
/// diagonal entries are those of `Z` (0/1); every other entry is the sum of
/// the entries of `G`, `G'` and `Z` (0..=3).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    ell: usize,
    cells: Vec<u8>,
}

impl FMatrix {
    /// Validates entry ranges: 0/1 on both diagonals, 0..=3 elsewhere.
    pub fn from_cells(ell: usize, cells: Vec<u8>) -> Result<Self> {
        if cells.len() != ell * ell {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {ell}x{ell} F-matrix",
                cells.len()
            )));
        }
        for i in 0..ell {
            for j in 0..ell {
                let x = cells[i * ell + j];
                let cap = if is_diagonal((i, j), ell) { 1 } else { 3 };
                if x > cap {
                    return Err(Error::Parse(format!("F-matrix entry ({i},{j}) = {x}")));
                }
            }
        }
        Ok(FMatrix { ell, cells })
    }

    /// The F-matrix at `Z = G` for the given chord types (`types[i*l+j]`,
    /// diagonal entries ignored).
    pub fn from_types(ell: usize, types: &[bool]) -> Result<Self> {
        if types.len() != ell * ell {
            return Err(Error::ShapeMismatch("type table has the wrong size".into()));
        }
        let cells = (0..ell * ell)
            .map(|c| {
                let p = (c / ell, c % ell);
                match offset(p, ell) {
                    0 => 1,
                    1 if ell > 1 => 0,
                    _ => 3 * u8::from(types[c]),
                }
            })
            .collect();
        Ok(FMatrix { ell, cells })
    }

    /// F-matrix of `z` in `frame`, with `g` and `g2` the two end graphs.
    pub fn in_frame(frame: &CycleFrame, g: &BipartiteGraph, g2: &BipartiteGraph, z: &BipartiteGraph) -> Self {
        let ell = frame.len();
        let mut cells = Vec::with_capacity(ell * ell);
        for i in 0..ell {
            for j in 0..ell {
                let (u, v) = frame.edge((i, j));
                let x = if is_diagonal((i, j), ell) {
                    z.entry(u, v)
                } else {
                    g.entry(u, v) + g2.entry(u, v) + z.entry(u, v)
                };
                cells.push(x);
            }
        }
        FMatrix { ell, cells }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    #[inline]
    pub fn get(&self, p: Pos) -> u8 {
        self.cells[p.0 * self.ell + p.1]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Type of a chord: whether it is an edge of `G` (equivalently `G'`).
    #[inline]
    pub fn chord_type(&self, p: Pos) -> bool {
        self.get(p) >= 2
    }

    pub fn is_chord(&self, p: Pos) -> bool {
        !is_diagonal(p, self.ell)
    }

    /// Every off-diagonal position in row-major order.
    pub fn chords(&self) -> Vec<Pos> {
        let ell = self.ell;
        (0..ell)
            .flat_map(|i| (0..ell).map(move |j| (i, j)))
            .filter(|&p| !is_diagonal(p, ell))
            .collect()
    }

    /// A chord with at least one cousin of its own type.
    pub fn is_friendly(&self, p: Pos) -> bool {
        self.same_type_cousin(p).is_some()
    }

    /// Lowest same-type cousin of a chord.
    pub fn same_type_cousin(&self, p: Pos) -> Option<Pos> {
        let t = self.chord_type(p);
        cousins(p, self.ell)
            .ok()?
            .into_iter()
            .find(|&c| self.chord_type(c) == t)
    }

    /// Chord types of the sub-frame on the cyclic indices `a, ..., a+n-1`;
    /// positions that are diagonal in the sub-frame get type 0.
    pub fn segment(&self, a: usize, n: usize) -> FMatrix {
        let m = self.ell;
        let types: Vec<bool> = (0..n * n)
            .map(|c| {
                let p = ((a + c / n) % m, (a + c % n) % m);
                !is_diagonal(p, m) && self.chord_type(p)
            })
            .collect();
        FMatrix::from_types(n, &types).expect("types fit the sub-frame")
    }

    /// Entrywise conversion to the cycle-local part of `G + G' - Z`.
    pub fn to_local_hat(&self) -> Vec<i8> {
        let ell = self.ell;
        (0..ell * ell)
            .map(|c| {
                let x = self.cells[c];
                if is_diagonal((c / ell, c % ell), ell) {
                    1 - x as i8
                } else {
                    match x {
                        0 => 0,
                        1 => -1,
                        2 => 2,
                        _ => 1,
                    }
                }
            })
            .collect()
    }

    /// Inverse of [`FMatrix::to_local_hat`].
    pub fn from_local_hat(ell: usize, hat: &[i8]) -> Result<Self> {
        if hat.len() != ell * ell {
            return Err(Error::ShapeMismatch("local hat matrix has the wrong size".into()));
        }
        let mut cells = Vec::with_capacity(hat.len());
        for (c, &h) in hat.iter().enumerate() {
            let x = if is_diagonal((c / ell, c % ell), ell) {
                match h {
                    0 => 1,
                    1 => 0,
                    _ => return Err(Error::Parse(format!("diagonal hat entry {h}"))),
                }
            } else {
                match h {
                    -1 => 1,
                    0 => 0,
                    1 => 3,
                    2 => 2,
                    _ => return Err(Error::Parse(format!("hat entry {h}"))),
                }
            };
            cells.push(x);
        }
        Ok(FMatrix { ell, cells })
    }
}

/// F-matrix of `z` along `cycle`, where `E(G △ G')` must be exactly the
/// cycle's edge set.
pub fn f_matrix(
    g: &BipartiteGraph,
    g2: &BipartiteGraph,
    z: &BipartiteGraph,
    cycle: &AlternatingCycle,
) -> Result<FMatrix> {
    check_compatible(g, g2)?;
    check_compatible(g, z)?;
    let diff = g.symmetric_difference(g2)?;
    let mut cyc = cycle.edges();
    cyc.sort_unstable();
    let mut all: Vec<_> = diff.x_edges.iter().chain(&diff.y_edges).copied().collect();
    all.sort_unstable();
    if all != cyc {
        return Err(Error::CycleMismatch(
            "the symmetric difference is not the given cycle".into(),
        ));
    }
    let frame = CycleFrame::new(cycle, g)?;
    Ok(FMatrix::in_frame(&frame, g, g2, z))
}

/// Main or small diagonal.
#[inline]
pub fn is_diagonal(p: Pos, ell: usize) -> bool {
    let d = offset(p, ell);
    d == 0 || (d == 1 && ell > 1)
}

/// Off-diagonal cousins of the chord at `p`: rows `{j-1, j}` times columns
/// `{i, i+1}` for `p = (i, j)`, indices modulo `l`, in lexicographic order.
pub fn cousins(p: Pos, ell: usize) -> Result<Vec<Pos>> {
    if is_diagonal(p, ell) || p.0 >= ell || p.1 >= ell {
        return Err(Error::DiagonalPosition(p));
    }
    let (i, j) = p;
    let mut out: Vec<Pos> = [(j + ell - 1) % ell, j]
        .into_iter()
        .flat_map(|r| [i, (i + 1) % ell].into_iter().map(move |c| (r, c)))
        .filter(|&q| !is_diagonal(q, ell))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Number of horizontal/vertical steps between two positions, wrapping
/// around both edges and never entering the main diagonal. `None` if one
/// of them lies on the main diagonal.
pub fn position_distance(a: Pos, b: Pos, ell: usize) -> Option<usize> {
    if a.0 == a.1 || b.0 == b.1 {
        return None;
    }
    let mut dist = vec![usize::MAX; ell * ell];
    dist[a.0 * ell + a.1] = 0;
    let mut q = VecDeque::from([a]);
    while let Some(p) = q.pop_front() {
        let d = dist[p.0 * ell + p.1];
        if p == b {
            return Some(d);
        }
        for n in rook_neighbors(p, ell) {
            if n.0 != n.1 && dist[n.0 * ell + n.1] == usize::MAX {
                dist[n.0 * ell + n.1] = d + 1;
                q.push_back(n);
            }
        }
    }
    None
}

/// The four wrap-around rook neighbours, in lexicographic order (with
/// duplicates removed for tiny matrices).
pub fn rook_neighbors(p: Pos, ell: usize) -> Vec<Pos> {
    let (i, j) = p;
    let mut v = vec![
        ((i + ell - 1) % ell, j),
        ((i + 1) % ell, j),
        (i, (j + ell - 1) % ell),
        (i, (j + 1) % ell),
    ];
    v.sort_unstable();
    v.dedup();
    v.retain(|&q| q != p);
    v
}

/// The eight wrap-around king neighbours.
pub fn king_neighbors(p: Pos, ell: usize) -> Vec<Pos> {
    let (i, j) = p;
    let mut v = Vec::with_capacity(8);
    for di in [ell - 1, 0, 1] {
        for dj in [ell - 1, 0, 1] {
            let q = ((i + di) % ell, (j + dj) % ell);
            if q != p {
                v.push(q);
            }
        }
    }
    v.sort_unstable();
    v.dedup();
    v
}

/// `M_X + M_Y - M_Z` for three realizations of one degree sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HatMatrix {
    k: usize,
    l: usize,
    entries: Vec<i8>,
}

impl HatMatrix {
    /// Validates that every entry lies in `-1..=2`.
    pub fn from_entries(k: usize, l: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != k * l {
            return Err(Error::ShapeMismatch(format!("{} entries for {k}x{l}", entries.len())));
        }
        if let Some(x) = entries.iter().find(|&&x| !(-1..=2).contains(&x)) {
            return Err(Error::Parse(format!("hat entry {x} outside -1..=2")));
        }
        Ok(HatMatrix { k, l, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> i8 {
        self.entries[u * self.l + v]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.k)
            .map(|u| (0..self.l).map(|v| self.get(u, v) as i64).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<i64> {
        (0..self.l)
            .map(|v| (0..self.k).map(|u| self.get(u, v) as i64).sum())
            .collect()
    }

    /// Already a biadjacency matrix.
    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|&x| x == 0 || x == 1)
    }

    pub fn to_graph(&self) -> Option<BipartiteGraph> {
        if !self.is_binary() {
            return None;
        }
        let rows: Vec<Vec<u8>> = (0..self.k)
            .map(|u| (0..self.l).map(|v| self.get(u, v) as u8).collect())
            .collect();
        BipartiteGraph::from_rows(&rows).ok()
    }
}

/// `M_X + M_Y - M_Z`.
pub fn hat_matrix(x: &BipartiteGraph, y: &BipartiteGraph, z: &BipartiteGraph) -> Result<HatMatrix> {
    check_compatible(x, y)?;
    check_compatible(x, z)?;
    let entries = x
        .bits()
        .iter()
        .zip(y.bits())
        .zip(z.bits())
        .map(|((&a, &b), &c)| a as i8 + b as i8 - c as i8)
        .collect();
    Ok(HatMatrix { k: x.k(), l: x.l(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cousin_window_is_two_by_two() {
        // chord (u6, v2) of an 8-cycle, one-based
        let c = cousins((5, 1), 8).unwrap();
        assert_eq!(c, vec![(0, 5), (0, 6), (1, 5), (1, 6)]);
        assert_eq!(cousins((2, 2), 8), Err(Error::DiagonalPosition((2, 2))));
        assert_eq!(cousins((2, 3), 8), Err(Error::DiagonalPosition((2, 3))));
    }

    #[test]
    fn local_hat_round_trip() {
        let types: Vec<bool> = (0..25).map(|c| c % 3 == 0).collect();
        let f = FMatrix::from_types(5, &types).unwrap();
        let back = FMatrix::from_local_hat(5, &f.to_local_hat()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn distance_wraps_and_avoids_main_diagonal() {
        assert_eq!(position_distance((0, 2), (0, 3), 5), Some(1));
        assert_eq!(position_distance((0, 4), (0, 1), 5), Some(3));
        // crossing from below to above the diagonal needs a detour
        assert_eq!(position_distance((1, 0), (0, 1), 3), Some(3));
        assert_eq!(position_distance((1, 1), (0, 1), 3), None);
    }

    #[test]
    fn hat_cancels() {
        let x = BipartiteGraph::from_rows(&[[1u8, 0], [0, 1]]).unwrap();
        let y = BipartiteGraph::from_rows(&[[0u8, 1], [1, 0]]).unwrap();
        assert_eq!(hat_matrix(&x, &y, &x).unwrap().to_graph().unwrap(), y);
        assert_eq!(hat_matrix(&x, &y, &y).unwrap().to_graph().unwrap(), x);
    }
}
