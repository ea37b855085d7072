//! Dense bipartite graphs, swaps and symmetric differences.

use std::fmt;
use std::str::FromStr;

use crate::degree::BipartiteDegreeSequence;
use crate::error::{Error, Result};

/// An edge `(u, v)` with `u` indexing class `U` (rows) and `v` class `V`
/// (columns).
pub type Edge = (usize, usize);

/// Which diagonal of the `{u1,u2} x {v1,v2}` submatrix carries the edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diagonal {
    /// Edges `(u1,v1)` and `(u2,v2)`.
    Main,
    /// Edges `(u1,v2)` and `(u2,v1)`.
    Anti,
}

impl Diagonal {
    pub fn flip(self) -> Self {
        match self {
            Diagonal::Main => Diagonal::Anti,
            Diagonal::Anti => Diagonal::Main,
        }
    }
}

/// A swap on `(u1, u2; v1, v2)` with `u1 < u2`, `v1 < v2`.
///
/// `orientation` records which diagonal holds the edges before the swap; the
/// swap moves them onto the other diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Swap {
    pub u1: usize,
    pub u2: usize,
    pub v1: usize,
    pub v2: usize,
    pub orientation: Diagonal,
}

impl Swap {
    /// Builds a swap from arbitrary-order indices, normalizing to
    /// `u1 < u2`, `v1 < v2`. `edges_on_main` refers to the pairs
    /// `(u1,v1),(u2,v2)` as given.
    pub fn new(u1: usize, u2: usize, v1: usize, v2: usize, edges_on_main: bool) -> Result<Self> {
        if u1 == u2 || v1 == v2 {
            return Err(Error::SwapNotAllowed(format!(
                "swap needs four distinct vertices, got ({u1},{u2};{v1},{v2})"
            )));
        }
        let mut orientation = if edges_on_main { Diagonal::Main } else { Diagonal::Anti };
        let (a1, a2) = if u1 < u2 { (u1, u2) } else { (u2, u1) };
        let (b1, b2) = if v1 < v2 { (v1, v2) } else { (v2, v1) };
        if (u1 > u2) != (v1 > v2) {
            orientation = orientation.flip();
        }
        Ok(Swap { u1: a1, u2: a2, v1: b1, v2: b2, orientation })
    }

    /// The swap undoing `self`.
    pub fn inverse(self) -> Self {
        Swap { orientation: self.orientation.flip(), ..self }
    }

    /// The two edges present before the swap.
    pub fn removed(&self) -> [Edge; 2] {
        match self.orientation {
            Diagonal::Main => [(self.u1, self.v1), (self.u2, self.v2)],
            Diagonal::Anti => [(self.u1, self.v2), (self.u2, self.v1)],
        }
    }

    /// The two edges present after the swap.
    pub fn added(&self) -> [Edge; 2] {
        self.inverse().removed()
    }

    pub fn cells(&self) -> [Edge; 4] {
        [(self.u1, self.v1), (self.u1, self.v2), (self.u2, self.v1), (self.u2, self.v2)]
    }

    pub fn touches(&self, cell: Edge) -> bool {
        self.cells().contains(&cell)
    }
}

impl fmt::Display for Swap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.u1, self.u2, self.v1, self.v2)
    }
}

/// A simple bipartite graph stored as a dense `k x l` biadjacency matrix,
/// rows indexing `U` and columns indexing `V`.
///
/// The derived ordering compares shape first and then the row-major bit
/// string, which is the canonical state order used throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteGraph {
    k: usize,
    l: usize,
    adj: Vec<u8>,
    row_deg: Vec<usize>,
    col_deg: Vec<usize>,
}

impl BipartiteGraph {
    pub fn empty(k: usize, l: usize) -> Self {
        BipartiteGraph {
            k,
            l,
            adj: vec![0; k * l],
            row_deg: vec![0; k],
            col_deg: vec![0; l],
        }
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let k = rows.len();
        let l = rows.first().map_or(0, |r| r.as_ref().len());
        let mut g = Self::empty(k, l);
        for (u, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != l {
                return Err(Error::ShapeMismatch(format!(
                    "row {u} has {} entries, expected {l}",
                    row.len()
                )));
            }
            for (v, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => g.insert(u, v),
                    _ => {
                        return Err(Error::Parse(format!(
                            "entry ({u},{v}) = {x} is not 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn from_edges(k: usize, l: usize, edges: &[Edge]) -> Result<Self> {
        let mut g = Self::empty(k, l);
        for &(u, v) in edges {
            if u >= k || v >= l {
                return Err(Error::OutOfRange(format!("edge ({u},{v}) in a {k}x{l} graph")));
            }
            if g.has_edge(u, v) {
                return Err(Error::Parse(format!("duplicate edge ({u},{v})")));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.l + v] == 1
    }

    #[inline]
    pub fn entry(&self, u: usize, v: usize) -> u8 {
        self.adj[u * self.l + v]
    }

    pub fn row_degrees(&self) -> &[usize] {
        &self.row_deg
    }

    pub fn col_degrees(&self) -> &[usize] {
        &self.col_deg
    }

    pub fn edge_count(&self) -> usize {
        self.row_deg.iter().sum()
    }

    /// Row-major biadjacency bits.
    pub fn bits(&self) -> &[u8] {
        &self.adj
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.k {
            for v in 0..self.l {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors_of_v(&self, v: usize) -> Vec<usize> {
        (0..self.k).filter(|&u| self.has_edge(u, v)).collect()
    }

    /// The bipartite degree sequence `bd(G)` (both lists sorted).
    pub fn degree_sequence(&self) -> BipartiteDegreeSequence {
        BipartiteDegreeSequence::from_unsorted(self.row_deg.clone(), self.col_deg.clone())
            .expect("degrees of a graph are always in range")
    }

    /// Same shape and identical per-vertex degrees.
    pub fn same_degrees(&self, other: &Self) -> bool {
        self.k == other.k
            && self.l == other.l
            && self.row_deg == other.row_deg
            && self.col_deg == other.col_deg
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(!self.has_edge(u, v));
        self.adj[u * self.l + v] = 1;
        self.row_deg[u] += 1;
        self.col_deg[v] += 1;
    }

    pub(crate) fn remove(&mut self, u: usize, v: usize) {
        debug_assert!(self.has_edge(u, v));
        self.adj[u * self.l + v] = 0;
        self.row_deg[u] -= 1;
        self.col_deg[v] -= 1;
    }

    /// Flips a cell; degree bookkeeping follows.
    pub(crate) fn toggle(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            self.remove(u, v)
        } else {
            self.insert(u, v)
        }
    }

    /// The swap on `(u1,u2; v1,v2)` if the induced 2x2 submatrix is a
    /// 1-factor.
    pub fn swap_at(&self, u1: usize, u2: usize, v1: usize, v2: usize) -> Option<Swap> {
        if u1 == u2 || v1 == v2 {
            return None;
        }
        let a = self.entry(u1, v1);
        let b = self.entry(u1, v2);
        let c = self.entry(u2, v1);
        let d = self.entry(u2, v2);
        if a == 1 && d == 1 && b == 0 && c == 0 {
            Swap::new(u1, u2, v1, v2, true).ok()
        } else if a == 0 && d == 0 && b == 1 && c == 1 {
            Swap::new(u1, u2, v1, v2, false).ok()
        } else {
            None
        }
    }

    pub fn is_allowed(&self, s: &Swap) -> bool {
        s.u2 < self.k
            && s.v2 < self.l
            && s.u1 < s.u2
            && s.v1 < s.v2
            && s.removed().iter().all(|&(u, v)| self.has_edge(u, v))
            && s.added().iter().all(|&(u, v)| !self.has_edge(u, v))
    }

    /// Every allowed swap, ordered by `(u1, u2, v1, v2)`.
    pub fn allowed_swaps(&self) -> Vec<Swap> {
        let mut out = Vec::new();
        for u1 in 0..self.k {
            for u2 in u1 + 1..self.k {
                for v1 in 0..self.l {
                    for v2 in v1 + 1..self.l {
                        if let Some(s) = self.swap_at(u1, u2, v1, v2) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn count_allowed_swaps(&self) -> usize {
        let mut n = 0;
        for u1 in 0..self.k {
            for u2 in u1 + 1..self.k {
                for v1 in 0..self.l {
                    for v2 in v1 + 1..self.l {
                        n += usize::from(self.swap_at(u1, u2, v1, v2).is_some());
                    }
                }
            }
        }
        n
    }

    pub fn apply_swap(&self, s: &Swap) -> Result<Self> {
        let mut g = self.clone();
        g.apply_swap_mut(s)?;
        Ok(g)
    }

    pub fn apply_swap_mut(&mut self, s: &Swap) -> Result<()> {
        if !self.is_allowed(s) {
            return Err(Error::SwapNotAllowed(format!(
                "({},{};{},{}) with {:?} edges",
                s.u1, s.u2, s.v1, s.v2, s.orientation
            )));
        }
        for (u, v) in s.removed() {
            self.remove(u, v);
        }
        for (u, v) in s.added() {
            self.insert(u, v);
        }
        Ok(())
    }

    /// Applies `swaps` in order, returning every intermediate graph
    /// (including `self` first).
    pub fn replay(&self, swaps: &[Swap]) -> Result<Vec<Self>> {
        let mut states = Vec::with_capacity(swaps.len() + 1);
        let mut cur = self.clone();
        states.push(cur.clone());
        for s in swaps {
            cur.apply_swap_mut(s)?;
            states.push(cur.clone());
        }
        Ok(states)
    }

    /// Induced subgraph on the given (sorted) rows and columns.
    pub fn induced(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut g = Self::empty(rows.len(), cols.len());
        for (i, &u) in rows.iter().enumerate() {
            for (j, &v) in cols.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    /// Splits `E(X △ Y)` into `X`-edges and `Y`-edges.
    pub fn symmetric_difference(&self, other: &Self) -> Result<EdgePartition> {
        check_compatible(self, other)?;
        let mut x_edges = Vec::new();
        let mut y_edges = Vec::new();
        for u in 0..self.k {
            for v in 0..self.l {
                match (self.has_edge(u, v), other.has_edge(u, v)) {
                    (true, false) => x_edges.push((u, v)),
                    (false, true) => y_edges.push((u, v)),
                    _ => {}
                }
            }
        }
        Ok(EdgePartition { k: self.k, l: self.l, x_edges, y_edges })
    }
}

/// Same shape and the same per-vertex degrees.
pub(crate) fn check_compatible(x: &BipartiteGraph, y: &BipartiteGraph) -> Result<()> {
    if x.k != y.k || x.l != y.l {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} versus {}x{}",
            x.k, x.l, y.k, y.l
        )));
    }
    if x.row_deg != y.row_deg || x.col_deg != y.col_deg {
        return Err(Error::DegreeMismatch(
            "the two graphs have different vertex degrees".into(),
        ));
    }
    Ok(())
}

/// The symmetric difference of two realizations, split into `X`-edges
/// (`E(X - Y)`) and `Y`-edges (`E(Y - X)`), each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    pub k: usize,
    pub l: usize,
    pub x_edges: Vec<Edge>,
    pub y_edges: Vec<Edge>,
}

impl EdgePartition {
    pub fn is_empty(&self) -> bool {
        self.x_edges.is_empty() && self.y_edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.x_edges.len() + self.y_edges.len()
    }

    /// `(x-count, y-count)` at every `U`-vertex, then every `V`-vertex.
    #[allow(clippy::type_complexity)]
    pub fn incidence_counts(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let mut us = vec![(0, 0); self.k];
        let mut vs = vec![(0, 0); self.l];
        for &(u, v) in &self.x_edges {
            us[u].0 += 1;
            vs[v].0 += 1;
        }
        for &(u, v) in &self.y_edges {
            us[u].1 += 1;
            vs[v].1 += 1;
        }
        (us, vs)
    }

    /// Every vertex sees as many `X`-edges as `Y`-edges.
    pub fn is_balanced(&self) -> bool {
        let (us, vs) = self.incidence_counts();
        us.iter().chain(vs.iter()).all(|(x, y)| x == y)
    }
}

impl FromStr for BipartiteGraph {
    type Err = Error;

    /// `k l` on the first line, then `k` lines of `l` characters `0`/`1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension {t:?}"))))
            .collect::<Result<_>>()?;
        let [k, l] = dims[..] else {
            return Err(Error::Parse("header must be `k l`".into()));
        };
        let mut g = Self::empty(k, l);
        for u in 0..k {
            let row = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {u}")))?;
            if row.len() != l {
                return Err(Error::Parse(format!("row {u} has length {}, expected {l}", row.len())));
            }
            for (v, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => g.insert(u, v),
                    _ => return Err(Error::Parse(format!("bad character {ch:?} in row {u}"))),
                }
            }
        }
        if lines.any(|r| !r.trim().is_empty()) {
            return Err(Error::Parse("unexpected content after the last row".into()));
        }
        Ok(g)
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.k, self.l)?;
        for u in 0..self.k {
            let row: String = (0..self.l)
                .map(|v| if self.has_edge(u, v) { '1' } else { '0' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matching() -> BipartiteGraph {
        BipartiteGraph::from_rows(&[[1u8, 0], [0, 1]]).unwrap()
    }

    #[test]
    fn complete_k22_has_no_allowed_swap() {
        let g = BipartiteGraph::from_rows(&[[1u8, 1], [1, 1]]).unwrap();
        assert!(g.allowed_swaps().is_empty());
    }

    #[test]
    fn matching_has_one_swap_and_it_is_an_involution() {
        let g = matching();
        let swaps = g.allowed_swaps();
        assert_eq!(swaps.len(), 1);
        let h = g.apply_swap(&swaps[0]).unwrap();
        assert_eq!(h, BipartiteGraph::from_rows(&[[0u8, 1], [1, 0]]).unwrap());
        assert_eq!(h.apply_swap(&swaps[0].inverse()).unwrap(), g);
        assert!(matches!(h.apply_swap(&swaps[0]), Err(Error::SwapNotAllowed(_))));
    }

    #[test]
    fn swap_normalization_tracks_orientation() {
        let g = matching();
        let s = Swap::new(1, 0, 1, 0, true).unwrap();
        assert_eq!(s.orientation, Diagonal::Main);
        assert!(g.is_allowed(&s));
        let s = Swap::new(1, 0, 0, 1, false).unwrap();
        assert_eq!(s.orientation, Diagonal::Main);
        assert!(Swap::new(0, 0, 0, 1, true).is_err());
    }

    #[test]
    fn symmetric_difference_of_matchings_is_a_four_cycle() {
        let x = matching();
        let y = x.apply_swap(&x.allowed_swaps()[0]).unwrap();
        let d = x.symmetric_difference(&y).unwrap();
        assert_eq!(d.x_edges, vec![(0, 0), (1, 1)]);
        assert_eq!(d.y_edges, vec![(0, 1), (1, 0)]);
        assert!(d.is_balanced());
        assert!(x.symmetric_difference(&x).unwrap().is_empty());
    }

    #[test]
    fn symmetric_difference_errors() {
        let x = matching();
        let wide = BipartiteGraph::empty(2, 3);
        assert!(matches!(x.symmetric_difference(&wide), Err(Error::ShapeMismatch(_))));
        let other = BipartiteGraph::from_rows(&[[1u8, 1], [0, 0]]).unwrap();
        assert!(matches!(x.symmetric_difference(&other), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn graph_text_round_trip() {
        let text = "2 3\n101\n010\n";
        let g: BipartiteGraph = text.parse().unwrap();
        assert_eq!(g.to_string(), text);
        assert_eq!(g.row_degrees(), &[2, 1]);
        assert_eq!(g.col_degrees(), &[1, 1, 1]);
        assert!("2 3\n101\n01\n".parse::<BipartiteGraph>().is_err());
        assert!("2 3\n101\n012\n".parse::<BipartiteGraph>().is_err());
    }
}
