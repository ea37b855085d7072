//! Local coordinates of one alternating cycle.

use crate::cycles::AlternatingCycle;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge};

/// A position `(i, j)` of an `l x l` cycle-local matrix: row `i` is the
/// `i`-th `U`-vertex of the frame, column `j` the `j`-th `V`-vertex.
pub type Pos = (usize, usize);

/// Orders the vertices of an alternating cycle so that, in the graph the
/// walk starts from, the main diagonal `(i, i)` holds the cycle edges that
/// are present and the small diagonal `(i, i+1 mod l)` those that are
/// absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleFrame {
    us: Vec<usize>,
    vs: Vec<usize>,
}

impl CycleFrame {
    /// Frame of `cycle` relative to `g`, which must contain exactly one of
    /// the two perfect matchings of the cycle.
    pub fn new(cycle: &AlternatingCycle, g: &BipartiteGraph) -> Result<Self> {
        let (cu, cv) = (cycle.us(), cycle.vs());
        let m = cu.len();
        let frame = if g.has_edge(cu[0], cv[0]) {
            CycleFrame {
                us: (0..m).map(|i| cu[(m - i) % m]).collect(),
                vs: (0..m).map(|i| cv[(m - i) % m]).collect(),
            }
        } else {
            CycleFrame {
                us: (0..m).map(|i| cu[(i + 1) % m]).collect(),
                vs: cv.to_vec(),
            }
        };
        if !frame.is_base_state(g) {
            return Err(Error::CycleMismatch(
                "the graph does not hold exactly one matching of the cycle".into(),
            ));
        }
        Ok(frame)
    }

    /// Frame given directly by its vertex lists.
    pub fn from_vertices(us: Vec<usize>, vs: Vec<usize>) -> Result<Self> {
        if us.len() != vs.len() || us.is_empty() {
            return Err(Error::CycleMismatch("frame needs equally many U and V vertices".into()));
        }
        Ok(CycleFrame { us, vs })
    }

    pub fn len(&self) -> usize {
        self.us.len()
    }

    pub fn is_empty(&self) -> bool {
        self.us.is_empty()
    }

    pub fn us(&self) -> &[usize] {
        &self.us
    }

    pub fn vs(&self) -> &[usize] {
        &self.vs
    }

    /// The graph edge behind a local position.
    #[inline]
    pub fn edge(&self, p: Pos) -> Edge {
        (self.us[p.0], self.vs[p.1])
    }

    /// `(v - u) mod l`: 0 on the main diagonal, 1 on the small diagonal.
    #[inline]
    pub fn offset(&self, p: Pos) -> usize {
        offset(p, self.len())
    }

    pub fn main_cells(&self) -> Vec<Pos> {
        (0..self.len()).map(|i| (i, i)).collect()
    }

    pub fn small_cells(&self) -> Vec<Pos> {
        let m = self.len();
        (0..m).map(|i| (i, (i + 1) % m)).collect()
    }

    /// Main diagonal present and small diagonal absent in `g`.
    pub fn is_base_state(&self, g: &BipartiteGraph) -> bool {
        let m = self.len();
        if m == 1 {
            return g.has_edge(self.us[0], self.vs[0]);
        }
        self.main_cells().into_iter().all(|p| g.has_edge(self.edge(p).0, self.edge(p).1))
            && self
                .small_cells()
                .into_iter()
                .all(|p| !g.has_edge(self.edge(p).0, self.edge(p).1))
    }

    /// Main diagonal absent and small diagonal present in `g`.
    pub fn is_flipped_state(&self, g: &BipartiteGraph) -> bool {
        let m = self.len();
        if m == 1 {
            return g.has_edge(self.us[0], self.vs[0]);
        }
        self.main_cells().into_iter().all(|p| !g.has_edge(self.edge(p).0, self.edge(p).1))
            && self
                .small_cells()
                .into_iter()
                .all(|p| g.has_edge(self.edge(p).0, self.edge(p).1))
    }

    /// `g` with every main-diagonal edge of the frame replaced by the
    /// small-diagonal one.
    pub fn flip(&self, g: &BipartiteGraph) -> BipartiteGraph {
        let mut h = g.clone();
        if self.len() >= 2 {
            for p in self.main_cells().into_iter().chain(self.small_cells()) {
                let (u, v) = self.edge(p);
                h.toggle(u, v);
            }
        }
        h
    }

    /// The frame on the cyclic index range `a, a+1, ..., b`.
    pub fn segment(&self, a: usize, b: usize) -> CycleFrame {
        let m = self.len();
        let n = (b + m - a) % m + 1;
        CycleFrame {
            us: (0..n).map(|x| self.us[(a + x) % m]).collect(),
            vs: (0..n).map(|x| self.vs[(a + x) % m]).collect(),
        }
    }
}

#[inline]
/// `(j - i) mod m` for the position `(i, j)`.
pub fn offset(p: Pos, m: usize) -> usize {
    (p.1 + m - p.0) % m
}
