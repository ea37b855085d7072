//! OK and KO patterns: the fixed points visited while a cycle is switched
//! along a friendly path, and the swap bridges between them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Swap};
use crate::ryser::ryser_sequence;

use super::frame::{offset, CycleFrame, Pos};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OkKoKind {
    Ok,
    Ko,
}

/// One OK or KO pattern, relative to the base state of a frame.
///
/// `Ok` with `(p, q)`: the present chord `(p, q)` is removed, the mains
/// strictly between `p` and `q` (cyclically) are removed and the smalls
/// `(i, i+1)` for `p <= i < q` are added.
///
/// `Ko` with `(p, q)`: the absent chord `(q, p)` is added, the mains from
/// `p` to `q` inclusive are removed and the same smalls are added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OkKoSpec {
    pub kind: OkKoKind,
    pub p: usize,
    pub q: usize,
}

impl OkKoSpec {
    /// OK pattern on the chord at `pos`.
    pub fn ok_at(pos: Pos) -> Self {
        OkKoSpec { kind: OkKoKind::Ok, p: pos.0, q: pos.1 }
    }

    /// KO pattern whose new chord sits at `pos`.
    pub fn ko_at(pos: Pos) -> Self {
        OkKoSpec { kind: OkKoKind::Ko, p: pos.1, q: pos.0 }
    }

    /// The chord position the pattern is built around.
    pub fn anchor(&self) -> Pos {
        match self.kind {
            OkKoKind::Ok => (self.p, self.q),
            OkKoKind::Ko => (self.q, self.p),
        }
    }

    /// Positions whose value differs from the base state.
    pub fn toggled(&self, m: usize) -> Vec<Pos> {
        let span = (self.q + m - self.p) % m;
        let mut cells = vec![self.anchor()];
        let mains = match self.kind {
            OkKoKind::Ok => 1..span,
            OkKoKind::Ko => 0..span + 1,
        };
        cells.extend(mains.map(|s| ((self.p + s) % m, (self.p + s) % m)));
        cells.extend((0..span).map(|s| ((self.p + s) % m, (self.p + s + 1) % m)));
        cells
    }
}

/// Fixed points of the walk along one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Milestone {
    /// The state the cycle starts from.
    Base,
    Anchored(OkKoSpec),
    /// Every main removed, every small added.
    Flipped,
}

/// The graph a milestone denotes, given the base state of the frame.
pub fn milestone_graph(base: &BipartiteGraph, frame: &CycleFrame, ms: &Milestone) -> Result<BipartiteGraph> {
    match ms {
        Milestone::Base => Ok(base.clone()),
        Milestone::Flipped => Ok(frame.flip(base)),
        Milestone::Anchored(spec) => {
            let m = frame.len();
            let anchor = spec.anchor();
            let d = offset(anchor, m);
            if spec.p >= m || spec.q >= m || d < 2 {
                return Err(Error::SpecViolation(format!(
                    "{spec:?} is not anchored at a chord of a {m}-frame"
                )));
            }
            let (u, v) = frame.edge(anchor);
            let want = spec.kind == OkKoKind::Ok;
            if base.has_edge(u, v) != want {
                return Err(Error::SpecViolation(format!(
                    "{spec:?} needs the chord {anchor:?} {} in the base state",
                    if want { "present" } else { "absent" }
                )));
            }
            let mut g = base.clone();
            for p in spec.toggled(m) {
                let (u, v) = frame.edge(p);
                g.toggle(u, v);
            }
            Ok(g)
        }
    }
}

/// A bridge between two consecutive milestones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OkKoStep {
    pub swaps: Vec<Swap>,
    /// Number of edges in the symmetric difference of the two milestones.
    pub diff_len: usize,
    /// The symmetric difference is one alternating cycle.
    pub single_cycle: bool,
}

/// Swaps from the milestone `prev` to the milestone `next`; `current` must
/// be exactly the graph `prev` denotes.
pub fn ok_ko_step(
    current: &BipartiteGraph,
    base: &BipartiteGraph,
    frame: &CycleFrame,
    prev: &Milestone,
    next: &Milestone,
) -> Result<OkKoStep> {
    let expected = milestone_graph(base, frame, prev)?;
    if &expected != current {
        return Err(Error::SpecViolation(format!("the current state is not at {prev:?}")));
    }
    let target = milestone_graph(base, frame, next)?;
    let diff = current.symmetric_difference(&target)?;
    let single_cycle = is_single_cycle(&diff.x_edges, &diff.y_edges);
    let swaps = low_deviation_bridge(current, &target, base, frame)?;
    Ok(OkKoStep { swaps, diff_len: diff.len(), single_cycle })
}

/// Swaps from `from` to `to` that only use the rows and columns where the
/// two graphs differ, built by [`ryser_sequence`] on that subgraph.
pub fn bridge(from: &BipartiteGraph, to: &BipartiteGraph) -> Result<Vec<Swap>> {
    let diff = from.symmetric_difference(to)?;
    let mut rows = BTreeSet::new();
    let mut cols = BTreeSet::new();
    for &(u, v) in diff.x_edges.iter().chain(&diff.y_edges) {
        rows.insert(u);
        cols.insert(v);
    }
    let rows: Vec<usize> = rows.into_iter().collect();
    let cols: Vec<usize> = cols.into_iter().collect();
    let local = ryser_sequence(&from.induced(&rows, &cols), &to.induced(&rows, &cols))?;
    Ok(local
        .into_iter()
        .map(|s| Swap {
            u1: rows[s.u1],
            u2: rows[s.u2],
            v1: cols[s.v1],
            v2: cols[s.v2],
            orientation: s.orientation,
        })
        .collect())
}

/// Swaps from `from` to `to` inside the rows and columns where they
/// differ, keeping the number of chords of `frame` that disagree with
/// `base` as small as possible at every step; among such sequences a
/// shortest one.
pub fn low_deviation_bridge(
    from: &BipartiteGraph,
    to: &BipartiteGraph,
    base: &BipartiteGraph,
    frame: &CycleFrame,
) -> Result<Vec<Swap>> {
    let diff = from.symmetric_difference(to)?;
    let mut rows = BTreeSet::new();
    let mut cols = BTreeSet::new();
    for &(u, v) in diff.x_edges.iter().chain(&diff.y_edges) {
        rows.insert(u);
        cols.insert(v);
    }
    let rows: Vec<usize> = rows.into_iter().collect();
    let cols: Vec<usize> = cols.into_iter().collect();
    let (a, b) = (from.induced(&rows, &cols), to.induced(&rows, &cols));
    let m = frame.len();
    let local_of = |xs: &[usize], w: usize| xs.iter().position(|&x| x == w);
    // local cells that are chords of the frame
    let mut watched = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if offset((i, j), m) < 2 {
                continue;
            }
            let (u, v) = frame.edge((i, j));
            if let (Some(r), Some(c)) = (local_of(&rows, u), local_of(&cols, v)) {
                watched.push((r, c, base.has_edge(u, v)));
            }
        }
    }
    let deviation = |g: &BipartiteGraph| watched.iter().filter(|&&(r, c, e)| g.has_edge(r, c) != e).count();
    let floor = deviation(&a).max(deviation(&b));
    for limit in floor..=watched.len() {
        if let Some(local) = bounded_bfs(&a, &b, &|g| deviation(g) <= limit) {
            return Ok(local
                .into_iter()
                .map(|s| Swap { u1: rows[s.u1], u2: rows[s.u2], v1: cols[s.v1], v2: cols[s.v2], orientation: s.orientation })
                .collect());
        }
    }
    Err(Error::SpecViolation("no swap sequence between the two milestones".into()))
}

/// Shortest swap sequence from `a` to `b` through states accepted by `ok`.
fn bounded_bfs(a: &BipartiteGraph, b: &BipartiteGraph, ok: &dyn Fn(&BipartiteGraph) -> bool) -> Option<Vec<Swap>> {
    use std::collections::{HashMap, VecDeque};
    let mut parent: HashMap<BipartiteGraph, Option<(BipartiteGraph, Swap)>> = HashMap::from([(a.clone(), None)]);
    let mut q = VecDeque::from([a.clone()]);
    while let Some(g) = q.pop_front() {
        if &g == b {
            let mut out = Vec::new();
            let mut cur = g;
            while let Some(Some((prev, s))) = parent.get(&cur).cloned() {
                out.push(s);
                cur = prev;
            }
            out.reverse();
            return Some(out);
        }
        for s in g.allowed_swaps() {
            let h = g.apply_swap(&s).expect("allowed swap");
            if !parent.contains_key(&h) && ok(&h) {
                parent.insert(h.clone(), Some((g.clone(), s)));
                q.push_back(h);
            }
        }
    }
    None
}

/// Whether the edges form a single cycle alternating between the two sets.
pub(crate) fn is_single_cycle(x_edges: &[(usize, usize)], y_edges: &[(usize, usize)]) -> bool {
    if x_edges.is_empty() || x_edges.len() != y_edges.len() {
        return false;
    }
    // vertices: U-vertex u as 2u, V-vertex v as 2v+1
    let mut inc: std::collections::BTreeMap<usize, [usize; 2]> = Default::default();
    for (side, set) in [x_edges, y_edges].into_iter().enumerate() {
        for &(u, v) in set {
            inc.entry(2 * u).or_default()[side] += 1;
            inc.entry(2 * v + 1).or_default()[side] += 1;
        }
    }
    if inc.values().any(|c| *c != [1, 1]) {
        return false;
    }
    let all: Vec<(usize, usize)> = x_edges.iter().chain(y_edges).copied().collect();
    let mut seen = BTreeSet::from([2 * all[0].0]);
    let mut stack = vec![2 * all[0].0];
    while let Some(w) = stack.pop() {
        for &(u, v) in &all {
            let (a, b) = (2 * u, 2 * v + 1);
            let other = if a == w { b } else if b == w { a } else { continue };
            if seen.insert(other) {
                stack.push(other);
            }
        }
    }
    seen.len() == inc.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(m: usize, chords: &[Pos]) -> (BipartiteGraph, CycleFrame) {
        let mut edges: Vec<(usize, usize)> = (0..m).map(|i| (i, i)).collect();
        edges.extend_from_slice(chords);
        let g = BipartiteGraph::from_edges(m, m, &edges).unwrap();
        let frame = CycleFrame::from_vertices((0..m).collect(), (0..m).collect()).unwrap();
        (g, frame)
    }

    #[test]
    fn patterns_keep_degrees() {
        let m = 7;
        let (g, frame) = cycle_graph(m, &[(1, 4), (5, 2)]);
        for spec in [OkKoSpec::ok_at((1, 4)), OkKoSpec::ok_at((5, 2)), OkKoSpec::ko_at((3, 0)), OkKoSpec::ko_at((6, 4))] {
            let h = milestone_graph(&g, &frame, &Milestone::Anchored(spec)).unwrap();
            assert!(h.same_degrees(&g), "{spec:?}");
        }
        assert!(milestone_graph(&g, &frame, &Milestone::Anchored(OkKoSpec::ok_at((0, 3)))).is_err());
        assert!(milestone_graph(&g, &frame, &Milestone::Anchored(OkKoSpec::ko_at((1, 4)))).is_err());
    }

    #[test]
    fn ok_to_wider_ok_is_one_cycle() {
        let m = 8;
        let (g, frame) = cycle_graph(m, &[(2, 4), (1, 6)]);
        let prev = Milestone::Anchored(OkKoSpec::ok_at((2, 4)));
        let next = Milestone::Anchored(OkKoSpec::ok_at((1, 6)));
        let cur = milestone_graph(&g, &frame, &prev).unwrap();
        let step = ok_ko_step(&cur, &g, &frame, &prev, &next).unwrap();
        assert!(step.single_cycle);
        assert_eq!(step.diff_len, 8);
        let end = cur.replay(&step.swaps).unwrap().pop().unwrap();
        assert_eq!(end, milestone_graph(&g, &frame, &next).unwrap());
        assert!(step.swaps.len() <= 24);
    }

    #[test]
    fn same_milestone_needs_no_swaps() {
        let (g, frame) = cycle_graph(5, &[(0, 3)]);
        let ms = Milestone::Anchored(OkKoSpec::ok_at((0, 3)));
        let cur = milestone_graph(&g, &frame, &ms).unwrap();
        let step = ok_ko_step(&cur, &g, &frame, &ms, &ms).unwrap();
        assert!(step.swaps.is_empty());
        assert!(ok_ko_step(&g, &g, &frame, &ms, &ms).is_err());
    }
}
