//! Constructive swap sequences between realizations, and an exact
//! breadth-first swap-distance oracle.

use std::collections::{HashSet, VecDeque};

use crate::error::Result;
use crate::graph::{check_compatible, BipartiteGraph, Swap};
use crate::realize::push_up_within;

/// A distance search that may give up at a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CappedDistance {
    Exact(usize),
    /// Nothing at distance `<= cap`.
    Exceeds(usize),
}

impl CappedDistance {
    pub fn exact(self) -> Option<usize> {
        match self {
            CappedDistance::Exact(d) => Some(d),
            CappedDistance::Exceeds(_) => None,
        }
    }
}

/// Swaps transforming `g1` into `g2`, at most `2e` of them.
///
/// The highest-degree remaining `V`-vertex is pushed up in both graphs and
/// then deleted; the sequence is the first graph's push-ups followed by the
/// second graph's push-ups reversed and inverted. A column whose
/// neighbourhoods already agree is deleted without pushing.
pub fn ryser_sequence(g1: &BipartiteGraph, g2: &BipartiteGraph) -> Result<Vec<Swap>> {
    check_compatible(g1, g2)?;
    let (mut a, mut b) = (g1.clone(), g2.clone());
    let mut active = vec![true; g1.l()];
    let deg = g1.col_degrees().to_vec();
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    for _ in 0..g1.l() {
        let v = (0..g1.l())
            .filter(|&v| active[v])
            .max_by(|&x, &y| deg[x].cmp(&deg[y]).then(y.cmp(&x)))
            .expect("one active column per remaining iteration");
        let same = (0..g1.k()).all(|u| a.has_edge(u, v) == b.has_edge(u, v));
        if !same {
            forward.extend(push_up_within(&mut a, v, &active));
            backward.extend(push_up_within(&mut b, v, &active));
        }
        active[v] = false;
    }
    debug_assert_eq!(a, b);
    forward.extend(backward.into_iter().rev().map(Swap::inverse));
    Ok(forward)
}

/// Exact swap distance by breadth-first search in the Markov graph, giving
/// up beyond `cap`.
pub fn swap_distance(g1: &BipartiteGraph, g2: &BipartiteGraph, cap: usize) -> Result<CappedDistance> {
    check_compatible(g1, g2)?;
    if g1 == g2 {
        return Ok(CappedDistance::Exact(0));
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(g1.bits().to_vec());
    let mut frontier = VecDeque::from([(g1.clone(), 0usize)]);
    while let Some((g, d)) = frontier.pop_front() {
        if d == cap {
            continue;
        }
        for s in g.allowed_swaps() {
            let h = g.apply_swap(&s)?;
            if h == *g2 {
                return Ok(CappedDistance::Exact(d + 1));
            }
            if seen.insert(h.bits().to_vec()) {
                frontier.push_back((h, d + 1));
            }
        }
    }
    Ok(CappedDistance::Exceeds(cap))
}
