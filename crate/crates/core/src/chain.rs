//! The swap Markov chain: exact transition probabilities and a seeded
//! sampler.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::degree::BipartiteDegreeSequence;
use crate::error::Result;
use crate::graph::{check_compatible, BipartiteGraph, Swap};
use crate::realize::greedy_realize;

/// Seed used by the command-line front end when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

pub(crate) fn choose2(n: usize) -> u64 {
    (n as u64) * (n.saturating_sub(1) as u64) / 2
}

/// Number of equally likely `(u-pair, v-pair)` draws per step,
/// `C(k,2) * C(l,2)`.
pub fn draw_count(k: usize, l: usize) -> u64 {
    choose2(k) * choose2(l)
}

/// The unique swap turning `g` into `h`, if the two are one swap apart.
pub fn connecting_swap(g: &BipartiteGraph, h: &BipartiteGraph) -> Option<Swap> {
    let diff = g.symmetric_difference(h).ok()?;
    if diff.x_edges.len() != 2 {
        return None;
    }
    let (a, b) = (diff.x_edges[0], diff.x_edges[1]);
    g.swap_at(a.0, b.0, a.1, b.1)
        .filter(|s| s.added().iter().all(|e| diff.y_edges.contains(e)))
}

/// Numerator of the transition probability over the common denominator
/// [`draw_count`].
pub(crate) fn transition_count(g: &BipartiteGraph, h: &BipartiteGraph) -> u64 {
    let q = draw_count(g.k(), g.l());
    if g == h {
        q - g.count_allowed_swaps() as u64
    } else if connecting_swap(g, h).is_some() {
        1
    } else {
        0
    }
}

/// `T(h | g)` as an exact rational. When no draw is possible at all
/// (`k < 2` or `l < 2`) the chain is frozen and the self-loop is 1.
pub fn transition_prob(g: &BipartiteGraph, h: &BipartiteGraph) -> Result<BigRational> {
    check_compatible(g, h)?;
    let q = draw_count(g.k(), g.l());
    if q == 0 {
        return Ok(BigRational::from_integer(BigInt::from(u8::from(g == h))));
    }
    Ok(BigRational::new(
        BigInt::from(transition_count(g, h)),
        BigInt::from(q),
    ))
}

/// Maps a rank in `0..C(n,2)` to the pair `(i, j)`, `i < j`, in
/// lexicographic order.
fn unrank_pair(n: usize, mut r: u64) -> (usize, usize) {
    for i in 0..n {
        let row = (n - 1 - i) as u64;
        if r < row {
            return (i, i + 1 + r as usize);
        }
        r -= row;
    }
    unreachable!("rank out of range")
}

/// A realization together with the generator driving the chain.
#[derive(Debug, Clone)]
pub struct ChainState {
    graph: BipartiteGraph,
    rng: ChaCha8Rng,
}

impl ChainState {
    pub fn new(graph: BipartiteGraph, seed: u64) -> Self {
        Self::with_stream(graph, seed, 0)
    }

    /// Independent chains share a seed and differ in `stream`.
    pub fn with_stream(graph: BipartiteGraph, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        ChainState { graph, rng }
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn into_graph(self) -> BipartiteGraph {
        self.graph
    }

    /// One transition: draws two `U`-vertices and two `V`-vertices
    /// uniformly and swaps if allowed. Returns the swap when one happened.
    pub fn step(&mut self) -> Option<Swap> {
        let (k, l) = (self.graph.k(), self.graph.l());
        let q = draw_count(k, l);
        if q == 0 {
            return None;
        }
        let r = self.rng.random_range(0..q);
        let per_u = choose2(l);
        let (u1, u2) = unrank_pair(k, r / per_u);
        let (v1, v2) = unrank_pair(l, r % per_u);
        let s = self.graph.swap_at(u1, u2, v1, v2)?;
        self.graph.apply_swap_mut(&s).expect("swap_at only returns allowed swaps");
        Some(s)
    }

    pub fn run(&mut self, steps: u64) {
        for _ in 0..steps {
            self.step();
        }
    }
}

/// Greedy realization followed by `steps` transitions.
pub fn sample(ds: &BipartiteDegreeSequence, steps: u64, seed: u64) -> Result<BipartiteGraph> {
    let mut st = ChainState::new(greedy_realize(ds)?, seed);
    st.run(steps);
    Ok(st.into_graph())
}

/// `count` independent samples; sample `i` runs on stream `i`, so the first
/// one coincides with [`sample`].
pub fn sample_many(
    ds: &BipartiteDegreeSequence,
    steps: u64,
    seed: u64,
    count: usize,
) -> Result<Vec<BipartiteGraph>> {
    let start = greedy_realize(ds)?;
    Ok((0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut st = ChainState::with_stream(start.clone(), seed, i);
            st.run(steps);
            st.into_graph()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unrank_covers_all_pairs_in_order() {
        let pairs: Vec<_> = (0..choose2(4)).map(|r| unrank_pair(4, r)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn two_matchings_flip_deterministically() {
        let x = BipartiteGraph::from_rows(&[[1u8, 0], [0, 1]]).unwrap();
        let y = BipartiteGraph::from_rows(&[[0u8, 1], [1, 0]]).unwrap();
        let one = BigRational::from_integer(1.into());
        assert_eq!(transition_prob(&x, &y).unwrap(), one);
        assert_eq!(transition_prob(&x, &x).unwrap(), BigRational::from_integer(0.into()));
        let mut st = ChainState::new(x.clone(), 7);
        for i in 0..10 {
            st.step();
            assert_eq!(st.graph(), if i % 2 == 0 { &y } else { &x });
        }
    }

    #[test]
    fn complete_graph_never_moves() {
        let g = BipartiteGraph::from_rows(&[[1u8, 1], [1, 1]]).unwrap();
        let mut st = ChainState::new(g.clone(), 1);
        st.run(50);
        assert_eq!(st.graph(), &g);
    }

    #[test]
    fn three_by_three_single_swap_probability() {
        let x = BipartiteGraph::from_rows(&[[1u8, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let s = x.allowed_swaps()[0];
        let y = x.apply_swap(&s).unwrap();
        assert_eq!(
            transition_prob(&x, &y).unwrap(),
            BigRational::new(1.into(), 9.into())
        );
        assert_eq!(connecting_swap(&x, &y), Some(s));
    }

    #[test]
    fn zero_steps_returns_greedy_and_seeds_repeat() {
        let ds: BipartiteDegreeSequence = "2 2 2\n3 2 1\n".parse().unwrap();
        assert_eq!(sample(&ds, 0, 3).unwrap(), greedy_realize(&ds).unwrap());
        assert_eq!(sample(&ds, 100, 3).unwrap(), sample(&ds, 100, 3).unwrap());
        let many = sample_many(&ds, 100, 3, 4).unwrap();
        assert_eq!(many[0], sample(&ds, 100, 3).unwrap());
    }
}
