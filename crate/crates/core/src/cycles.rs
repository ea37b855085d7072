//! Pairings of the symmetric difference and the circuit and alternating
//! cycle decompositions they induce.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Edge};

/// A vertex of either class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    U(usize),
    V(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::U(i) => write!(f, "u{i}"),
            Vertex::V(j) => write!(f, "v{j}"),
        }
    }
}

/// The bijection at one vertex: `x_edges[i]` is paired with
/// `y_edges[perm[i]]`. Both edge lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalPairing {
    pub vertex: Vertex,
    pub x_edges: Vec<Edge>,
    pub y_edges: Vec<Edge>,
    pub perm: Vec<usize>,
}

impl LocalPairing {
    fn image_of_x(&self, e: Edge) -> Edge {
        let i = self.x_edges.binary_search(&e).expect("edge incident to this vertex");
        self.y_edges[self.perm[i]]
    }

    fn preimage_of_y(&self, e: Edge) -> Edge {
        let j = self.y_edges.binary_search(&e).expect("edge incident to this vertex");
        let i = self.perm.iter().position(|&p| p == j).expect("perm is a bijection");
        self.x_edges[i]
    }
}

/// A choice of bijection at every vertex touched by `E(X △ Y)`, listed
/// `U`-vertices first, each class by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    k: usize,
    l: usize,
    locals: Vec<LocalPairing>,
}

fn local_skeletons(x: &BipartiteGraph, y: &BipartiteGraph) -> Result<(Vec<LocalPairing>, usize, usize)> {
    let diff = x.symmetric_difference(y)?;
    let mut out = Vec::new();
    let incident = |w: Vertex, edges: &[Edge]| -> Vec<Edge> {
        edges
            .iter()
            .copied()
            .filter(|&(u, v)| match w {
                Vertex::U(i) => u == i,
                Vertex::V(j) => v == j,
            })
            .collect()
    };
    let vertices = (0..diff.k).map(Vertex::U).chain((0..diff.l).map(Vertex::V));
    for w in vertices {
        let xs = incident(w, &diff.x_edges);
        if xs.is_empty() {
            continue;
        }
        let ys = incident(w, &diff.y_edges);
        debug_assert_eq!(xs.len(), ys.len());
        let perm = (0..xs.len()).collect();
        out.push(LocalPairing { vertex: w, x_edges: xs, y_edges: ys, perm });
    }
    Ok((out, diff.k, diff.l))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Number of pairings, the product of `d_w!` over vertices where `2 d_w` is
/// the symmetric-difference degree.
pub fn pairing_count(x: &BipartiteGraph, y: &BipartiteGraph) -> Result<BigUint> {
    let (locals, _, _) = local_skeletons(x, y)?;
    Ok(locals
        .iter()
        .fold(BigUint::one(), |acc, lp| acc * factorial(lp.x_edges.len())))
}

/// Uniformly random pairing: an independent uniform bijection per vertex.
pub fn random_pairing(x: &BipartiteGraph, y: &BipartiteGraph, seed: u64) -> Result<Pairing> {
    let (mut locals, k, l) = local_skeletons(x, y)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for lp in &mut locals {
        lp.perm.shuffle(&mut rng);
    }
    Ok(Pairing { k, l, locals })
}

/// Every pairing in lexicographic order of the per-vertex permutations,
/// the last vertex varying fastest.
pub fn all_pairings(x: &BipartiteGraph, y: &BipartiteGraph) -> Result<PairingIter> {
    let (locals, k, l) = local_skeletons(x, y)?;
    Ok(PairingIter { next: Some(Pairing { k, l, locals }) })
}

/// Iterator returned by [`all_pairings`].
#[derive(Debug, Clone)]
pub struct PairingIter {
    next: Option<Pairing>,
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        p.reverse();
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("p[i+1] > p[i]");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

impl Iterator for PairingIter {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let advanced = succ
            .locals
            .iter_mut()
            .rev()
            .any(|lp| next_permutation(&mut lp.perm));
        if advanced {
            self.next = Some(succ);
        }
        Some(current)
    }
}

impl Pairing {
    /// The pairing with every local bijection the identity on sorted lists.
    pub fn first(x: &BipartiteGraph, y: &BipartiteGraph) -> Result<Pairing> {
        let (locals, k, l) = local_skeletons(x, y)?;
        Ok(Pairing { k, l, locals })
    }

    /// Builds a pairing from explicit permutations, one per touched vertex
    /// in the order of [`Pairing::locals`].
    pub fn from_perms(x: &BipartiteGraph, y: &BipartiteGraph, perms: Vec<Vec<usize>>) -> Result<Pairing> {
        let (mut locals, k, l) = local_skeletons(x, y)?;
        if perms.len() != locals.len() {
            return Err(Error::PairingMismatch);
        }
        for (lp, p) in locals.iter_mut().zip(perms) {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != lp.perm {
                return Err(Error::PairingMismatch);
            }
            lp.perm = p;
        }
        Ok(Pairing { k, l, locals })
    }

    pub fn locals(&self) -> &[LocalPairing] {
        &self.locals
    }

    /// Whether this pairing was built over `E(X △ Y)` of these graphs.
    pub fn belongs_to(&self, x: &BipartiteGraph, y: &BipartiteGraph) -> bool {
        match local_skeletons(x, y) {
            Ok((locals, k, l)) => {
                k == self.k
                    && l == self.l
                    && locals.len() == self.locals.len()
                    && locals.iter().zip(&self.locals).all(|(a, b)| {
                        a.vertex == b.vertex && a.x_edges == b.x_edges && a.y_edges == b.y_edges
                    })
            }
            Err(_) => false,
        }
    }

    fn local(&self, w: Vertex) -> &LocalPairing {
        let i = self
            .locals
            .binary_search_by(|lp| lp.vertex.cmp(&w))
            .expect("vertex touched by the symmetric difference");
        &self.locals[i]
    }

    /// The union of the local domains, i.e. `E(X △ Y)` split by side.
    pub fn domain(&self) -> (Vec<Edge>, Vec<Edge>) {
        let mut xs: Vec<Edge> = Vec::new();
        let mut ys: Vec<Edge> = Vec::new();
        for lp in &self.locals {
            xs.extend(&lp.x_edges);
            ys.extend(&lp.y_edges);
        }
        xs.sort_unstable();
        xs.dedup();
        ys.sort_unstable();
        ys.dedup();
        (xs, ys)
    }

    /// Circuit and alternating-cycle decompositions induced by the pairing.
    pub fn decompose(&self) -> CircuitDecomposition {
        let circuits = circuits_of(self);
        let mut cycles = Vec::new();
        let mut origin = Vec::new();
        for (i, c) in circuits.iter().enumerate() {
            for cyc in cycles_of(c) {
                cycles.push(cyc);
                origin.push(i);
            }
        }
        CircuitDecomposition { circuits, cycles, origin }
    }
}

/// A closed alternating walk `u_0 v_0 u_1 v_1 ... u_{m-1} v_{m-1}` whose
/// `X`-edges are `(u_i, v_i)` and `Y`-edges `(u_{i+1}, v_i)`; vertices may
/// repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub us: Vec<usize>,
    pub vs: Vec<usize>,
}

impl Circuit {
    /// Number of edges.
    pub fn len(&self) -> usize {
        2 * self.us.len()
    }

    pub fn is_empty(&self) -> bool {
        self.us.is_empty()
    }

    pub fn x_edges(&self) -> Vec<Edge> {
        (0..self.us.len()).map(|i| (self.us[i], self.vs[i])).collect()
    }

    pub fn y_edges(&self) -> Vec<Edge> {
        let m = self.us.len();
        (0..m).map(|i| (self.us[(i + 1) % m], self.vs[i])).collect()
    }

    /// The vertex walk `u_0, v_0, u_1, ...`.
    pub fn walk(&self) -> Vec<Vertex> {
        self.us
            .iter()
            .zip(&self.vs)
            .flat_map(|(&u, &v)| [Vertex::U(u), Vertex::V(v)])
            .collect()
    }
}

/// A simple alternating cycle in the same layout as [`Circuit`], normalized
/// to start at its smallest `X`-edge, traversed from `U` to `V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlternatingCycle {
    us: Vec<usize>,
    vs: Vec<usize>,
}

impl AlternatingCycle {
    /// Validates and normalizes the walk `us[0] vs[0] us[1] ...`.
    pub fn new(us: Vec<usize>, vs: Vec<usize>) -> Result<Self> {
        let m = us.len();
        if m < 2 || vs.len() != m {
            return Err(Error::CycleMismatch(
                "a cycle needs at least two vertices per class, equally many".into(),
            ));
        }
        let distinct = |xs: &[usize]| {
            let mut s = xs.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        if !distinct(&us) || !distinct(&vs) {
            return Err(Error::CycleMismatch("cycle vertices repeat".into()));
        }
        let start = (0..m).min_by_key(|&i| (us[i], vs[i])).expect("m >= 2");
        let rot = |xs: &[usize]| (0..m).map(|i| xs[(start + i) % m]).collect();
        Ok(AlternatingCycle { us: rot(&us), vs: rot(&vs) })
    }

    /// Half the number of edges.
    pub fn half_len(&self) -> usize {
        self.us.len()
    }

    pub fn us(&self) -> &[usize] {
        &self.us
    }

    pub fn vs(&self) -> &[usize] {
        &self.vs
    }

    pub fn x_edges(&self) -> Vec<Edge> {
        (0..self.us.len()).map(|i| (self.us[i], self.vs[i])).collect()
    }

    pub fn y_edges(&self) -> Vec<Edge> {
        let m = self.us.len();
        (0..m).map(|i| (self.us[(i + 1) % m], self.vs[i])).collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut e = self.x_edges();
        e.extend(self.y_edges());
        e
    }

    pub fn walk(&self) -> Vec<Vertex> {
        self.us
            .iter()
            .zip(&self.vs)
            .flat_map(|(&u, &v)| [Vertex::U(u), Vertex::V(v)])
            .collect()
    }
}

impl fmt::Display for AlternatingCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.walk().iter().map(|v| v.to_string()).collect();
        write!(f, "{}", w.join(" "))
    }
}

/// Circuits in construction order, and their refinement into cycles;
/// `origin[i]` is the circuit that cycle `i` came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitDecomposition {
    pub circuits: Vec<Circuit>,
    pub cycles: Vec<AlternatingCycle>,
    pub origin: Vec<usize>,
}

/// Traces the 2-regular auxiliary graph on `E(X △ Y)`: each circuit starts
/// at the smallest unused `X`-edge and leaves it through its `V`-end.
pub fn circuits_of(pairing: &Pairing) -> Vec<Circuit> {
    let (xs, _) = pairing.domain();
    let mut used = vec![false; xs.len()];
    let mut out = Vec::new();
    for start in 0..xs.len() {
        if used[start] {
            continue;
        }
        let (mut us, mut vs) = (Vec::new(), Vec::new());
        let mut e = xs[start];
        loop {
            let i = xs.binary_search(&e).expect("X-edge in domain");
            if used[i] {
                assert_eq!(i, start, "pairing trace must close at its start");
                break;
            }
            used[i] = true;
            us.push(e.0);
            vs.push(e.1);
            let y = pairing.local(Vertex::V(e.1)).image_of_x(e);
            e = pairing.local(Vertex::U(y.0)).preimage_of_y(y);
        }
        out.push(Circuit { us, vs });
    }
    out
}

/// Splits a circuit into simple alternating cycles by walking it and
/// closing a cycle whenever a vertex repeats.
pub fn cycles_of(circuit: &Circuit) -> Vec<AlternatingCycle> {
    let walk = circuit.walk();
    let n = walk.len();
    let mut stack: Vec<Vertex> = Vec::with_capacity(n);
    let mut out = Vec::new();
    for t in 0..=n {
        let w = walk[t % n];
        if let Some(p) = stack.iter().position(|&x| x == w) {
            let seg: Vec<Vertex> = stack.drain(p..).collect();
            out.push(cycle_from_walk(&seg));
        }
        stack.push(w);
    }
    out
}

/// `seg` is a closed walk segment whose edges alternate `X`/`Y` with the
/// `X`-edges traversed from `U` to `V`.
fn cycle_from_walk(seg: &[Vertex]) -> AlternatingCycle {
    let off = usize::from(matches!(seg[0], Vertex::V(_)));
    let m = seg.len() / 2;
    let at = |i: usize| seg[(off + i) % seg.len()];
    let mut us = Vec::with_capacity(m);
    let mut vs = Vec::with_capacity(m);
    for i in 0..m {
        match (at(2 * i), at(2 * i + 1)) {
            (Vertex::U(u), Vertex::V(v)) => {
                us.push(u);
                vs.push(v);
            }
            _ => panic!("circuit lost alternation"),
        }
    }
    AlternatingCycle::new(us, vs).expect("stack split yields simple cycles")
}
