//! Exact desk-scale analysis of the swap chain: the full state space, the
//! transition matrix, its spectrum, total-variation mixing times and the
//! congestion of the canonical path system.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::canonical::{canonical_path, hat_matrix, switch_distance};
use crate::chain::draw_count;
use crate::cycles::{all_pairings, pairing_count};
use crate::degree::BipartiteDegreeSequence;
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::realize::greedy_realize;
use crate::ryser::CappedDistance;

/// Largest state space [`enumerate_states`] builds.
pub const MAX_STATES: usize = 2000;
/// Largest state space [`congestion`] evaluates.
pub const MAX_CONGESTION_STATES: usize = 100;
/// State spaces up to this size get exact rational TV distances.
pub const MAX_EXACT_TV_STATES: usize = 40;
/// Matrices with at most this many cells are cross-checked by brute force.
pub const BRUTE_FORCE_CELLS: usize = 20;
/// [`tv_mixing_time`] gives up after this many steps.
pub const MAX_TV_STEPS: usize = 100_000;

/// Every realization of a degree sequence, sorted by the row-major bit
/// string.
#[derive(Debug, Clone)]
pub struct StateSpace {
    ds: BipartiteDegreeSequence,
    states: Vec<BipartiteGraph>,
    index: HashMap<Vec<u8>, usize>,
}

impl StateSpace {
    pub fn degree_sequence(&self) -> &BipartiteDegreeSequence {
        &self.ds
    }

    pub fn states(&self) -> &[BipartiteGraph] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, g: &BipartiteGraph) -> Option<usize> {
        self.index.get(g.bits()).copied()
    }
}

/// Breadth-first search over allowed swaps from the greedy realization.
/// For at most [`BRUTE_FORCE_CELLS`] cells the result is compared with a
/// scan of all 0-1 matrices.
pub fn enumerate_states(ds: &BipartiteDegreeSequence) -> Result<StateSpace> {
    enumerate_states_within(ds, MAX_STATES)
}

pub fn enumerate_states_within(ds: &BipartiteDegreeSequence, limit: usize) -> Result<StateSpace> {
    let start = greedy_realize(ds)?;
    let mut index = HashMap::from([(start.bits().to_vec(), 0usize)]);
    let mut states = vec![start];
    let mut head = 0;
    while head < states.len() {
        let g = states[head].clone();
        head += 1;
        for s in g.allowed_swaps() {
            let h = g.apply_swap(&s)?;
            if !index.contains_key(h.bits()) {
                if states.len() == limit {
                    return Err(Error::TooLarge { what: "states", threshold: limit });
                }
                index.insert(h.bits().to_vec(), states.len());
                states.push(h);
            }
        }
    }
    states.sort();
    let index = states.iter().enumerate().map(|(i, g)| (g.bits().to_vec(), i)).collect();
    let space = StateSpace { ds: ds.clone(), states, index };
    if ds.k() * ds.l() <= BRUTE_FORCE_CELLS {
        let brute = brute_force_states(ds)?;
        if brute != space.states {
            return Err(Error::SpecViolation(format!(
                "swap search found {} states, the matrix scan {}",
                space.len(),
                brute.len()
            )));
        }
    }
    Ok(space)
}

/// All 0-1 matrices with the margins of `ds`, by scanning every matrix.
pub fn brute_force_states(ds: &BipartiteDegreeSequence) -> Result<Vec<BipartiteGraph>> {
    let (k, l) = (ds.k(), ds.l());
    if k * l > 24 {
        return Err(Error::TooLarge { what: "matrix cells for a brute-force scan", threshold: 24 });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << (k * l)) {
        let rows_ok = (0..k).all(|i| ((mask >> (i * l)) & ((1 << l) - 1)).count_ones() as usize == ds.a()[i]);
        if !rows_ok {
            continue;
        }
        let cols_ok = (0..l).all(|j| (0..k).filter(|&i| mask >> (i * l + j) & 1 == 1).count() == ds.b()[j]);
        if cols_ok {
            let rows: Vec<Vec<u8>> = (0..k)
                .map(|i| (0..l).map(|j| (mask >> (i * l + j) & 1) as u8).collect())
                .collect();
            out.push(BipartiteGraph::from_rows(&rows)?);
        }
    }
    out.sort();
    Ok(out)
}

/// The transition matrix as integer counts over the common denominator
/// `q = C(k,2) C(l,2)` (or `q = 1` for a frozen chain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    n: usize,
    q: u64,
    counts: Vec<u64>,
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn denominator(&self) -> u64 {
        self.q
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.n + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(BigInt::from(self.count(i, j)), BigInt::from(self.q))
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        let q = self.q as f64;
        DMatrix::from_fn(self.n, self.n, |i, j| self.count(i, j) as f64 / q)
    }

    /// Symmetric, rows summing to one, every off-diagonal entry `0` or
    /// `1/q`.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            let mut row = 0;
            for j in 0..n {
                let c = self.count(i, j);
                if c != self.count(j, i) {
                    return Err(Error::SpecViolation(format!("kernel not symmetric at ({i}, {j})")));
                }
                if i != j && c > 1 {
                    return Err(Error::SpecViolation(format!("off-diagonal count {c} at ({i}, {j})")));
                }
                row += c;
            }
            if row != self.q {
                return Err(Error::SpecViolation(format!("row {i} sums to {row}/{}", self.q)));
            }
        }
        Ok(())
    }
}

pub fn build_kernel(space: &StateSpace) -> Result<TransitionMatrix> {
    let n = space.len();
    let (k, l) = (space.ds.k(), space.ds.l());
    let q = draw_count(k, l).max(1);
    let mut counts = vec![0u64; n * n];
    for (i, g) in space.states.iter().enumerate() {
        let mut moves = 0;
        for s in g.allowed_swaps() {
            let j = space.index_of(&g.apply_swap(&s)?).ok_or_else(|| {
                Error::SpecViolation("a swap left the enumerated state space".into())
            })?;
            counts[i * n + j] += 1;
            moves += 1;
        }
        counts[i * n + i] += q - moves;
    }
    let kernel = TransitionMatrix { n, q, counts };
    kernel.check_laws()?;
    Ok(kernel)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGap {
    /// Second largest distinct eigenvalue.
    pub lambda2: f64,
    pub tau_rel: f64,
    /// All eigenvalues, non-increasing.
    pub eigenvalues: Vec<f64>,
    /// Largest `|P v - lambda v|` over the computed eigenpairs.
    pub residual: f64,
}

/// Eigenvalues closer than this count as one.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-9;

pub fn spectral_gap(p: &TransitionMatrix) -> Result<SpectralGap> {
    if p.n < 2 {
        return Err(Error::DegenerateChain("a single state has no spectral gap".into()));
    }
    if p.n > MAX_STATES {
        return Err(Error::TooLarge { what: "states for the eigensolve", threshold: MAX_STATES });
    }
    let m = p.to_f64();
    let eig = SymmetricEigen::new(m.clone());
    let mut residual: f64 = 0.0;
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        residual = residual.max((&m * v - v * lambda).norm());
    }
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let top = eigenvalues[0];
    let lambda2 = eigenvalues
        .iter()
        .copied()
        .find(|&x| x < top - EIGEN_CLUSTER_TOL)
        .ok_or_else(|| Error::DegenerateChain("all eigenvalues equal".into()))?;
    if lambda2 > 1.0 - EIGEN_CLUSTER_TOL {
        return Err(Error::DegenerateChain(format!("second eigenvalue {lambda2} is 1")));
    }
    Ok(SpectralGap { lambda2, tau_rel: 1.0 / (1.0 - lambda2), eigenvalues, residual })
}

/// Smallest `t` with `max_x || P^t(x, .) - uniform ||_TV <= eps`.
pub fn tv_mixing_time(p: &TransitionMatrix, eps: f64) -> Result<usize> {
    if p.n == 0 {
        return Ok(0);
    }
    if p.n <= MAX_EXACT_TV_STATES {
        tv_exact(p, eps)
    } else {
        tv_float(p, eps)
    }
}

fn tv_exact(p: &TransitionMatrix, eps: f64) -> Result<usize> {
    let n = p.n;
    let eps = BigRational::from_float(eps)
        .ok_or_else(|| Error::Parse("epsilon must be finite".into()))?;
    let base: Vec<BigUint> = p.counts.iter().map(|&c| BigUint::from(c)).collect();
    let mut pow: Vec<BigUint> = (0..n * n).map(|c| BigUint::from(u8::from(c / n == c % n))).collect();
    let mut denom = BigUint::one();
    let mut prev: Option<BigRational> = None;
    for t in 0..=MAX_TV_STEPS {
        // TV of row x: sum_y |N c_xy - d| / (2 N d)
        let nd = BigInt::from(denom.clone()) * BigInt::from(n);
        let worst = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (BigInt::from(pow[x * n + y].clone()) * BigInt::from(n) - BigInt::from(denom.clone())).magnitude().clone())
                    .fold(BigUint::zero(), |a, b| a + b)
            })
            .max()
            .expect("at least one state");
        let d = BigRational::new(BigInt::from(worst), nd * BigInt::from(2));
        if d <= eps {
            return Ok(t);
        }
        if let Some(pr) = &prev {
            if &d > pr {
                return Err(Error::SpecViolation("TV distance increased".into()));
            }
            if &d == pr && t > 1 {
                return Err(Error::NonMixing(format!("TV distance stuck at {d}")));
            }
        }
        prev = Some(d);
        pow = (0..n * n)
            .into_par_iter()
            .map(|c| {
                let (x, y) = (c / n, c % n);
                (0..n)
                    .filter(|&z| p.counts[z * n + y] != 0)
                    .map(|z| &pow[x * n + z] * &base[z * n + y])
                    .fold(BigUint::zero(), |a, b| a + b)
            })
            .collect();
        denom *= BigUint::from(p.q);
        let g = pow.iter().fold(denom.clone(), |a, b| a.gcd(b));
        if g > BigUint::one() {
            pow.iter_mut().for_each(|v| *v /= &g);
            denom /= &g;
        }
    }
    Err(Error::NonMixing(format!("no mixing within {MAX_TV_STEPS} steps")))
}

fn tv_float(p: &TransitionMatrix, eps: f64) -> Result<usize> {
    let n = p.n;
    let m = p.to_f64();
    let mut pow = DMatrix::<f64>::identity(n, n);
    let u = 1.0 / n as f64;
    let mut prev = f64::INFINITY;
    for t in 0..=MAX_TV_STEPS {
        let d = (0..n)
            .map(|x| 0.5 * (0..n).map(|y| (pow[(x, y)] - u).abs()).sum::<f64>())
            .fold(0.0, f64::max);
        if d <= eps {
            return Ok(t);
        }
        if d > prev + 1e-12 {
            return Err(Error::SpecViolation("TV distance increased".into()));
        }
        if t > 1 && (prev - d).abs() < 1e-15 {
            return Err(Error::NonMixing(format!("TV distance stuck at {d}")));
        }
        prev = d;
        pow = &pow * &m;
    }
    Err(Error::NonMixing(format!("no mixing within {MAX_TV_STEPS} steps")))
}

/// Congestion of the canonical path system over all ordered pairs of
/// distinct states, with the uniform stationary distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct Congestion {
    /// `kappa = (q / N) max_e sum pi_xy(gamma) |gamma|`, summed over paths
    /// through the edge `e`.
    pub kappa: BigRational,
    /// The most loaded Markov-graph edge, as state indices.
    pub max_edge: (usize, usize),
    /// `max_e sum pi_xy(gamma)` over paths through `e`.
    pub max_flow: BigRational,
    /// The bound with every path length replaced by the longest one,
    /// `(q / N) L max_flow`.
    pub simplified: BigRational,
    pub longest_path: usize,
}

pub fn congestion(space: &StateSpace, kernel: &TransitionMatrix) -> Result<Congestion> {
    let n = space.len();
    if n > MAX_CONGESTION_STATES {
        return Err(Error::TooLarge { what: "states for the congestion", threshold: MAX_CONGESTION_STATES });
    }
    if n < 2 {
        return Err(Error::DegenerateChain("a single state has no edges".into()));
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    type Load = BTreeMap<(usize, usize), (BigRational, BigRational)>;
    let per_pair: Vec<Result<(Load, usize)>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let (gx, gy) = (&space.states[x], &space.states[y]);
            let total = pairing_count(gx, gy)?;
            if total > BigUint::from(crate::canonical::MAX_PAIRINGS) {
                return Err(Error::TooManyPairings {
                    count: total.to_string(),
                    threshold: crate::canonical::MAX_PAIRINGS,
                });
            }
            let total = BigInt::from(total);
            let mut load: Load = BTreeMap::new();
            let mut longest = 0;
            for s in all_pairings(gx, gy)? {
                let path = canonical_path(gx, gy, &s)?;
                let len = path.len();
                longest = longest.max(len);
                let ids: Vec<usize> = path
                    .states()?
                    .iter()
                    .map(|g| space.index_of(g).expect("states stay realizations"))
                    .collect();
                let mut edges: Vec<(usize, usize)> =
                    ids.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
                edges.sort_unstable();
                edges.dedup();
                let w = BigRational::new(BigInt::one(), total.clone());
                let wl = &w * BigInt::from(len);
                for e in edges {
                    let slot = load.entry(e).or_insert_with(|| (BigRational::zero(), BigRational::zero()));
                    slot.0 += &wl;
                    slot.1 += &w;
                }
            }
            Ok((load, longest))
        })
        .collect();
    let mut total: Load = BTreeMap::new();
    let mut longest = 0;
    for r in per_pair {
        let (load, l) = r?;
        longest = longest.max(l);
        for (e, (a, b)) in load {
            let slot = total.entry(e).or_insert_with(|| (BigRational::zero(), BigRational::zero()));
            slot.0 += a;
            slot.1 += b;
        }
    }
    let (&max_edge, (max_len_load, _)) = total
        .iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.0.cmp(a.0)))
        .ok_or_else(|| Error::DegenerateChain("no path uses any edge".into()))?;
    let max_flow = total.values().map(|v| v.1.clone()).max().expect("non-empty");
    let scale = BigRational::new(BigInt::from(kernel.q), BigInt::from(n));
    Ok(Congestion {
        kappa: &scale * max_len_load,
        max_edge,
        simplified: &scale * BigInt::from(longest) * &max_flow,
        max_flow,
        longest_path: longest,
    })
}

/// Largest hat-matrix switch distance met along any canonical path between
/// two states of the space.
pub fn max_hat_switch_distance(space: &StateSpace, cap: usize) -> Result<CappedDistance> {
    let n = space.len();
    if n > MAX_CONGESTION_STATES {
        return Err(Error::TooLarge { what: "states for path certification", threshold: MAX_CONGESTION_STATES });
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let worst: Vec<Result<usize>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let (gx, gy) = (&space.states[x], &space.states[y]);
            let mut worst = 0;
            for s in all_pairings(gx, gy)? {
                for z in canonical_path(gx, gy, &s)?.states()? {
                    match switch_distance(&hat_matrix(gx, gy, &z)?, cap)? {
                        CappedDistance::Exact(d) => worst = worst.max(d),
                        CappedDistance::Exceeds(_) => return Ok(cap + 1),
                    }
                }
            }
            Ok(worst)
        })
        .collect();
    let mut m = 0;
    for w in worst {
        m = m.max(w?);
    }
    Ok(if m > cap { CappedDistance::Exceeds(cap) } else { CappedDistance::Exact(m) })
}

/// `f64` view of an exact rational, for reports.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
