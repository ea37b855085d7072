//! Canonical paths between two realizations and their distribution over
//! pairings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cycles::{all_pairings, pairing_count, Pairing};
use crate::error::{Error, Result};
use crate::graph::{check_compatible, BipartiteGraph, Swap};
use crate::ryser::CappedDistance;

use super::along::{path_along_cycle, CycleStats};
use super::fmatrix::hat_matrix;
use super::switch::switch_distance;

/// Largest number of pairings [`path_distribution`] will enumerate.
pub const MAX_PAIRINGS: u64 = 5000;

/// A swap path from `start`, with the indices at which it passes the
/// fixed points `H_0 = X, H_1, ..., H_m = Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPath {
    pub start: BipartiteGraph,
    pub swaps: Vec<Swap>,
    /// `milestones[i]` is the number of swaps applied when `H_i` is reached.
    pub milestones: Vec<usize>,
    pub stats: CycleStats,
}

impl CanonicalPath {
    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// Every state along the path, `start` first.
    pub fn states(&self) -> Result<Vec<BipartiteGraph>> {
        self.start.replay(&self.swaps)
    }
}

/// The path from `x` to `y` determined by the pairing `s`: the alternating
/// cycles of `s` are switched one after the other, each along its own
/// cycle path.
pub fn canonical_path(x: &BipartiteGraph, y: &BipartiteGraph, s: &Pairing) -> Result<CanonicalPath> {
    check_compatible(x, y)?;
    if !s.belongs_to(x, y) {
        return Err(Error::PairingMismatch);
    }
    let mut h = x.clone();
    let mut swaps = Vec::new();
    let mut milestones = vec![0];
    let mut stats = CycleStats::default();
    for cycle in s.decompose().cycles {
        let mut next = h.clone();
        for (u, v) in cycle.edges() {
            next.toggle(u, v);
        }
        let part = path_along_cycle(&h, &next, x, y, &cycle)?;
        swaps.extend(part.swaps);
        stats.merge(part.stats);
        milestones.push(swaps.len());
        h = next;
    }
    debug_assert_eq!(&h, y);
    Ok(CanonicalPath { start: x.clone(), swaps, milestones, stats })
}

/// Switch distance of `hat(X, Y, Z)` for every state `Z` of the path.
pub fn certify(
    path: &CanonicalPath,
    x: &BipartiteGraph,
    y: &BipartiteGraph,
    cap: usize,
) -> Result<Vec<CappedDistance>> {
    path.states()?
        .iter()
        .map(|z| switch_distance(&hat_matrix(x, y, z)?, cap))
        .collect()
}

/// Probability of each canonical path from `x` to `y` when the pairing is
/// drawn uniformly, keyed by the swap sequence.
pub fn path_distribution(x: &BipartiteGraph, y: &BipartiteGraph) -> Result<BTreeMap<Vec<Swap>, BigRational>> {
    let count = pairing_count(x, y)?;
    let total = match count.to_u64() {
        Some(c) if c <= MAX_PAIRINGS => c,
        _ => return Err(Error::TooManyPairings { count: count.to_string(), threshold: MAX_PAIRINGS }),
    };
    let mut tally: BTreeMap<Vec<Swap>, u64> = BTreeMap::new();
    for s in all_pairings(x, y)? {
        *tally.entry(canonical_path(x, y, &s)?.swaps).or_default() += 1;
    }
    Ok(tally
        .into_iter()
        .map(|(p, c)| (p, BigRational::new(BigInt::from(c), BigInt::from(total))))
        .collect())
}
