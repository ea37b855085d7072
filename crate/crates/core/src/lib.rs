//! Realization, uniform sampling and canonical-path certification for
//! bipartite degree sequences under the swap Markov chain.
//!
//! Vertices of class `U` index the rows of the biadjacency matrix and
//! vertices of class `V` its columns; all indices are zero-based.

pub mod canonical;
pub mod chain;
pub mod cycles;
pub mod degree;
pub mod error;
pub mod graph;
pub mod lab;
pub mod realize;
pub mod ryser;

pub use degree::BipartiteDegreeSequence;
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Diagonal, Edge, EdgePartition, Swap};
pub use realize::{greedy_realize, is_graphical, push_up};
pub use ryser::{ryser_sequence, swap_distance, CappedDistance};
pub use chain::{sample, sample_many, transition_prob, ChainState};
pub use cycles::{
    all_pairings, circuits_of, cycles_of, pairing_count, random_pairing, AlternatingCycle,
    Circuit, CircuitDecomposition, Pairing, Vertex,
};
pub use canonical::{canonical_path, certify, path_distribution, switch_distance, CanonicalPath};
pub use lab::{build_kernel, congestion, enumerate_states, spectral_gap, tv_mixing_time, StateSpace, TransitionMatrix};
