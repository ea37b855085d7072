//! Python bindings. Graphs cross the boundary as lists of 0/1 rows and
//! swaps as `(u1, u2, v1, v2)` tuples.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use swapmix_core::canonical::{self, DEFAULT_SWITCH_CAP};
use swapmix_core::chain::DEFAULT_SEED;
use swapmix_core::lab;
use swapmix_core::{BipartiteDegreeSequence, BipartiteGraph, CappedDistance, Error, Swap};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(format!("error[{}]: {e}", e.code()))
}

fn sequence(a: Vec<usize>, b: Vec<usize>) -> PyResult<BipartiteDegreeSequence> {
    BipartiteDegreeSequence::from_unsorted(a, b).map_err(py_err)
}

fn graph(rows: Vec<Vec<u8>>) -> PyResult<BipartiteGraph> {
    BipartiteGraph::from_rows(&rows).map_err(py_err)
}

fn rows(g: &BipartiteGraph) -> Vec<Vec<u8>> {
    (0..g.k()).map(|u| (0..g.l()).map(|v| g.entry(u, v)).collect()).collect()
}

type SwapTuple = (usize, usize, usize, usize);

fn swaps(s: &[Swap]) -> Vec<SwapTuple> {
    s.iter().map(|s| (s.u1, s.u2, s.v1, s.v2)).collect()
}

fn capped(d: CappedDistance) -> Option<usize> {
    d.exact()
}

/// Whether the degree lists `a` (rows) and `b` (columns) are realizable.
#[pyfunction]
fn is_graphical(a: Vec<usize>, b: Vec<usize>) -> PyResult<bool> {
    Ok(swapmix_core::is_graphical(&sequence(a, b)?))
}

/// Greedy realization of the sorted degree lists.
#[pyfunction]
fn realize(a: Vec<usize>, b: Vec<usize>) -> PyResult<Vec<Vec<u8>>> {
    swapmix_core::greedy_realize(&sequence(a, b)?).map(|g| rows(&g)).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (a, b, steps, seed = DEFAULT_SEED, count = 1))]
fn sample(a: Vec<usize>, b: Vec<usize>, steps: u64, seed: u64, count: usize) -> PyResult<Vec<Vec<Vec<u8>>>> {
    let ds = sequence(a, b)?;
    let out = swapmix_core::sample_many(&ds, steps, seed, count).map_err(py_err)?;
    Ok(out.iter().map(rows).collect())
}

/// Swaps turning `g1` into `g2`, at most twice the edge count.
#[pyfunction]
fn ryser_sequence(g1: Vec<Vec<u8>>, g2: Vec<Vec<u8>>) -> PyResult<Vec<SwapTuple>> {
    let s = swapmix_core::ryser_sequence(&graph(g1)?, &graph(g2)?).map_err(py_err)?;
    Ok(swaps(&s))
}

/// Exact swap distance, or `None` beyond `cap`.
#[pyfunction]
#[pyo3(signature = (g1, g2, cap = 8))]
fn swap_distance(g1: Vec<Vec<u8>>, g2: Vec<Vec<u8>>, cap: usize) -> PyResult<Option<usize>> {
    let d = swapmix_core::swap_distance(&graph(g1)?, &graph(g2)?, cap).map_err(py_err)?;
    Ok(capped(d))
}

/// The canonical path for a seeded random pairing, with the hat-matrix
/// switch distance at each state (`None` where the search gave up).
#[pyfunction]
#[pyo3(signature = (x, y, seed = DEFAULT_SEED))]
fn canonical_path(
    x: Vec<Vec<u8>>,
    y: Vec<Vec<u8>>,
    seed: u64,
) -> PyResult<(Vec<SwapTuple>, Vec<Option<usize>>)> {
    let (x, y) = (graph(x)?, graph(y)?);
    let s = swapmix_core::random_pairing(&x, &y, seed).map_err(py_err)?;
    let path = canonical::canonical_path(&x, &y, &s).map_err(py_err)?;
    let cert = canonical::certify(&path, &x, &y, DEFAULT_SWITCH_CAP).map_err(py_err)?;
    Ok((swaps(&path.swaps), cert.into_iter().map(capped).collect()))
}

/// Exact chain diagnostics for a small degree sequence.
#[pyfunction]
#[pyo3(signature = (a, b, eps = 0.01))]
fn mix_report<'py>(py: Python<'py>, a: Vec<usize>, b: Vec<usize>, eps: f64) -> PyResult<Bound<'py, PyDict>> {
    let space = lab::enumerate_states(&sequence(a, b)?).map_err(py_err)?;
    let p = lab::build_kernel(&space).map_err(py_err)?;
    let gap = lab::spectral_gap(&p).map_err(py_err)?;
    let tv = match lab::tv_mixing_time(&p, eps) {
        Ok(t) => Some(t),
        Err(Error::NonMixing(_)) => None,
        Err(e) => return Err(py_err(e)),
    };
    let c = lab::congestion(&space, &p).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("n_states", space.len())?;
    d.set_item("lambda2", gap.lambda2)?;
    d.set_item("tau_rel", gap.tau_rel)?;
    d.set_item("tv_mixing_time", tv)?;
    d.set_item("kappa", lab::to_f64(&c.kappa))?;
    d.set_item("max_edge", c.max_edge)?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "swapmix")]
fn swapmix_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(is_graphical, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(ryser_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(swap_distance, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_path, m)?)?;
    m.add_function(wrap_pyfunction!(mix_report, m)?)?;
    Ok(())
}
