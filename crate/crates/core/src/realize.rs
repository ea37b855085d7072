//! Graphicality, greedy realization and the push-up operation.

use crate::degree::BipartiteDegreeSequence;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Swap};

/// Whether `ds` has a simple bipartite realization, decided by running the
/// greedy construction to completion.
pub fn is_graphical(ds: &BipartiteDegreeSequence) -> bool {
    greedy_realize(ds).is_ok()
}

/// Builds a realization of `ds`: `U`-vertex `i` gets degree `a[i]` and
/// `V`-vertex `j` degree `b[j]`.
///
/// `V`-vertices are processed in non-increasing degree order; each is joined
/// to the `U`-vertices with the largest residual demand, ties going to the
/// lowest index.
pub fn greedy_realize(ds: &BipartiteDegreeSequence) -> Result<BipartiteGraph> {
    let (sa, sb) = ds.sums();
    if sa != sb {
        return Err(Error::NotGraphical("degree sums differ".into()));
    }
    let (k, l) = (ds.k(), ds.l());
    let mut residual = ds.a().to_vec();
    let mut g = BipartiteGraph::empty(k, l);
    let mut order: Vec<usize> = (0..k).collect();
    for (v, &d) in ds.b().iter().enumerate() {
        order.sort_by(|&x, &y| residual[y].cmp(&residual[x]).then(x.cmp(&y)));
        if d > 0 && residual[order[d - 1]] == 0 {
            return Err(Error::NotGraphical(format!(
                "V-vertex {v} cannot find {d} U-vertices with remaining demand"
            )));
        }
        for &u in &order[..d] {
            residual[u] -= 1;
            g.insert(u, v);
        }
    }
    Ok(g)
}

/// `U`-vertices sorted by degree (descending), ties by index, where the
/// degree counts only edges into `active` columns.
pub(crate) fn u_order(g: &BipartiteGraph, active: &[bool]) -> Vec<usize> {
    let deg: Vec<usize> = (0..g.k())
        .map(|u| (0..g.l()).filter(|&v| active[v] && g.has_edge(u, v)).count())
        .collect();
    let mut order: Vec<usize> = (0..g.k()).collect();
    order.sort_by(|&x, &y| deg[y].cmp(&deg[x]).then(x.cmp(&y)));
    order
}

/// Push-up restricted to the columns flagged in `active`; mutates `g` and
/// returns the swaps applied.
pub(crate) fn push_up_within(g: &mut BipartiteGraph, v: usize, active: &[bool]) -> Vec<Swap> {
    let order = u_order(g, active);
    let d = g.col_degrees()[v];
    let (top, rest) = order.split_at(d);
    let mut swaps = Vec::new();
    for &u in top {
        if g.has_edge(u, v) {
            continue;
        }
        let u_low = *rest
            .iter()
            .find(|&&w| g.has_edge(w, v))
            .expect("a top vertex is missing, so a lower one holds the edge");
        let v_alt = (0..g.l())
            .find(|&w| active[w] && w != v && g.has_edge(u, w) && !g.has_edge(u_low, w))
            .expect("pigeonhole guarantees a witness column");
        let s = g
            .swap_at(u, u_low, v, v_alt)
            .expect("the 2x2 submatrix is a 1-factor by construction");
        g.apply_swap_mut(&s).expect("swap checked above");
        swaps.push(s);
    }
    swaps
}

/// Rewires `g` so that `v` becomes adjacent exactly to the `d(v)`
/// highest-degree `U`-vertices (ties by index), using at most `d(v)` swaps.
pub fn push_up(g: &BipartiteGraph, v: usize) -> Result<(BipartiteGraph, Vec<Swap>)> {
    if v >= g.l() {
        return Err(Error::OutOfRange(format!("V-vertex {v} in a graph with {} columns", g.l())));
    }
    let mut h = g.clone();
    let swaps = push_up_within(&mut h, v, &vec![true; g.l()]);
    Ok((h, swaps))
}
