//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swapmix::canonical::{offset, CycleFrame, FMatrix, Pos};
use swapmix::{AlternatingCycle, BipartiteDegreeSequence, BipartiteGraph, Swap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ds(a: &[usize], b: &[usize]) -> BipartiteDegreeSequence {
    BipartiteDegreeSequence::from_unsorted(a.to_vec(), b.to_vec()).unwrap()
}

/// Every 0-1 matrix with the given margins, by scanning all matrices.
pub fn brute_count(a: &[usize], b: &[usize]) -> usize {
    let (k, l) = (a.len(), b.len());
    (0u32..1 << (k * l))
        .filter(|&m| {
            (0..k).all(|i| (0..l).filter(|&j| m >> (i * l + j) & 1 == 1).count() == a[i])
                && (0..l).all(|j| (0..k).filter(|&i| m >> (i * l + j) & 1 == 1).count() == b[j])
        })
        .count()
}

/// Non-increasing lists of length `n` with entries in `0..=max`.
pub fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in partitions(n - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A graph holding one alternating cycle on `ell` rows and columns, the
/// graph on the other side of the cycle, and an outer pair `(x, y)` that
/// differs from them only away from the cycle.
pub struct CycleInstance {
    pub g: BipartiteGraph,
    pub g2: BipartiteGraph,
    pub x: BipartiteGraph,
    pub y: BipartiteGraph,
    pub cycle: AlternatingCycle,
}

pub fn cycle_instance(ell: usize, extra: usize, density: f64, rng: &mut ChaCha8Rng) -> CycleInstance {
    cycle_instance_with(ell, extra, density, &|_, _| None, rng)
}

/// As [`cycle_instance`], with the chord at each frame position forced to
/// `chord_type(position, rng)` when that returns a value.
pub fn cycle_instance_with(
    ell: usize,
    extra: usize,
    density: f64,
    chord_type: &dyn Fn(Pos, &mut ChaCha8Rng) -> Option<bool>,
    rng: &mut ChaCha8Rng,
) -> CycleInstance {
    let n = ell + extra;
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    let (us, vs) = (rows[..ell].to_vec(), cols[..ell].to_vec());
    let mut cells = vec![vec![0u8; n]; n];
    for row in cells.iter_mut() {
        for c in row.iter_mut() {
            *c = u8::from(rng.random_bool(density));
        }
    }
    let mut cycle_cells = Vec::new();
    for i in 0..ell {
        cells[us[i]][vs[i]] = 1;
        cells[us[(i + 1) % ell]][vs[i]] = 0;
        cycle_cells.push((us[i], vs[i]));
        cycle_cells.push((us[(i + 1) % ell], vs[i]));
    }
    let cycle = AlternatingCycle::new(us, vs).unwrap();
    let frame = CycleFrame::new(&cycle, &BipartiteGraph::from_rows(&cells).unwrap()).unwrap();
    for i in 0..ell {
        for j in 0..ell {
            if offset((i, j), ell) >= 2 {
                if let Some(t) = chord_type((i, j), rng) {
                    let (u, v) = frame.edge((i, j));
                    cells[u][v] = u8::from(t);
                }
            }
        }
    }
    let g = BipartiteGraph::from_rows(&cells).unwrap();
    let mut c2 = cells.clone();
    for &(u, v) in &cycle_cells {
        c2[u][v] ^= 1;
    }
    let g2 = BipartiteGraph::from_rows(&c2).unwrap();
    let mut banned: std::collections::BTreeSet<(usize, usize)> = cycle_cells.iter().copied().collect();
    let x = random_walk_avoiding(&g, &mut banned, rng.random_range(0..6), rng);
    let y = random_walk_avoiding(&g2, &mut banned, rng.random_range(0..6), rng);
    CycleInstance { g, g2, x, y, cycle }
}

/// Random allowed swaps that never touch `banned`; the touched cells are
/// added to `banned`.
fn random_walk_avoiding(
    g: &BipartiteGraph,
    banned: &mut std::collections::BTreeSet<(usize, usize)>,
    steps: usize,
    rng: &mut ChaCha8Rng,
) -> BipartiteGraph {
    let mut cur = g.clone();
    let mut touched = Vec::new();
    for _ in 0..steps {
        let options: Vec<Swap> = cur
            .allowed_swaps()
            .into_iter()
            .filter(|s| s.cells().iter().all(|c| !banned.contains(c)))
            .collect();
        let Some(s) = options.choose(rng) else { break };
        cur = cur.apply_swap(s).unwrap();
        touched.extend(s.cells());
    }
    banned.extend(touched);
    cur
}

/// Uniformly random chord types.
pub fn random_fmatrix(ell: usize, rng: &mut ChaCha8Rng) -> FMatrix {
    let types: Vec<bool> = (0..ell * ell).map(|_| rng.random()).collect();
    FMatrix::from_types(ell, &types).unwrap()
}

/// Chord type rule of [`layered_fmatrix`], for a frame of size `ell`.
pub fn layered_rule(ell: usize, t: bool) -> impl Fn(Pos, &mut ChaCha8Rng) -> Option<bool> {
    move |p, _| match offset(p, ell) {
        2 => Some(t),
        d if d + 2 >= ell => Some(!t),
        _ => None,
    }
}

/// Random chord types, except that the offset-2 layer has one type and the
/// layers at offsets `l-2` and `l-1` the other, which leaves the offset-2
/// layer unfriendly. Needs `l >= 5`.
pub fn layered_fmatrix(ell: usize, rng: &mut ChaCha8Rng) -> FMatrix {
    let t: bool = rng.random();
    let types: Vec<bool> = (0..ell * ell)
        .map(|c| match offset((c / ell, c % ell), ell) {
            2 => t,
            d if d + 2 >= ell => !t,
            _ => rng.random(),
        })
        .collect();
    FMatrix::from_types(ell, &types).unwrap()
}

fn is_chord(p: Pos, ell: usize) -> bool {
    let d = offset(p, ell);
    d >= 2
}

/// Cousins straight from the index window: rows `j-1, j`, columns `i, i+1`.
fn oracle_cousins(p: Pos, ell: usize) -> Vec<Pos> {
    let (i, j) = p;
    let mut out = Vec::new();
    for r in [(j + ell - 1) % ell, j] {
        for c in [i, (i + 1) % ell] {
            if is_chord((r, c), ell) && (r, c) != p {
                out.push((r, c));
            }
        }
    }
    out
}

pub fn oracle_friendly(f: &FMatrix, p: Pos) -> bool {
    let t = f.get(p) >= 2;
    oracle_cousins(p, f.ell()).iter().any(|&c| (f.get(c) >= 2) == t)
}

fn rook_steps(p: Pos, ell: usize) -> Vec<Pos> {
    let (i, j) = p;
    vec![((i + 1) % ell, j), ((i + ell - 1) % ell, j), (i, (j + 1) % ell), (i, (j + ell - 1) % ell)]
}

/// Depth-first search through chords accepted by `allowed`, from the
/// offset-`(l-1)` layer; true when it reaches the offset-2 layer.
pub fn oracle_path_exists(f: &FMatrix, allowed: &dyn Fn(Pos) -> bool) -> bool {
    let ell = f.ell();
    let mut on_path = vec![false; ell * ell];
    let mut dead = vec![false; ell * ell];
    fn dfs(
        p: Pos,
        ell: usize,
        allowed: &dyn Fn(Pos) -> bool,
        on_path: &mut [bool],
        dead: &mut [bool],
    ) -> bool {
        if offset(p, ell) == 2 {
            return true;
        }
        on_path[p.0 * ell + p.1] = true;
        for n in rook_steps(p, ell) {
            let c = n.0 * ell + n.1;
            if is_chord(n, ell) && allowed(n) && !on_path[c] && !dead[c] && dfs(n, ell, allowed, on_path, dead) {
                return true;
            }
        }
        on_path[p.0 * ell + p.1] = false;
        dead[p.0 * ell + p.1] = true;
        false
    }
    (0..ell)
        .map(|i| (i, (i + ell - 1) % ell))
        .filter(|&p| is_chord(p, ell) && allowed(p))
        .any(|p| dfs(p, ell, allowed, &mut on_path, &mut dead))
}

/// Checks every defining property of a friendly path against the oracles;
/// returns the first violated one.
pub fn check_friendly_path(f: &FMatrix, path: &swapmix::canonical::FriendlyPath) -> Result<(), String> {
    use swapmix::canonical::position_distance;
    let ell = f.ell();
    let ps = &path.positions;
    if ps.is_empty() {
        return Err("empty path".into());
    }
    let mut seen = std::collections::BTreeSet::new();
    for &p in ps {
        if !is_chord(p, ell) || !seen.insert(p) {
            return Err(format!("{p:?} is not a fresh chord"));
        }
        if !oracle_friendly(f, p) {
            return Err(format!("{p:?} is not friendly"));
        }
    }
    if offset(ps[0], ell) != ell - 1 || offset(*ps.last().unwrap(), ell) != 2 {
        return Err("path does not run between the two layers".into());
    }
    if ps.len() == 1 && ell != 3 {
        return Err("single-chord path outside l = 3".into());
    }
    for w in ps.windows(2) {
        if position_distance(w[0], w[1], ell) != Some(1) {
            return Err(format!("{:?} and {:?} are not neighbours", w[0], w[1]));
        }
    }
    for (&p, &w) in ps.iter().zip(&path.witnesses) {
        if !oracle_cousins(p, ell).contains(&w) || (f.get(w) >= 2) != (f.get(p) >= 2) {
            return Err(format!("{w:?} is not a same-type cousin of {p:?}"));
        }
    }
    Ok(())
}

/// Checks every property of a Steinhaus set against the oracles.
pub fn check_steinhaus(f: &FMatrix, t: &swapmix::canonical::SteinhausSet) -> Result<(), String> {
    use swapmix::canonical::{down_line, up_line};
    let ell = f.ell();
    let cells: std::collections::BTreeSet<Pos> = t.cells.iter().copied().collect();
    if cells.is_empty() {
        return Err("empty set".into());
    }
    if let Some(p) = t.cells.iter().find(|&&p| !is_chord(p, ell) || oracle_friendly(f, p)) {
        return Err(format!("{p:?} is not an unfriendly chord"));
    }
    // king connectivity
    let mut reach = vec![t.cells[0]];
    let mut i = 0;
    while i < reach.len() {
        let (a, b) = reach[i];
        for da in [ell - 1, 0, 1] {
            for db in [ell - 1, 0, 1] {
                let n = ((a + da) % ell, (b + db) % ell);
                if cells.contains(&n) && !reach.contains(&n) {
                    reach.push(n);
                }
            }
        }
        i += 1;
    }
    if reach.len() != cells.len() {
        return Err("not king-connected".into());
    }
    if oracle_path_exists(f, &|p| !cells.contains(&p)) {
        return Err("a rook path avoids the set".into());
    }
    let cousin_set: std::collections::BTreeSet<Pos> =
        t.cells.iter().flat_map(|&p| oracle_cousins(p, ell)).collect();
    if cousin_set.iter().copied().collect::<Vec<_>>() != t.cousin_set {
        return Err("cousin set differs from the oracle".into());
    }
    let ct: std::collections::BTreeSet<bool> = cousin_set.iter().map(|&p| f.get(p) >= 2).collect();
    let tt: std::collections::BTreeSet<bool> = t.cells.iter().map(|&p| f.get(p) >= 2).collect();
    if ct.len() != 1 || tt.len() != 1 || ct == tt {
        return Err(format!("types: set {tt:?}, cousins {ct:?}"));
    }
    for i in 0..ell {
        for (name, line) in [("down", down_line(i, ell)), ("up", up_line(i, ell))] {
            if !line.is_empty() && !line.iter().any(|p| cousin_set.contains(p)) {
                return Err(format!("cousin set misses {name}-line {i}"));
            }
        }
    }
    Ok(())
}

/// A graph built from the bits of `mask`, row-major.
pub fn graph_from_mask(k: usize, l: usize, mask: u64) -> BipartiteGraph {
    let edges: Vec<(usize, usize)> = (0..k * l).filter(|&c| mask >> c & 1 == 1).map(|c| (c / l, c % l)).collect();
    BipartiteGraph::from_edges(k, l, &edges).unwrap()
}

/// `g` after up to `steps` uniformly chosen allowed swaps.
pub fn scramble(g: &BipartiteGraph, steps: usize, rng: &mut ChaCha8Rng) -> BipartiteGraph {
    let mut h = g.clone();
    for _ in 0..steps {
        let moves = h.allowed_swaps();
        match moves.choose(rng) {
            Some(s) => h.apply_swap_mut(s).unwrap(),
            None => break,
        }
    }
    h
}
