//! Friendly paths, Steinhaus blocking sets and the line patterns used when
//! no friendly path exists.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

use super::fmatrix::{cousins, is_diagonal, king_neighbors, rook_neighbors, FMatrix};
use super::frame::{offset, Pos};

/// Chords `A_1 .. A_L`, rook-adjacent in sequence, all friendly, from the
/// layer next to the main diagonal (offset `l-1`) to the layer next to the
/// small diagonal (offset 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendlyPath {
    pub positions: Vec<Pos>,
    /// Lowest same-type cousin of each position.
    pub witnesses: Vec<Pos>,
}

impl FriendlyPath {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// A path of one chord, possible only when `l = 3`.
    pub fn is_single_chord(&self) -> bool {
        self.positions.len() == 1
    }
}

/// A king-connected set of unfriendly chords meeting every rook path of
/// chords between the two layers, with its cousin set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinhausSet {
    pub cells: Vec<Pos>,
    pub cousin_set: Vec<Pos>,
}

impl SteinhausSet {
    /// The common type of the cells, if they agree.
    pub fn cell_type(&self, f: &FMatrix) -> Option<bool> {
        common_type(f, &self.cells)
    }

    /// The common type of the cousin set, if it agrees.
    pub fn cousin_type(&self, f: &FMatrix) -> Option<bool> {
        common_type(f, &self.cousin_set)
    }
}

fn common_type(f: &FMatrix, cells: &[Pos]) -> Option<bool> {
    let t = f.chord_type(*cells.first()?);
    cells.iter().all(|&p| f.chord_type(p) == t).then_some(t)
}

/// Outcome of the friendly-path search: exactly one of the two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dichotomy {
    Friendly(FriendlyPath),
    Blocked(SteinhausSet),
}

fn chord_cells_with_offset(f: &FMatrix, d: usize) -> Vec<Pos> {
    f.chords().into_iter().filter(|&p| offset(p, f.ell()) == d).collect()
}

/// Rook-step search over friendly chords starting from the offset-`(l-1)`
/// layer; lexicographic order within each layer. Without a path, the
/// boundary of the unreachable side yields a Steinhaus set.
pub fn find_friendly_path(f: &FMatrix) -> Dichotomy {
    let ell = f.ell();
    let idx = |p: Pos| p.0 * ell + p.1;
    let mut parent: Vec<Option<Pos>> = vec![None; ell * ell];
    let mut seen = vec![false; ell * ell];
    let mut q = VecDeque::new();
    for p in chord_cells_with_offset(f, ell.saturating_sub(1)) {
        if f.is_friendly(p) {
            seen[idx(p)] = true;
            q.push_back(p);
        }
    }
    while let Some(p) = q.pop_front() {
        if offset(p, ell) == 2 {
            let mut positions = vec![p];
            let mut cur = p;
            while let Some(prev) = parent[idx(cur)] {
                positions.push(prev);
                cur = prev;
            }
            positions.reverse();
            let witnesses = positions
                .iter()
                .map(|&a| f.same_type_cousin(a).expect("path cells are friendly"))
                .collect();
            return Dichotomy::Friendly(FriendlyPath { positions, witnesses });
        }
        for n in rook_neighbors(p, ell) {
            if f.is_chord(n) && !seen[idx(n)] && f.is_friendly(n) {
                seen[idx(n)] = true;
                parent[idx(n)] = Some(p);
                q.push_back(n);
            }
        }
    }
    Dichotomy::Blocked(steinhaus_set(f, &seen))
}

fn steinhaus_set(f: &FMatrix, reached: &[bool]) -> SteinhausSet {
    let ell = f.ell();
    let idx = |p: Pos| p.0 * ell + p.1;
    // the far side: chords reachable from the offset-2 layer avoiding the
    // friendly region grown from the other layer
    let mut far = vec![false; ell * ell];
    let mut q: VecDeque<Pos> = chord_cells_with_offset(f, 2)
        .into_iter()
        .filter(|&p| !reached[idx(p)])
        .collect();
    for &p in &q {
        far[idx(p)] = true;
    }
    while let Some(p) = q.pop_front() {
        for n in rook_neighbors(p, ell) {
            if f.is_chord(n) && !far[idx(n)] && !reached[idx(n)] {
                far[idx(n)] = true;
                q.push_back(n);
            }
        }
    }
    let boundary: Vec<Pos> = f
        .chords()
        .into_iter()
        .filter(|&p| far[idx(p)])
        .filter(|&p| {
            offset(p, ell) == ell - 1 || rook_neighbors(p, ell).iter().any(|&n| reached[idx(n)])
        })
        .collect();
    let components = king_components(f, &boundary);
    let cells = components
        .iter()
        .find(|c| blocks(f, c))
        .cloned()
        .unwrap_or(boundary);
    let cousin_set: BTreeSet<Pos> = cells
        .iter()
        .flat_map(|&p| cousins(p, ell).expect("cells are chords"))
        .collect();
    SteinhausSet { cells, cousin_set: cousin_set.into_iter().collect() }
}

fn king_components(f: &FMatrix, cells: &[Pos]) -> Vec<Vec<Pos>> {
    let ell = f.ell();
    let member: BTreeSet<Pos> = cells.iter().copied().collect();
    let mut done: BTreeSet<Pos> = BTreeSet::new();
    let mut out = Vec::new();
    for &s in cells {
        if done.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        done.insert(s);
        let mut i = 0;
        while i < comp.len() {
            for n in king_neighbors(comp[i], ell) {
                if member.contains(&n) && done.insert(n) {
                    comp.push(n);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Whether removing `cells` disconnects the offset-`(l-1)` layer from the
/// offset-2 layer for rook paths over chords.
pub fn blocks(f: &FMatrix, cells: &[Pos]) -> bool {
    let ell = f.ell();
    let idx = |p: Pos| p.0 * ell + p.1;
    let mut banned = vec![false; ell * ell];
    for &p in cells {
        banned[idx(p)] = true;
    }
    let mut seen = banned.clone();
    let mut q = VecDeque::new();
    for p in chord_cells_with_offset(f, ell.saturating_sub(1)) {
        if !seen[idx(p)] {
            seen[idx(p)] = true;
            q.push_back(p);
        }
    }
    while let Some(p) = q.pop_front() {
        if offset(p, ell) == 2 {
            return false;
        }
        for n in rook_neighbors(p, ell) {
            if f.is_chord(n) && !seen[idx(n)] {
                seen[idx(n)] = true;
                q.push_back(n);
            }
        }
    }
    true
}

/// `A'_i`: the position itself for a type-0 chord, its lowest same-type
/// cousin for a type-1 chord.
pub fn adjusted_positions(path: &FriendlyPath, f: &FMatrix) -> Result<Vec<Pos>> {
    path.positions
        .iter()
        .map(|&a| {
            if !f.chord_type(a) {
                Ok(a)
            } else {
                f.same_type_cousin(a).ok_or(Error::NoCousinWitness(a))
            }
        })
        .collect()
}

/// Chords `(i+s, i-s)`, `s = 1, 2, ...`, up to the first diagonal position.
pub fn down_line(i: usize, ell: usize) -> Vec<Pos> {
    line(i, ell, true)
}

/// Chords `(i-s, i+s)`, `s = 1, 2, ...`, up to the first diagonal position.
pub fn up_line(i: usize, ell: usize) -> Vec<Pos> {
    line(i, ell, false)
}

fn line(i: usize, ell: usize, down: bool) -> Vec<Pos> {
    let mut out = Vec::new();
    for s in 1..ell {
        let (a, b) = ((i + s) % ell, (i + ell * ell - s) % ell);
        let p = if down { (a, b) } else { (b, a) };
        if is_diagonal(p, ell) {
            break;
        }
        out.push(p);
    }
    out
}

/// Type pattern around index `i`: the down line starts with a run of
/// `run` chords of type `t`; the first up-line chord of type `t` is at
/// step `jp` (one-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SameState {
    pub t: bool,
    pub run: usize,
    pub jp: Option<usize>,
}

impl SameState {
    /// Some `j >= 1` with `0 <= jp - j <= 1` exists.
    pub fn holds(&self) -> bool {
        matches!(self.jp, Some(jp) if jp >= 1 && jp - 1 <= self.run)
    }
}

pub fn same_state_pattern(f: &FMatrix, i: usize) -> Option<SameState> {
    let ell = f.ell();
    let down = down_line(i, ell);
    let t = f.chord_type(*down.first()?);
    let run = down.iter().take_while(|&&p| f.chord_type(p) == t).count();
    let jp = up_line(i, ell)
        .iter()
        .position(|&p| f.chord_type(p) == t)
        .map(|x| x + 1);
    Some(SameState { t, run, jp })
}
