//! Switching a single alternating cycle: along a friendly path when one
//! exists, otherwise by splitting the cycle into two shorter ones.

use crate::cycles::AlternatingCycle;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Swap};

use super::fmatrix::FMatrix;
use super::frame::{CycleFrame, Pos};
use super::friendly::{find_friendly_path, same_state_pattern, Dichotomy};
use super::okko::{ok_ko_step, Milestone, OkKoSpec};

/// Bookkeeping for one run of the cycle solver.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleStats {
    /// Cycles (or sub-cycles) switched along a friendly path.
    pub friendly_segments: usize,
    /// Friendly paths consisting of one chord.
    pub single_chord_paths: usize,
    /// Splits around a line pair whose sub-cycle has a friendly path.
    pub line_splits: usize,
    /// Splits peeling off one vertex pair next to a same-type line start.
    pub near_splits: usize,
    /// Splits at index 0 when no line pair qualifies.
    pub fallback_splits: usize,
    /// Length of every bridge between consecutive milestones.
    pub bridge_lengths: Vec<usize>,
}

impl CycleStats {
    pub fn max_bridge(&self) -> usize {
        self.bridge_lengths.iter().copied().max().unwrap_or(0)
    }

    pub fn merge(&mut self, other: CycleStats) {
        self.friendly_segments += other.friendly_segments;
        self.single_chord_paths += other.single_chord_paths;
        self.line_splits += other.line_splits;
        self.near_splits += other.near_splits;
        self.fallback_splits += other.fallback_splits;
        self.bridge_lengths.extend(other.bridge_lengths);
    }
}

/// Swaps switching `cycle` from its state in `g` to its state in `g2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePath {
    pub swaps: Vec<Swap>,
    pub stats: CycleStats,
}

/// Swap sequence from `g` to `g2 = g △ cycle`, where the outer pair
/// `(x, y)` differs from `(g, g2)` only away from the cycle.
pub fn path_along_cycle(
    g: &BipartiteGraph,
    g2: &BipartiteGraph,
    x: &BipartiteGraph,
    y: &BipartiteGraph,
    cycle: &AlternatingCycle,
) -> Result<CyclePath> {
    let d = g.symmetric_difference(g2)?;
    let mut diff: Vec<(usize, usize)> = d.x_edges.iter().chain(&d.y_edges).copied().collect();
    diff.sort_unstable();
    let mut cyc = cycle.edges();
    cyc.sort_unstable();
    if diff != cyc {
        return Err(Error::PreconditionViolation("G △ G' is not the given cycle".into()));
    }
    let dx = x.symmetric_difference(g)?;
    let dy = g2.symmetric_difference(y)?;
    let outer: Vec<(usize, usize)> = dx.x_edges.iter().chain(&dx.y_edges).chain(&dy.x_edges).chain(&dy.y_edges).copied().collect();
    if outer.iter().any(|e| cyc.binary_search(e).is_ok()) {
        return Err(Error::PreconditionViolation("X △ G or G' △ Y meets the cycle".into()));
    }
    let dxs: std::collections::BTreeSet<_> = dx.x_edges.iter().chain(&dx.y_edges).collect();
    if dy.x_edges.iter().chain(&dy.y_edges).any(|e| dxs.contains(e)) {
        return Err(Error::PreconditionViolation("X △ G and G' △ Y overlap".into()));
    }
    let frame = CycleFrame::new(cycle, g)?;
    let mut stats = CycleStats::default();
    let swaps = solve(g, &frame, &mut stats)?;
    let end = g.replay(&swaps)?.pop().expect("replay keeps the start");
    if &end != g2 {
        return Err(Error::SpecViolation("the cycle solver missed the target".into()));
    }
    Ok(CyclePath { swaps, stats })
}

/// Swaps taking `z`, in the base state of `frame`, to `frame.flip(z)`.
pub fn solve(z: &BipartiteGraph, frame: &CycleFrame, stats: &mut CycleStats) -> Result<Vec<Swap>> {
    let m = frame.len();
    if !frame.is_base_state(z) {
        return Err(Error::SpecViolation(format!("{m}-frame is not in its base state")));
    }
    match m {
        0 | 1 => return Ok(Vec::new()),
        2 => {
            let (us, vs) = (frame.us(), frame.vs());
            return Ok(vec![Swap::new(us[0], us[1], vs[0], vs[1], true)?]);
        }
        _ => {}
    }
    let f = FMatrix::in_frame(frame, z, z, z);
    match find_friendly_path(&f) {
        Dichotomy::Friendly(path) => {
            stats.friendly_segments += 1;
            if path.is_single_chord() {
                stats.single_chord_paths += 1;
            }
            let mut milestones = vec![Milestone::Base];
            for (&a, &w) in path.positions.iter().zip(&path.witnesses) {
                let ms = if f.chord_type(a) {
                    Milestone::Anchored(OkKoSpec::ok_at(w))
                } else {
                    Milestone::Anchored(OkKoSpec::ko_at(a))
                };
                if milestones.last() != Some(&ms) {
                    milestones.push(ms);
                }
            }
            milestones.push(Milestone::Flipped);
            let mut cur = z.clone();
            let mut swaps = Vec::new();
            for w in milestones.windows(2) {
                let step = ok_ko_step(&cur, z, frame, &w[0], &w[1])?;
                for s in &step.swaps {
                    cur.apply_swap_mut(s)?;
                }
                stats.bridge_lengths.push(step.swaps.len());
                swaps.extend(step.swaps);
            }
            Ok(swaps)
        }
        Dichotomy::Blocked(_) => {
            let (a, b) = choose_split(&f, frame, stats);
            split(z, frame, a, b, &f, stats)
        }
    }
}

/// Split indices `(a, b)`: the sub-cycle on `a..=b` and the one on the
/// remaining indices.
fn choose_split(f: &FMatrix, frame: &CycleFrame, stats: &mut CycleStats) -> (usize, usize) {
    let m = f.ell();
    let patterns: Vec<_> = (0..m).map(|i| same_state_pattern(f, i)).collect();
    for (i, pat) in patterns.iter().enumerate() {
        let Some(pat) = pat else { continue };
        let Some(jp) = pat.jp else { continue };
        if !pat.holds() || jp < 2 {
            continue;
        }
        let j = jp - 1;
        if 2 * j + 1 > m - 1 {
            continue;
        }
        let (a, b) = ((i + m - j) % m, (i + j) % m);
        let sub = frame.segment(a, b);
        let fs = f.segment(a, sub.len());
        if sub.len() < 3 || matches!(find_friendly_path(&fs), Dichotomy::Friendly(_)) {
            stats.line_splits += 1;
            return (a, b);
        }
    }
    for (i, pat) in patterns.iter().enumerate() {
        if matches!(pat, Some(p) if p.jp == Some(1)) {
            stats.near_splits += 1;
            return (i, i);
        }
    }
    stats.fallback_splits += 1;
    (0, 0)
}

fn split(
    z: &BipartiteGraph,
    frame: &CycleFrame,
    a: usize,
    b: usize,
    f: &FMatrix,
    stats: &mut CycleStats,
) -> Result<Vec<Swap>> {
    let m = frame.len();
    let na = (b + m - a) % m + 1;
    let nb = m - na;
    let ca: Pos = (b, a);
    let cb: Pos = ((a + m - 1) % m, (b + 1) % m);
    let t = if na == 1 {
        f.chord_type(cb)
    } else if nb == 1 || f.chord_type(ca) == f.chord_type(cb) {
        f.chord_type(ca)
    } else {
        return Err(Error::SpecViolation(format!(
            "split ({a}, {b}) joins chords of different types"
        )));
    };
    let (ea, eb) = (frame.edge(ca), frame.edge(cb));
    let bridge = Swap::new(ea.0, eb.0, ea.1, eb.1, true)?;
    let mut start = z.clone();
    let mut out = Vec::new();
    if t {
        start.apply_swap_mut(&bridge)?;
        out.push(bridge);
    }
    let swaps_a = if na >= 2 { solve(&start, &frame.segment(a, b), stats)? } else { Vec::new() };
    let swaps_b = if nb >= 2 {
        solve(&start, &frame.segment((b + 1) % m, (a + m - 1) % m), stats)?
    } else {
        Vec::new()
    };
    out.extend(interleave(&swaps_a, ea, &swaps_b, eb));
    if !t {
        out.push(bridge);
    }
    Ok(out)
}

/// Both halves run up to the swap that first touches their closing cell,
/// those two swaps follow back to back, then both halves finish.
fn interleave(sa: &[Swap], ca: (usize, usize), sb: &[Swap], cb: (usize, usize)) -> Vec<Swap> {
    let ia = sa.iter().position(|s| s.touches(ca));
    let ib = sb.iter().position(|s| s.touches(cb));
    let (Some(ia), Some(ib)) = (ia, ib) else {
        return sa.iter().chain(sb).copied().collect();
    };
    let mut out = Vec::with_capacity(sa.len() + sb.len());
    out.extend_from_slice(&sa[..ia]);
    out.extend_from_slice(&sb[..ib]);
    out.push(sa[ia]);
    out.push(sb[ib]);
    out.extend_from_slice(&sa[ia + 1..]);
    out.extend_from_slice(&sb[ib + 1..]);
    out
}
