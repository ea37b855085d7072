//! `swapmix` command-line tool.
//!
//! Degree sequences are read in the two-line format (`a` then `b`), graphs
//! in the `k l` header format. Tabular output is CSV. Domain errors exit
//! with status 1, usage errors with status 2.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use swapmix::canonical::{canonical_path, certify, DEFAULT_SWITCH_CAP};
use swapmix::chain::DEFAULT_SEED;
use swapmix::lab::{self, max_hat_switch_distance};
use swapmix::*;

#[derive(Parser)]
#[command(name = "swapmix", version, about = "Bipartite degree sequences and the swap Markov chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a degree sequence is graphical.
    Check { ds: PathBuf },
    /// Print the greedy realization of a degree sequence.
    Realize { ds: PathBuf },
    /// Run the swap chain from the greedy realization.
    Sample(SampleArgs),
    /// Print a swap sequence turning one realization into another.
    Transform { g1: PathBuf, g2: PathBuf },
    /// Print the circuits and alternating cycles of a pairing.
    Decompose {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        pick: PairingPick,
        /// Decompose under every pairing.
        #[arg(long, conflicts_with_all = ["seed", "pairing_index"])]
        all: bool,
    },
    /// Print the canonical path between two realizations.
    CanonicalPath {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        pick: PairingPick,
        /// Write the hat-matrix switch-distance certificate CSV to this file.
        #[arg(long, value_name = "FILE")]
        certify: Option<PathBuf>,
    },
    /// Exact mixing diagnostics for a small degree sequence, as CSV.
    MixReport {
        #[arg(long)]
        ds: PathBuf,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
    },
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    ds: PathBuf,
    #[arg(long)]
    steps: u64,
    /// Random seed [default: 24301]
    #[arg(long, default_value_t = DEFAULT_SEED, hide_default_value = true)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Print a CSV histogram of the samples instead of the graphs.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct PairingPick {
    /// Draw the pairing with this seed [default: 24301]
    #[arg(long, conflicts_with = "pairing_index")]
    seed: Option<u64>,
    /// Take the pairing at this position in enumeration order.
    #[arg(long)]
    pairing_index: Option<usize>,
}

impl PairingPick {
    fn pairing(&self, x: &BipartiteGraph, y: &BipartiteGraph) -> Result<Pairing> {
        match self.pairing_index {
            Some(i) => all_pairings(x, y)?
                .nth(i)
                .ok_or_else(|| Error::OutOfRange(format!("pairing index {i} (there are {})", pairing_count(x, y).unwrap_or_default()))),
            None => random_pairing(x, y, self.seed.unwrap_or(DEFAULT_SEED)),
        }
    }
}

enum Failure {
    Domain(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(PathBuf::from("<stdout>"), e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(PathBuf::from("<csv>"), e.into())
    }
}

fn read<T: std::str::FromStr<Err = Error>>(path: &Path) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(text.parse()?)
}

fn compact(g: &BipartiteGraph) -> String {
    (0..g.k())
        .map(|u| (0..g.l()).map(|v| char::from(b'0' + g.entry(u, v))).collect::<String>())
        .collect::<Vec<_>>()
        .join("/")
}

fn walk(vs: &[Vertex]) -> String {
    vs.iter().map(Vertex::to_string).collect::<Vec<_>>().join(" ")
}

fn distance(d: CappedDistance) -> String {
    match d {
        CappedDistance::Exact(x) => x.to_string(),
        CappedDistance::Exceeds(c) => format!(">{c}"),
    }
}

fn run(cmd: Command, out: &mut impl Write) -> std::result::Result<(), Failure> {
    match cmd {
        Command::Check { ds } => {
            let ds: BipartiteDegreeSequence = read(&ds)?;
            greedy_realize(&ds)?;
            writeln!(out, "graphical")?;
        }
        Command::Realize { ds } => {
            let ds: BipartiteDegreeSequence = read(&ds)?;
            write!(out, "{}", greedy_realize(&ds)?)?;
        }
        Command::Sample(a) => {
            let ds: BipartiteDegreeSequence = read(&a.ds)?;
            let samples = sample_many(&ds, a.steps, a.seed, a.count)?;
            if a.stats {
                let mut hist: BTreeMap<&BipartiteGraph, usize> = BTreeMap::new();
                for g in &samples {
                    *hist.entry(g).or_default() += 1;
                }
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["graph", "count", "frequency"])?;
                for (g, c) in hist {
                    let freq = c as f64 / samples.len() as f64;
                    w.write_record([compact(g), c.to_string(), format!("{freq:.6}")])?;
                }
                w.flush()?;
            } else {
                for g in &samples {
                    write!(out, "{g}")?;
                }
            }
        }
        Command::Transform { g1, g2 } => {
            let (g1, g2): (BipartiteGraph, BipartiteGraph) = (read(&g1)?, read(&g2)?);
            for s in ryser_sequence(&g1, &g2)? {
                writeln!(out, "{s}")?;
            }
        }
        Command::Decompose { x, y, pick, all } => {
            let (x, y): (BipartiteGraph, BipartiteGraph) = (read(&x)?, read(&y)?);
            let pairings: Vec<Pairing> = if all {
                let n = pairing_count(&x, &y)?;
                if n > swapmix::canonical::MAX_PAIRINGS.into() {
                    return Err(Error::TooManyPairings {
                        count: n.to_string(),
                        threshold: swapmix::canonical::MAX_PAIRINGS,
                    }
                    .into());
                }
                all_pairings(&x, &y)?.collect()
            } else {
                vec![pick.pairing(&x, &y)?]
            };
            for (i, s) in pairings.iter().enumerate() {
                let dec = s.decompose();
                writeln!(out, "pairing {i}")?;
                for (c, circuit) in dec.circuits.iter().enumerate() {
                    writeln!(out, "circuit {c}: {}", walk(&circuit.walk()))?;
                }
                for (c, cycle) in dec.cycles.iter().enumerate() {
                    writeln!(out, "cycle {c} (circuit {}): {cycle}", dec.origin[c])?;
                }
            }
        }
        Command::CanonicalPath { x, y, pick, certify: cert } => {
            let (x, y): (BipartiteGraph, BipartiteGraph) = (read(&x)?, read(&y)?);
            let s = pick.pairing(&x, &y)?;
            let path = canonical_path(&x, &y, &s)?;
            for (i, z) in path.states()?.iter().enumerate() {
                match i {
                    0 => writeln!(out, "step 0")?,
                    _ => writeln!(out, "step {i} swap {}", path.swaps[i - 1])?,
                }
                write!(out, "{z}")?;
            }
            if let Some(file) = cert {
                let d = certify(&path, &x, &y, DEFAULT_SWITCH_CAP)?;
                let io_err = |e: csv::Error| Failure::Io(file.clone(), e.into());
                let mut w = csv::Writer::from_path(&file).map_err(io_err)?;
                w.write_record(["step", "swap", "switch_distance", "single_chord_paths"]).map_err(io_err)?;
                for (i, d) in d.into_iter().enumerate() {
                    let swap = if i == 0 { String::new() } else { path.swaps[i - 1].to_string() };
                    w.write_record([i.to_string(), swap, distance(d), path.stats.single_chord_paths.to_string()])
                        .map_err(io_err)?;
                }
                w.flush().map_err(|e| Failure::Io(file.clone(), e))?;
            }
        }
        Command::MixReport { ds, eps } => {
            let ds: BipartiteDegreeSequence = read(&ds)?;
            let space = enumerate_states(&ds)?;
            let p = build_kernel(&space)?;
            let gap = spectral_gap(&p)?;
            let tv = match tv_mixing_time(&p, eps) {
                Ok(t) => t.to_string(),
                Err(Error::NonMixing(_)) => "none".to_string(),
                Err(e) => return Err(e.into()),
            };
            let c = congestion(&space, &p)?;
            let hat = max_hat_switch_distance(&space, DEFAULT_SWITCH_CAP)?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "k", "l", "n_states", "lambda2", "tau_rel", "tv_mixing_time", "kappa", "kappa_exact",
                "max_edge", "max_hat_switch_distance",
            ])?;
            w.write_record([
                ds.k().to_string(),
                ds.l().to_string(),
                space.len().to_string(),
                format!("{:.10}", gap.lambda2),
                format!("{:.10}", gap.tau_rel),
                tv,
                format!("{:.10}", lab::to_f64(&c.kappa)),
                c.kappa.to_string(),
                format!("{}-{}", c.max_edge.0, c.max_edge.1),
                distance(hat),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let res = run(cli.command, &mut out).and_then(|_| out.flush().map_err(Failure::from));
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error[E_IO]: {}: {e}", path.display());
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn compact_rows() {
        let g: BipartiteGraph = "2 3\n101\n010\n".parse().unwrap();
        assert_eq!(compact(&g), "101/010");
    }

    #[test]
    fn capped_distances_print() {
        assert_eq!(distance(CappedDistance::Exact(2)), "2");
        assert_eq!(distance(CappedDistance::Exceeds(6)), ">6");
    }

    #[test]
    fn arguments_parse() {
        Cli::command().debug_assert();
        let cli = Cli::try_parse_from(["swapmix", "sample", "--ds", "f", "--steps", "3"]).unwrap();
        match cli.command {
            Command::Sample(a) => assert_eq!((a.seed, a.count, a.stats), (DEFAULT_SEED, 1, false)),
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["swapmix", "decompose", "x", "y", "--all", "--seed", "1"]).is_err());
    }
}
