use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn swapmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swapmix")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn file(dir: &TempDir, name: &str, body: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn check_reports_graphical() {
    let d = TempDir::new().unwrap();
    let o = swapmix(&["check", &file(&d, "ds", "1 1\n1 1\n")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "graphical\n");
}

#[test]
fn check_rejects_unequal_sums() {
    let d = TempDir::new().unwrap();
    let o = swapmix(&["check", &file(&d, "ds", "2 2\n1 1\n")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o), "error[E_NOT_GRAPHICAL]: not graphical: degree sums differ\n");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(swapmix(&["check"]).status.code(), Some(2));
    assert_eq!(swapmix(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(swapmix(&["sample", "--ds", "x", "--steps", "many"]).status.code(), Some(2));
}

#[test]
fn missing_files_are_domain_errors() {
    let o = swapmix(&["realize", "/nonexistent/ds.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[E_IO]: /nonexistent/ds.txt"));
}

#[test]
fn malformed_input_is_reported() {
    let d = TempDir::new().unwrap();
    let o = swapmix(&["check", &file(&d, "ds", "1 x\n1 1\n")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[E_PARSE]"));
}

#[test]
fn help_and_version() {
    assert!(swapmix(&["--help"]).status.success());
    assert!(stdout(&swapmix(&["--version"])).starts_with("swapmix "));
}

#[test]
fn mix_report_counts_states() {
    let d = TempDir::new().unwrap();
    let o = swapmix(&["mix-report", "--ds", &file(&d, "ds", "2 2 2\n3 2 1\n")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    let row = rdr.records().next().unwrap().unwrap();
    let col = |name: &str| row.get(header.iter().position(|h| h == name).unwrap()).unwrap().to_owned();
    assert_eq!(col("n_states"), "3");
    let tau: f64 = col("tau_rel").parse().unwrap();
    let kappa: f64 = col("kappa").parse().unwrap();
    assert!(tau <= kappa + 1e-8);
}

#[test]
fn sampling_is_byte_identical_under_a_seed() {
    let d = TempDir::new().unwrap();
    let ds = file(&d, "ds", "2 2 1\n2 2 1\n");
    let args = ["sample", "--ds", &ds, "--steps", "40", "--seed", "11", "--count", "5"];
    let (a, b) = (swapmix(&args), swapmix(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).matches("3 3\n").count(), 5);
    let stats = swapmix(&["sample", "--ds", &ds, "--steps", "40", "--count", "50", "--stats"]);
    let total: usize = csv::Reader::from_reader(stats.stdout.as_slice())
        .records()
        .map(|r| r.unwrap()[1].parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 50);
}

#[test]
fn transform_replays_to_the_target() {
    let d = TempDir::new().unwrap();
    let a = file(&d, "a", "3 3\n110\n101\n011\n");
    let b = file(&d, "b", "3 3\n011\n110\n101\n");
    let o = swapmix(&["transform", &a, &b]);
    assert!(o.status.success());
    let mut g: swapmix::BipartiteGraph = "3 3\n110\n101\n011\n".parse().unwrap();
    for line in stdout(&o).lines() {
        let v: Vec<usize> = line.split(' ').map(|t| t.parse().unwrap()).collect();
        let s = g.swap_at(v[0], v[1], v[2], v[3]).unwrap();
        g = g.apply_swap(&s).unwrap();
    }
    assert_eq!(g.to_string(), "3 3\n011\n110\n101\n");
}

#[test]
fn degree_mismatch_is_reported() {
    let d = TempDir::new().unwrap();
    let a = file(&d, "a", "2 2\n10\n01\n");
    let b = file(&d, "b", "2 2\n11\n00\n");
    let o = swapmix(&["transform", &a, &b]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[E_DEGREE]"));
}

#[test]
fn canonical_path_writes_a_certificate() {
    let d = TempDir::new().unwrap();
    let a = file(&d, "a", "3 3\n110\n101\n011\n");
    let b = file(&d, "b", "3 3\n011\n110\n101\n");
    let cert = d.path().join("cert.csv");
    let o = swapmix(&["canonical-path", &a, &b, "--pairing-index", "0", "--certify", cert.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("step 0\n3 3\n110\n101\n011\n"));
    assert!(out.ends_with("3 3\n011\n110\n101\n"));
    let rows: Vec<csv::StringRecord> = csv::Reader::from_path(&cert).unwrap().records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), out.matches("step ").count());
    assert!(rows.iter().all(|r| r[2].parse::<usize>().unwrap() <= 2));
    let bad = swapmix(&["canonical-path", &a, &b, "--pairing-index", "99"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn decompose_lists_every_pairing() {
    let d = TempDir::new().unwrap();
    let a = file(&d, "a", "3 4\n1010\n0100\n0001\n");
    let b = file(&d, "b", "3 4\n0101\n1000\n0010\n");
    let o = swapmix(&["decompose", &a, &b, "--all"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("pairing ").count(), 2);
    let one = swapmix(&["decompose", &a, &b, "--seed", "4"]);
    assert_eq!(stdout(&one).matches("pairing ").count(), 1);
}
