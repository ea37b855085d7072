//! Bipartite degree sequences and their two-line text format.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A pair `(a, b)` of degree lists for the classes `U` (length `k`) and `V`
/// (length `l`), both stored non-increasing.
///
/// Construction checks the structural conditions only: monotonicity and
/// `a_i <= l`, `b_j <= k`. Whether the pair is realizable (including equal
/// sums) is answered by [`crate::realize::is_graphical`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteDegreeSequence {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl BipartiteDegreeSequence {
    /// Strict constructor: both lists must already be non-increasing.
    pub fn new(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if !is_non_increasing(&a) || !is_non_increasing(&b) {
            return Err(Error::InvalidSequence(
                "both degree lists must be non-increasing".into(),
            ));
        }
        Self::checked(a, b)
    }

    /// Sorts both lists into non-increasing order before validating.
    pub fn from_unsorted(mut a: Vec<usize>, mut b: Vec<usize>) -> Result<Self> {
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        Self::checked(a, b)
    }

    fn checked(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let (k, l) = (a.len(), b.len());
        if let Some(&d) = a.iter().find(|&&d| d > l) {
            return Err(Error::InvalidSequence(format!(
                "U-degree {d} exceeds the size {l} of class V"
            )));
        }
        if let Some(&d) = b.iter().find(|&&d| d > k) {
            return Err(Error::InvalidSequence(format!(
                "V-degree {d} exceeds the size {k} of class U"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// Size of class `U`.
    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Size of class `V`.
    pub fn l(&self) -> usize {
        self.b.len()
    }

    pub fn sums(&self) -> (usize, usize) {
        (self.a.iter().sum(), self.b.iter().sum())
    }

    /// Number of edges of any realization (the `U`-side sum).
    pub fn edge_count(&self) -> usize {
        self.sums().0
    }

    /// All `U`-degrees equal, or all `V`-degrees equal.
    pub fn is_semi_regular(&self) -> bool {
        all_equal(&self.a) || all_equal(&self.b)
    }
}

fn is_non_increasing(xs: &[usize]) -> bool {
    xs.windows(2).all(|w| w[0] >= w[1])
}

fn all_equal(xs: &[usize]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

fn parse_line(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {tok:?}")))
        })
        .collect()
}

impl FromStr for BipartiteDegreeSequence {
    type Err = Error;

    /// Two lines of space-separated integers, `a` first. A trailing newline
    /// is optional; anything after the second line must be blank.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let a = parse_line(lines.next().ok_or_else(|| Error::Parse("missing line a".into()))?)?;
        let b = parse_line(lines.next().ok_or_else(|| Error::Parse("missing line b".into()))?)?;
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("unexpected content after line b".into()));
        }
        Self::new(a, b)
    }
}

impl fmt::Display for BipartiteDegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "{}", join(&self.a))?;
        writeln!(f, "{}", join(&self.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_constructor_rejects_unsorted() {
        assert!(BipartiteDegreeSequence::new(vec![1, 2], vec![2, 1]).is_err());
        let ds = BipartiteDegreeSequence::from_unsorted(vec![1, 2], vec![1, 2]).unwrap();
        assert_eq!(ds.a(), &[2, 1]);
    }

    #[test]
    fn bounds_are_checked() {
        assert!(BipartiteDegreeSequence::new(vec![3], vec![1, 1]).is_err());
        assert!(BipartiteDegreeSequence::new(vec![1, 1], vec![3]).is_err());
    }

    #[test]
    fn text_round_trip_is_exact() {
        let text = "2 2 2\n3 2 1\n";
        let ds: BipartiteDegreeSequence = text.parse().unwrap();
        assert_eq!(ds.to_string(), text);
        assert_eq!(ds.sums(), (6, 6));
        assert!(ds.is_semi_regular());
    }

    #[test]
    fn parse_errors() {
        assert!("1 1\n".parse::<BipartiteDegreeSequence>().is_err());
        assert!("1 x\n1 1\n".parse::<BipartiteDegreeSequence>().is_err());
        assert!("1 1\n1 1\n5\n".parse::<BipartiteDegreeSequence>().is_err());
    }
}
