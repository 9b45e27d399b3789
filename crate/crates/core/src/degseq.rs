//! Degree sequences `D = (d_1, ..., d_n)`, kept in non-increasing order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-empty, non-increasing sequence of vertex degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

/// Result of parsing: the sorted sequence and whether the input was already sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedDegrees {
    pub sequence: DegreeSequence,
    pub was_sorted: bool,
}

impl DegreeSequence {
    /// Sorts `degrees` into non-increasing order.
    pub fn new(mut degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptyInput);
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { degrees })
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    /// Always false; kept for the `len`/`is_empty` pair.
    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degree of vertex `u` (1-based).
    pub fn degree(&self, u: usize) -> usize {
        self.degrees[u - 1]
    }

    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// True iff some tree on `n` vertices has exactly these degrees:
    /// `D = (0)`, or `n >= 2`, every degree is positive and the degrees sum to `2(n-1)`.
    pub fn is_tree_realizable(&self) -> bool {
        let n = self.len();
        if n == 1 {
            return self.degrees[0] == 0;
        }
        self.degrees[n - 1] >= 1 && self.sum() == 2 * (n - 1)
    }

    pub fn ensure_realizable(&self) -> Result<()> {
        if self.is_tree_realizable() {
            Ok(())
        } else {
            Err(Error::NotRealizable(self.clone()))
        }
    }

    /// Every tree-realizable sequence of length `n`, in decreasing lexicographic order.
    pub fn all_realizable(n: usize) -> Vec<DegreeSequence> {
        match n {
            0 => Vec::new(),
            1 => vec![DegreeSequence { degrees: vec![0] }],
            _ => {
                // d_i - 1 is a partition of n - 2 into at most n parts.
                let mut out = Vec::new();
                let mut parts = Vec::with_capacity(n);
                partitions(n - 2, n - 2, n, &mut parts, &mut out);
                out.into_iter()
                    .map(|p: Vec<usize>| {
                        let mut degrees: Vec<usize> = p.iter().map(|x| x + 1).collect();
                        degrees.resize(n, 1);
                        DegreeSequence { degrees }
                    })
                    .collect()
            }
        }
    }
}

fn partitions(
    remaining: usize,
    max_part: usize,
    slots: usize,
    parts: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining == 0 {
        out.push(parts.clone());
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        parts.push(p);
        partitions(remaining - p, p, slots - 1, parts, out);
        parts.pop();
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for DegreeSequence {
    type Error = Error;

    fn try_from(degrees: Vec<usize>) -> Result<Self> {
        Self::new(degrees)
    }
}

impl From<DegreeSequence> for Vec<usize> {
    fn from(d: DegreeSequence) -> Self {
        d.degrees
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_degree_sequence(s).map(|p| p.sequence)
    }
}

/// Parses integers separated by commas and/or whitespace, optionally wrapped
/// in `[...]` or `(...)`.
pub fn parse_degree_sequence(text: &str) -> Result<ParsedDegrees> {
    let mut body = text.trim();
    for (open, close) in [('[', ']'), ('(', ')')] {
        if let Some(inner) = body.strip_prefix(open).and_then(|b| b.strip_suffix(close)) {
            body = inner.trim();
            break;
        }
    }
    let mut degrees = Vec::new();
    for token in body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        match token.parse::<i64>() {
            Ok(v) if v < 0 => return Err(Error::NegativeDegree(v)),
            Ok(v) => degrees
                .push(usize::try_from(v).map_err(|_| Error::InvalidToken(token.to_string()))?),
            Err(_) => return Err(Error::InvalidToken(token.to_string())),
        }
    }
    let was_sorted = degrees.windows(2).all(|w| w[0] >= w[1]);
    let sequence = DegreeSequence::new(degrees)?;
    Ok(ParsedDegrees {
        sequence,
        was_sorted,
    })
}
