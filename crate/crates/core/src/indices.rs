//! Sombor index, vertex scores, the perturbation constant `q` and the pseudo-Sombor index.

use serde::Serialize;

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, edge_term, Scalar};
use crate::tree::LabeledTree;

/// Absolute tolerance under which two Sombor values count as equal.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `SO(T) = Σ_{uv ∈ E} sqrt(deg(u)² + deg(v)²)`, summed over edges in canonical order.
pub fn sombor<S: Scalar>(tree: &LabeledTree) -> S {
    let degrees = tree.degrees();
    compensated_sum(
        tree.edges()
            .into_iter()
            .map(|(u, v)| edge_term(S::of(degrees[u - 1]), S::of(degrees[v - 1]))),
    )
}

/// Per-vertex scores `scr(u) = deg(u) - u·q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreAssignment<S> {
    q: S,
    scores: Vec<S>,
    monotone: bool,
}

impl<S: Scalar> ScoreAssignment<S> {
    /// Scores from a degree vector indexed by `label - 1`.
    pub fn from_degrees(degrees: &[usize], q: S) -> Result<Self> {
        if q.is_nan() || q <= S::zero() {
            return Err(Error::NonPositiveQ(q.to_f64().unwrap_or(f64::NAN)));
        }
        let n = degrees.len();
        let scores = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| S::of(d) - S::of(i + 1) * q)
            .collect();
        let monotone = n >= 2 && q <= monotone_bound::<S>(n);
        Ok(Self {
            q,
            scores,
            monotone,
        })
    }

    pub fn q(&self) -> S {
        self.q
    }

    /// `scr(u)`, 1-based.
    pub fn score(&self, u: usize) -> S {
        self.scores[u - 1]
    }

    pub fn scores(&self) -> &[S] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// True when `q <= 1/(2n)` (and `n >= 2`), the range in which scores are
    /// guaranteed strictly decreasing and positive for canonically labeled trees.
    pub fn monotone_guaranteed(&self) -> bool {
        self.monotone
    }

    /// Set when `q` exceeds `1/(2n)`.
    pub fn warning(&self) -> bool {
        !self.monotone
    }
}

/// `1/(2n)`.
pub fn monotone_bound<S: Scalar>(n: usize) -> S {
    S::one() / S::of(2 * n)
}

pub fn score_assignment<S: Scalar>(tree: &LabeledTree, q: S) -> Result<ScoreAssignment<S>> {
    ScoreAssignment::from_degrees(&tree.degrees(), q)
}

/// `pSO(T) = Σ_{uv ∈ E} sqrt(scr(u)² + scr(v)²)`.
pub fn pseudo_sombor<S: Scalar>(tree: &LabeledTree, scores: &ScoreAssignment<S>) -> Result<S> {
    if scores.len() != tree.n() {
        return Err(Error::VertexCountMismatch {
            tree: tree.n(),
            scores: scores.len(),
        });
    }
    Ok(compensated_sum(
        tree.edges()
            .into_iter()
            .map(|(u, v)| edge_term(scores.score(u), scores.score(v))),
    ))
}

/// Which formula produced a [`QValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QBranch {
    /// `min{1/(2n), (z2 - z1)/(4 n³ √2)}` from a spectrum with at least two values.
    Exact,
    /// `1/(2n)` because the spectrum has a single value.
    SingleValue,
    /// `1/(2n)` without a spectrum.
    Fallback,
}

impl QBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            QBranch::Exact => "exact",
            QBranch::SingleValue => "single_value",
            QBranch::Fallback => "fallback",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QValue<S> {
    pub value: S,
    pub branch: QBranch,
}

/// The score constant for `degrees`. With a spectrum holding two or more
/// values this is the exact constant, otherwise `1/(2n)`.
pub fn compute_q<S: Scalar>(
    degrees: &DegreeSequence,
    spectrum: Option<&SpectrumSummary<S>>,
) -> Result<QValue<S>> {
    let n = degrees.len();
    if n < 2 {
        return Err(Error::QUndefined(n));
    }
    let half = monotone_bound::<S>(n);
    Ok(match spectrum {
        None => QValue {
            value: half,
            branch: QBranch::Fallback,
        },
        Some(s) => match s.z2() {
            None => QValue {
                value: half,
                branch: QBranch::SingleValue,
            },
            Some(z2) => {
                let n3 = S::of(n).powi(3);
                let gap_bound = (z2 - s.z1()) / (S::lit(4.0) * n3 * S::lit(2.0).sqrt());
                QValue {
                    value: half.min(gap_bound),
                    branch: QBranch::Exact,
                }
            }
        },
    })
}

/// Distinct Sombor values over a tree class, with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary<S> {
    values: Vec<S>,
    multiplicities: Vec<u64>,
    tolerance: S,
}

impl<S: Scalar> SpectrumSummary<S> {
    /// Clusters `(value, count)` pairs: after sorting, a value within
    /// `tolerance` of its predecessor joins the predecessor's cluster. Each
    /// cluster is represented by its smallest member.
    pub fn from_counts<I: IntoIterator<Item = (S, u64)>>(counts: I, tolerance: S) -> Self {
        let mut sorted: Vec<(S, u64)> = counts.into_iter().collect();
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("Sombor values are finite"));
        let mut values: Vec<S> = Vec::new();
        let mut multiplicities: Vec<u64> = Vec::new();
        let mut previous: Option<S> = None;
        for (v, c) in sorted {
            match previous {
                Some(p) if v - p <= tolerance => {
                    *multiplicities.last_mut().expect("cluster open") += c;
                }
                _ => {
                    values.push(v);
                    multiplicities.push(c);
                }
            }
            previous = Some(v);
        }
        Self {
            values,
            multiplicities,
            tolerance,
        }
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn tolerance(&self) -> S {
        self.tolerance
    }

    /// Number of distinct values.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    /// Smallest value. Panics on an empty spectrum.
    pub fn z1(&self) -> S {
        self.values[0]
    }

    /// Second smallest value, if any.
    pub fn z2(&self) -> Option<S> {
        self.values.get(1).copied()
    }
}
