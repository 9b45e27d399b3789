use thiserror::Error;

use crate::degseq::DegreeSequence;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty degree sequence")]
    EmptyInput,
    #[error("invalid token {0:?}: expected a non-negative integer")]
    InvalidToken(String),
    #[error("negative degree {0}")]
    NegativeDegree(i64),
    #[error("degree sequence {0} is not realizable by a tree")]
    NotRealizable(DegreeSequence),

    #[error("vertex label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0},{1}}} closes a cycle")]
    Cycle(usize, usize),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("tree needs at least one vertex")]
    EmptyTree,
    #[error("malformed tree file: {0}")]
    TreeFormat(String),
    #[error("invalid tree JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("Prüfer code requires n >= 2, got n = {0}")]
    PruferTooSmall(usize),
    #[error("Prüfer code of length {len} does not match n = {n}")]
    PruferLength { len: usize, n: usize },

    #[error("score constant q must be positive, got {0}")]
    NonPositiveQ(f64),
    #[error("score constant q is undefined for n = {0}")]
    QUndefined(usize),
    #[error("scores cover {scores} vertices but the tree has {tree}")]
    VertexCountMismatch { tree: usize, scores: usize },
    #[error("q = {q} exceeds 1/(2n) = {bound}; score monotonicity is not guaranteed")]
    MonotonicityNotGuaranteed { q: f64, bound: f64 },
    #[error("tree labels do not follow the degree order (deg(u) must be non-increasing in u)")]
    NotCanonicallyLabeled,

    #[error("switch ({u},{v},{w},{t}) labels must be distinct and in range")]
    SwitchLabels {
        u: usize,
        v: usize,
        w: usize,
        t: usize,
    },
    #[error("switch precondition violated: {0}")]
    SwitchPrecondition(String),
    #[error("switch result is not a tree")]
    SwitchNotTree,

    #[error("descent step {step}: pseudo-Sombor did not decrease ({before} -> {after})")]
    NoDecrease {
        step: usize,
        before: f64,
        after: f64,
    },
    #[error("descent terminated after {steps} steps at a tree other than the greedy tree")]
    TerminalNotGreedy { steps: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("tree count {count} exceeds the enumeration cap {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("tree count overflows 128 bits")]
    CountOverflow,
}
