//! Greedy trees and the Sombor index over trees with a prescribed degree sequence.
//!
//! Trees live on the vertex set `1..=n` with `deg(u) = d_u`, where `d` is a
//! non-increasing degree sequence. The crate builds the greedy tree for such a
//! sequence, evaluates the Sombor and pseudo-Sombor indices, runs the
//! degree-preserving edge-switch descent that drives any tree to the greedy
//! one, and exhaustively enumerates the whole tree class through Prüfer codes
//! to check that the greedy tree is a Sombor minimizer.
//!
//! The numeric parts are generic over [`Scalar`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`, which is what the CLI uses.

pub mod degseq;
pub mod error;
pub mod greedy;
pub mod indices;
pub mod oracle;
pub mod scalar;
pub mod switching;
pub mod tree;

pub use degseq::{parse_degree_sequence, DegreeSequence, ParsedDegrees};
pub use error::{Error, Result};
pub use greedy::build_greedy;
pub use indices::{
    compute_q, pseudo_sombor, score_assignment, sombor, QBranch, QValue, ScoreAssignment,
    SpectrumSummary, DEFAULT_TOLERANCE,
};
pub use oracle::{
    count_trees, enumerate_trees, partial_spectra, random_tree, sombor_spectrum, verify_theorem,
    MultisetPermutations, RawSpectrum, VerificationReport, DEFAULT_CAP,
};
pub use scalar::Scalar;
pub use switching::{
    apply_switch, descend, find_violation, switch_sign, valid_plans, DescentStep, DescentTrace,
    SignOutcome, SwitchPlan, SwitchSign, Violation, ViolationKind, Witnesses,
};
pub use tree::{bfs_levels, prufer_decode, prufer_encode, LabeledTree, Levels, PruferCode};

/// Score assignment over `f64`.
pub type Scores = ScoreAssignment<f64>;
/// Perturbation constant over `f64`.
pub type Q = QValue<f64>;
/// Sombor spectrum over `f64`.
pub type Spectrum = SpectrumSummary<f64>;
/// Verification report over `f64`.
pub type Report = VerificationReport<f64>;
/// Descent trace over `f64`.
pub type Trace = DescentTrace<f64>;
/// Switch sign over `f64`.
pub type Sign = SwitchSign<f64>;
