//! Exhaustive enumeration of the tree class `T_D` and verification of the
//! greedy tree's minimality.
//!
//! Trees with degree sequence `D` correspond one-to-one to Prüfer codes in
//! which label `i` occurs `d_i - 1` times, so the class is enumerated by the
//! distinct permutations of that multiset.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};
use crate::greedy::build_greedy;
use crate::indices::{compute_q, pseudo_sombor, sombor, QValue, ScoreAssignment, SpectrumSummary};
use crate::scalar::{format_significant, Scalar};
use crate::tree::{prufer_decode, LabeledTree, PruferCode};

/// Default bound on the number of trees a verification may enumerate.
pub const DEFAULT_CAP: u128 = 10_000_000;

/// `(n-2)! / Π (d_i - 1)!` for `n >= 2`, and 1 for `D = (0)`.
pub fn count_trees(degrees: &DegreeSequence) -> Result<u128> {
    degrees.ensure_realizable()?;
    if degrees.len() == 1 {
        return Ok(1);
    }
    // Product of binomials C(k_1 + ... + k_i, k_i) with k_i = d_i - 1.
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    for &d in degrees.degrees() {
        let k = (d - 1) as u128;
        placed += k;
        total = total
            .checked_mul(binomial(placed, k)?)
            .ok_or(Error::CountOverflow)?;
    }
    Ok(total)
}

fn binomial(n: u128, k: u128) -> Result<u128> {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 1..=k {
        c = c.checked_mul(n - k + i).ok_or(Error::CountOverflow)? / i;
    }
    Ok(c)
}

/// Distinct permutations of a multiset in lexicographic order, starting from
/// the sorted arrangement.
#[derive(Debug, Clone)]
pub struct MultisetPermutations {
    current: Vec<usize>,
    done: bool,
}

impl MultisetPermutations {
    pub fn new(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        Self {
            current: items,
            done: false,
        }
    }
}

/// Rearranges `a` into its lexicographic successor; false if `a` was the last.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl Iterator for MultisetPermutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.done = !next_permutation(&mut self.current);
        Some(out)
    }
}

/// Label `i` repeated `d_i - 1` times, ascending.
fn prufer_multiset(degrees: &DegreeSequence) -> Vec<usize> {
    degrees
        .degrees()
        .iter()
        .enumerate()
        .flat_map(|(i, &d)| std::iter::repeat_n(i + 1, d.saturating_sub(1)))
        .collect()
}

/// Every labeled tree with `deg(i) = d_i`, each exactly once.
pub fn enumerate_trees(
    degrees: &DegreeSequence,
) -> Result<Box<dyn Iterator<Item = LabeledTree> + Send>> {
    degrees.ensure_realizable()?;
    let n = degrees.len();
    if n == 1 {
        return Ok(Box::new(std::iter::once(LabeledTree::k1())));
    }
    let perms = MultisetPermutations::new(prufer_multiset(degrees));
    Ok(Box::new(perms.map(move |code| {
        prufer_decode(&PruferCode::new(n, code).expect("multiset labels are in range"))
    })))
}

/// Splits the enumeration into disjoint blocks by the first code entry.
/// Each block is `(prefix, remaining multiset)`.
fn blocks(degrees: &DegreeSequence) -> Vec<(Option<usize>, Vec<usize>)> {
    let multiset = prufer_multiset(degrees);
    let mut heads = multiset.clone();
    heads.dedup();
    if heads.is_empty() {
        return vec![(None, multiset)];
    }
    heads
        .into_iter()
        .map(|h| {
            let mut rest = multiset.clone();
            let at = rest
                .iter()
                .position(|&x| x == h)
                .expect("head is in multiset");
            rest.remove(at);
            (Some(h), rest)
        })
        .collect()
}

/// Runs `fold` over every tree, block by block in parallel, returning the
/// per-block results in enumeration order.
fn fold_blocks<R, F>(degrees: &DegreeSequence, fold: F) -> Vec<R>
where
    R: Send,
    F: Fn(&mut dyn Iterator<Item = LabeledTree>) -> R + Sync,
{
    let n = degrees.len();
    blocks(degrees)
        .into_par_iter()
        .map(|(head, rest)| {
            let mut trees = MultisetPermutations::new(rest).map(|tail| {
                let code: Vec<usize> = head.into_iter().chain(tail).collect();
                prufer_decode(&PruferCode::new(n, code).expect("multiset labels are in range"))
            });
            fold(&mut trees)
        })
        .collect()
}

/// Exact Sombor values with counts, before tolerance clustering.
///
/// Kept sorted with equal values combined, so merging partial spectra in any
/// order gives the same result.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawSpectrum<S> {
    counts: Vec<(S, u64)>,
}

impl<S: Scalar> RawSpectrum<S> {
    pub fn from_values<I: IntoIterator<Item = S>>(values: I) -> Self {
        Self::canonical(values.into_iter().map(|v| (v, 1)).collect())
    }

    fn canonical(mut counts: Vec<(S, u64)>) -> Self {
        counts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("Sombor values are finite"));
        let mut out: Vec<(S, u64)> = Vec::with_capacity(counts.len());
        for (v, c) in counts {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += c,
                _ => out.push((v, c)),
            }
        }
        Self { counts: out }
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.counts.extend(other.counts);
        Self::canonical(self.counts)
    }

    pub fn counts(&self) -> &[(S, u64)] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|c| c.1).sum()
    }

    pub fn summarize(&self, tolerance: S) -> SpectrumSummary<S> {
        SpectrumSummary::from_counts(self.counts.iter().copied(), tolerance)
    }
}

/// Partial spectra, one per enumeration block.
pub fn partial_spectra<S: Scalar>(degrees: &DegreeSequence) -> Result<Vec<RawSpectrum<S>>> {
    degrees.ensure_realizable()?;
    if degrees.len() == 1 {
        return Ok(vec![RawSpectrum::from_values([S::zero()])]);
    }
    Ok(fold_blocks(degrees, |trees| {
        RawSpectrum::from_values(trees.map(|t| sombor::<S>(&t)))
    }))
}

/// The set `Z_D` of Sombor values over `T_D`, clustered by `tolerance`.
pub fn sombor_spectrum<S: Scalar>(
    degrees: &DegreeSequence,
    tolerance: S,
) -> Result<SpectrumSummary<S>> {
    let raw = partial_spectra::<S>(degrees)?
        .into_iter()
        .fold(RawSpectrum::default(), RawSpectrum::merge);
    Ok(raw.summarize(tolerance))
}

/// A uniformly random tree from `T_D`: a shuffled Prüfer multiset, decoded.
pub fn random_tree<R: Rng + ?Sized>(degrees: &DegreeSequence, rng: &mut R) -> Result<LabeledTree> {
    degrees.ensure_realizable()?;
    let n = degrees.len();
    if n == 1 {
        return Ok(LabeledTree::k1());
    }
    let mut code = prufer_multiset(degrees);
    code.shuffle(rng);
    Ok(prufer_decode(&PruferCode::new(n, code)?))
}

/// Outcome of the exhaustive check for one degree sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<S> {
    pub degrees: DegreeSequence,
    pub tree_count: u128,
    pub distinct_values: usize,
    pub z1: S,
    pub z2: Option<S>,
    pub greedy_so: S,
    /// `|SO(GT_D) - z1| <= tolerance`.
    pub theorem_holds: bool,
    /// The greedy tree occurs in the enumeration and its enumerated copy attains `z1`.
    pub greedy_is_argmin: bool,
    /// Sandwich `SO - (z2 - z1)/2 < pSO < SO` over every tree; `None` when `|Z_D| = 1`.
    pub lemma2_holds: Option<bool>,
    /// `min (SO - pSO)` over the class.
    pub lemma2_upper_margin: Option<S>,
    /// `min (pSO - SO + (z2 - z1)/2)` over the class.
    pub lemma2_lower_margin: Option<S>,
    /// Trees within `tolerance` of the minimum pseudo-Sombor value.
    pub pso_argmin_count: u64,
    /// Every such tree attains `z1`.
    pub argmin_transfer_holds: bool,
    /// The greedy tree is the only pseudo-Sombor minimizer.
    pub greedy_is_pso_argmin: bool,
    /// `None` for `n = 1`.
    pub q: Option<QValue<S>>,
    pub tolerance: S,
}

/// Per-block accumulator for the second verification pass.
struct PassTwo<S> {
    upper: Option<S>,
    lower: Option<S>,
    /// `(pSO, SO, is greedy)` of trees near the block's minimum pSO.
    near_min: Vec<(S, S, bool)>,
    greedy_so: Option<S>,
}

/// Enumerates `T_D`, computes the spectrum and `q`, and checks that the
/// greedy tree attains the minimum Sombor value along with the pseudo-Sombor
/// sandwich and the argmin transfer.
pub fn verify_theorem<S: Scalar>(
    degrees: &DegreeSequence,
    tolerance: S,
    cap: u128,
) -> Result<VerificationReport<S>> {
    let tree_count = count_trees(degrees)?;
    if tree_count > cap {
        return Err(Error::CapExceeded {
            count: tree_count,
            cap,
        });
    }
    let greedy = build_greedy(degrees)?;
    let greedy_so = sombor::<S>(&greedy);
    if degrees.len() == 1 {
        return Ok(VerificationReport {
            degrees: degrees.clone(),
            tree_count,
            distinct_values: 1,
            z1: S::zero(),
            z2: None,
            greedy_so,
            theorem_holds: true,
            greedy_is_argmin: true,
            lemma2_holds: None,
            lemma2_upper_margin: None,
            lemma2_lower_margin: None,
            pso_argmin_count: 1,
            argmin_transfer_holds: true,
            greedy_is_pso_argmin: true,
            q: None,
            tolerance,
        });
    }

    let spectrum = sombor_spectrum::<S>(degrees, tolerance)?;
    if spectrum.total() as u128 != tree_count {
        return Err(Error::Invariant(format!(
            "enumerated {} trees, expected {tree_count}",
            spectrum.total()
        )));
    }
    let z1 = spectrum.z1();
    let z2 = spectrum.z2();
    let q = compute_q(degrees, Some(&spectrum))?;
    let scores = ScoreAssignment::from_degrees(degrees.degrees(), q.value)?;
    let half_gap = z2.map(|z2| (z2 - z1) / S::lit(2.0));

    let parts = fold_blocks(degrees, |trees| {
        let mut acc = PassTwo {
            upper: None,
            lower: None,
            near_min: Vec::new(),
            greedy_so: None,
        };
        let mut block_min: Option<S> = None;
        for t in trees {
            let so = sombor::<S>(&t);
            let pso = pseudo_sombor(&t, &scores).expect("scores match the class");
            let is_greedy = t == greedy;
            if is_greedy {
                acc.greedy_so = Some(so);
            }
            if let Some(h) = half_gap {
                acc.upper = Some(min_opt(acc.upper, so - pso));
                acc.lower = Some(min_opt(acc.lower, pso - (so - h)));
            }
            let m = min_opt(block_min, pso);
            block_min = Some(m);
            if pso <= m + tolerance {
                acc.near_min.push((pso, so, is_greedy));
                acc.near_min.retain(|e| e.0 <= m + tolerance);
            }
        }
        acc
    });

    let mut upper = None;
    let mut lower = None;
    let mut near_min = Vec::new();
    let mut enumerated_greedy_so = None;
    for p in parts {
        upper = p.upper.map(|u| min_opt(upper, u)).or(upper);
        lower = p.lower.map(|l| min_opt(lower, l)).or(lower);
        near_min.extend(p.near_min);
        enumerated_greedy_so = enumerated_greedy_so.or(p.greedy_so);
    }
    let pso_min = near_min.iter().map(|e| e.0).fold(S::infinity(), S::min);
    near_min.retain(|e| e.0 <= pso_min + tolerance);

    let lemma2_holds = half_gap
        .map(|_| upper.is_some_and(|u| u > S::zero()) && lower.is_some_and(|l| l > S::zero()));
    Ok(VerificationReport {
        degrees: degrees.clone(),
        tree_count,
        distinct_values: spectrum.len(),
        z1,
        z2,
        greedy_so,
        theorem_holds: (greedy_so - z1).abs() <= tolerance,
        greedy_is_argmin: enumerated_greedy_so.is_some_and(|s| (s - z1).abs() <= tolerance),
        lemma2_holds,
        lemma2_upper_margin: upper,
        lemma2_lower_margin: lower,
        pso_argmin_count: near_min.len() as u64,
        argmin_transfer_holds: near_min.iter().all(|e| (e.1 - z1).abs() <= tolerance),
        greedy_is_pso_argmin: near_min.len() == 1 && near_min[0].2,
        q: Some(q),
        tolerance,
    })
}

fn min_opt<S: Scalar>(a: Option<S>, b: S) -> S {
    a.map_or(b, |a| a.min(b))
}

impl<S: Scalar> VerificationReport<S> {
    /// All checks passed.
    pub fn all_hold(&self) -> bool {
        self.theorem_holds
            && self.greedy_is_argmin
            && self.lemma2_holds.unwrap_or(true)
            && self.argmin_transfer_holds
    }

    pub fn table_header() -> String {
        format!(
            "{:<28} {:>3} {:>9} {:>4} {:>18} {:>18} {:>18} {:>12} {:<12} {:>5} {:>6} {:>6} {:>8}",
            "degrees",
            "n",
            "trees",
            "|Z|",
            "z1",
            "z2",
            "SO(GT)",
            "q",
            "q_branch",
            "thm",
            "argmin",
            "lemma2",
            "transfer"
        )
    }

    pub fn table_row(&self, digits: usize) -> String {
        let f = |x: S| format_significant(x.to_f64().unwrap_or(f64::NAN), digits);
        let yes = |b: bool| if b { "true" } else { "false" };
        format!(
            "{:<28} {:>3} {:>9} {:>4} {:>18} {:>18} {:>18} {:>12} {:<12} {:>5} {:>6} {:>6} {:>8}",
            self.degrees.to_string(),
            self.degrees.len(),
            self.tree_count,
            self.distinct_values,
            f(self.z1),
            self.z2.map_or_else(|| "-".to_string(), f),
            f(self.greedy_so),
            self.q.map_or_else(
                || "-".to_string(),
                |q| format_significant(q.value.to_f64().unwrap_or(f64::NAN), 4)
            ),
            self.q.map_or("-", |q| q.branch.as_str()),
            yes(self.theorem_holds),
            yes(self.greedy_is_argmin),
            self.lemma2_holds.map_or("n/a", yes),
            yes(self.argmin_transfer_holds),
        )
    }
}
