//! Degree-preserving edge switches and the descent to the greedy tree.
//!
//! A switch `(u, v, w, t)` deletes `{u,v}` and `{w,t}` and adds `{u,w}` and
//! `{v,t}`. Its effect on the pseudo-Sombor index has the sign of
//! `(scr(u) - scr(t))·(scr(w) - scr(v))`.
//!
//! [`find_violation`] locates one of two local defects and builds a switch
//! that strictly lowers the pseudo-Sombor index:
//!
//! * a vertex `α` deeper than a vertex `β` with `scr(α) > scr(β)`, taken on the
//!   shallowest such level `j` of `β`, with `γ = parent(β)`;
//! * two vertices `α`, `β` on one level with `scr(α) > scr(β)` whose children
//!   `γ` (of `α`) and `δ` (of `β`) satisfy `scr(γ) < scr(δ)`.
//!
//! A tree with neither defect is the greedy tree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::greedy::build_greedy;
use crate::indices::{monotone_bound, pseudo_sombor, score_assignment, sombor, ScoreAssignment};
use crate::scalar::Scalar;
use crate::tree::{bfs_levels, LabeledTree, Levels};

/// Delete `{u,v}`, `{w,t}`; add `{u,w}`, `{v,t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SwitchPlan {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub t: usize,
}

impl SwitchPlan {
    pub fn new(u: usize, v: usize, w: usize, t: usize) -> Self {
        Self { u, v, w, t }
    }

    /// Checks labels and the adjacency pattern `u~v, w~t, u≁w, v≁t`.
    /// Tree-ness of the result is checked by [`apply_switch`].
    pub fn check(&self, tree: &LabeledTree) -> Result<()> {
        let Self { u, v, w, t } = *self;
        let labels = [u, v, w, t];
        let distinct = (0..4).all(|i| (i + 1..4).all(|k| labels[i] != labels[k]));
        if !distinct || labels.iter().any(|&x| x == 0 || x > tree.n()) {
            return Err(Error::SwitchLabels { u, v, w, t });
        }
        let require = |cond: bool, what: String| {
            if cond {
                Ok(())
            } else {
                Err(Error::SwitchPrecondition(what))
            }
        };
        require(tree.adjacent(u, v), format!("{u} and {v} are not adjacent"))?;
        require(tree.adjacent(w, t), format!("{w} and {t} are not adjacent"))?;
        require(
            !tree.adjacent(u, w),
            format!("{u} and {w} are already adjacent"),
        )?;
        require(
            !tree.adjacent(v, t),
            format!("{v} and {t} are already adjacent"),
        )?;
        Ok(())
    }
}

/// Performs the switch; the result has the same degree at every vertex.
pub fn apply_switch(tree: &LabeledTree, plan: &SwitchPlan) -> Result<LabeledTree> {
    plan.check(tree)?;
    let SwitchPlan { u, v, w, t } = *plan;
    let gone = |a: usize, b: usize| (a, b) == key(u, v) || (a, b) == key(w, t);
    let mut edges: Vec<(usize, usize)> = tree
        .edges()
        .into_iter()
        .filter(|&(a, b)| !gone(a, b))
        .collect();
    edges.push(key(u, w));
    edges.push(key(v, t));
    LabeledTree::new(tree.n(), &edges).map_err(|e| match e {
        Error::Cycle(..) | Error::Disconnected { .. } => Error::SwitchNotTree,
        other => other,
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Every valid switch of `tree`: all orientations of edge pairs that meet the
/// adjacency pattern and produce a tree.
pub fn valid_plans(tree: &LabeledTree) -> Vec<SwitchPlan> {
    let edges = tree.edges();
    let mut out = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            for (u, v) in [(a, b), (b, a)] {
                for (w, t) in [(c, d), (d, c)] {
                    let plan = SwitchPlan::new(u, v, w, t);
                    if apply_switch(tree, &plan).is_ok() {
                        out.push(plan);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignOutcome {
    /// `pSO(T) > pSO(T₁)`.
    Decrease,
    Increase,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwitchSign<S> {
    pub outcome: SignOutcome,
    pub product: S,
}

/// Sign of `pSO(T) - pSO(T₁)` from `(scr(u) - scr(t))·(scr(w) - scr(v))`.
pub fn switch_sign<S: Scalar>(
    tree: &LabeledTree,
    plan: &SwitchPlan,
    scores: &ScoreAssignment<S>,
) -> Result<SwitchSign<S>> {
    if scores.len() != tree.n() {
        return Err(Error::VertexCountMismatch {
            tree: tree.n(),
            scores: scores.len(),
        });
    }
    apply_switch(tree, plan)?;
    let s = |x| scores.score(x);
    let product = (s(plan.u) - s(plan.t)) * (s(plan.w) - s(plan.v));
    let outcome = if product > S::zero() {
        SignOutcome::Decrease
    } else if product < S::zero() {
        SignOutcome::Increase
    } else {
        SignOutcome::Tie
    };
    Ok(SwitchSign { outcome, product })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    /// `β` is the parent of `α`; `δ` is a child of `α`.
    LevelCaseParent,
    /// `α` lies outside the subtree of `β`; `δ` is the parent of `α`.
    LevelCaseNonparent,
    /// `α` lies in the subtree of `β` at depth two or more below it;
    /// `δ` is the parent of `α` and `ε` a child of `α`.
    LevelCaseGrandchild,
    /// Same-level pair with inverted children.
    SameLevel,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::LevelCaseParent => "LEVEL_CASE_PARENT",
            ViolationKind::LevelCaseNonparent => "LEVEL_CASE_NONPARENT",
            ViolationKind::LevelCaseGrandchild => "LEVEL_CASE_GRANDCHILD",
            ViolationKind::SameLevel => "SAME_LEVEL",
        }
    }
}

/// The named vertices of a violation. Unused roles are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub delta: Option<usize>,
    pub epsilon: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witnesses: Witnesses,
    pub plan: SwitchPlan,
}

/// Finds the first defect in scan order and the switch that removes it, or
/// `None` when the tree has no defect.
///
/// Level defects come first: the shallowest level `j` holding some `β` that a
/// deeper vertex out-scores; `β` is the smallest such label on level `j` and
/// `α` the smallest-labeled deeper vertex out-scoring it. Same-level defects
/// are scanned by level, then by labels of `α < β`; `γ` is the lowest-scored
/// child of `α` and `δ` the highest-scored child of `β`.
///
/// Requires canonical labeling and `q <= 1/(2n)`.
pub fn find_violation<S: Scalar>(
    tree: &LabeledTree,
    scores: &ScoreAssignment<S>,
) -> Result<Option<Violation>> {
    let n = tree.n();
    if scores.len() != n {
        return Err(Error::VertexCountMismatch {
            tree: n,
            scores: scores.len(),
        });
    }
    if n < 2 {
        return Ok(None);
    }
    if !scores.monotone_guaranteed() {
        return Err(Error::MonotonicityNotGuaranteed {
            q: scores.q().to_f64().unwrap_or(f64::NAN),
            bound: monotone_bound::<f64>(n),
        });
    }
    if !tree.degree_sequence().1 {
        return Err(Error::NotCanonicallyLabeled);
    }
    let levels = bfs_levels(tree);
    if let Some(v) = level_violation(&levels, scores)? {
        return Ok(Some(v));
    }
    Ok(same_level_violation(&levels, scores))
}

fn level_violation<S: Scalar>(
    levels: &Levels,
    scores: &ScoreAssignment<S>,
) -> Result<Option<Violation>> {
    let scr = |x: usize| scores.score(x);
    let order = levels.order();
    for j in 0..=levels.depth() {
        // Vertices strictly deeper than j, by label.
        let mut deeper: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&x| levels.level(x) > j)
            .collect();
        deeper.sort_unstable();
        for beta in levels.on_level(j) {
            let Some(alpha) = deeper.iter().copied().find(|&a| scr(a) > scr(beta)) else {
                continue;
            };
            let gamma = levels
                .parent(beta)
                .ok_or_else(|| Error::Invariant("root is out-scored by a deeper vertex".into()))?;
            let parent_of_alpha = levels.parent(alpha).expect("alpha is not the root");
            let first_child = |x: usize| {
                levels
                    .children(x)
                    .first()
                    .copied()
                    .ok_or_else(|| Error::Invariant(format!("vertex {x} has no child to move")))
            };
            let (kind, witnesses, moved) = if parent_of_alpha == beta {
                let delta = first_child(alpha)?;
                let w = Witnesses {
                    alpha,
                    beta,
                    gamma,
                    delta: Some(delta),
                    epsilon: None,
                };
                (ViolationKind::LevelCaseParent, w, delta)
            } else if levels.is_descendant(alpha, beta) {
                let epsilon = first_child(alpha)?;
                let w = Witnesses {
                    alpha,
                    beta,
                    gamma,
                    delta: Some(parent_of_alpha),
                    epsilon: Some(epsilon),
                };
                (ViolationKind::LevelCaseGrandchild, w, epsilon)
            } else {
                let w = Witnesses {
                    alpha,
                    beta,
                    gamma,
                    delta: Some(parent_of_alpha),
                    epsilon: None,
                };
                (ViolationKind::LevelCaseNonparent, w, parent_of_alpha)
            };
            // Delete {α, moved}, {γ, β}; add {α, γ}, {moved, β}.
            let plan = SwitchPlan::new(alpha, moved, gamma, beta);
            return Ok(Some(Violation {
                kind,
                witnesses,
                plan,
            }));
        }
    }
    Ok(None)
}

fn same_level_violation<S: Scalar>(
    levels: &Levels,
    scores: &ScoreAssignment<S>,
) -> Option<Violation> {
    let scr = |x: usize| scores.score(x);
    let by_score = |a: &usize, b: &usize| scr(*a).partial_cmp(&scr(*b)).expect("finite scores");
    for k in 0..=levels.depth() {
        let row = levels.on_level(k);
        for (i, &alpha) in row.iter().enumerate() {
            let Some(gamma) = levels.children(alpha).iter().copied().min_by(by_score) else {
                continue;
            };
            for &beta in &row[i + 1..] {
                if scr(alpha) <= scr(beta) {
                    continue;
                }
                let Some(delta) = levels.children(beta).iter().copied().max_by(by_score) else {
                    continue;
                };
                if scr(gamma) < scr(delta) {
                    // Delete {α, γ}, {δ, β}; add {α, δ}, {γ, β}.
                    let plan = SwitchPlan::new(alpha, gamma, delta, beta);
                    let witnesses = Witnesses {
                        alpha,
                        beta,
                        gamma,
                        delta: Some(delta),
                        epsilon: None,
                    };
                    return Some(Violation {
                        kind: ViolationKind::SameLevel,
                        witnesses,
                        plan,
                    });
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescentStep<S> {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub t: usize,
    pub kind: ViolationKind,
    pub pso_before: S,
    pub pso_after: S,
    pub so_before: S,
    pub so_after: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescentTrace<S> {
    pub q: S,
    pub steps: Vec<DescentStep<S>>,
}

impl<S: Scalar + Serialize> DescentTrace<S> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

/// Applies violation-removing switches until none is left.
///
/// Every step must strictly lower the pseudo-Sombor index, and the terminal
/// tree must equal the greedy tree; either failure is reported as an error.
pub fn descend<S: Scalar>(tree: &LabeledTree, q: S) -> Result<(LabeledTree, DescentTrace<S>)> {
    let mut trace = DescentTrace {
        q,
        steps: Vec::new(),
    };
    if tree.n() == 1 {
        return Ok((tree.clone(), trace));
    }
    let (degrees, canonical) = tree.degree_sequence();
    if !canonical {
        return Err(Error::NotCanonicallyLabeled);
    }
    let scores = score_assignment(tree, q)?;
    let mut current = tree.clone();
    let mut pso = pseudo_sombor(&current, &scores)?;
    let mut so = sombor::<S>(&current);
    while let Some(violation) = find_violation(&current, &scores)? {
        let next = apply_switch(&current, &violation.plan)?;
        if score_assignment(&next, q)? != scores {
            return Err(Error::Invariant("switch changed a vertex score".into()));
        }
        let next_pso = pseudo_sombor(&next, &scores)?;
        let next_so = sombor::<S>(&next);
        if next_pso.is_nan() || next_pso >= pso {
            return Err(Error::NoDecrease {
                step: trace.steps.len() + 1,
                before: pso.to_f64().unwrap_or(f64::NAN),
                after: next_pso.to_f64().unwrap_or(f64::NAN),
            });
        }
        let SwitchPlan { u, v, w, t } = violation.plan;
        trace.steps.push(DescentStep {
            u,
            v,
            w,
            t,
            kind: violation.kind,
            pso_before: pso,
            pso_after: next_pso,
            so_before: so,
            so_after: next_so,
        });
        current = next;
        pso = next_pso;
        so = next_so;
    }
    if current != build_greedy(&degrees)? {
        return Err(Error::TerminalNotGreedy {
            steps: trace.steps.len(),
        });
    }
    Ok((current, trace))
}
