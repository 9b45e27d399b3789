use std::collections::VecDeque;

use crate::degseq::DegreeSequence;
use crate::error::Result;
use crate::tree::LabeledTree;

/// Builds the greedy tree `GT_D`, the tree whose breadth-first traversal is `1, 2, ..., n`.
///
/// The root takes `d_1` children, every later vertex `u` takes `d_u - 1`,
/// always the smallest unused labels, parents served in queue order.
pub fn build_greedy(degrees: &DegreeSequence) -> Result<LabeledTree> {
    degrees.ensure_realizable()?;
    let n = degrees.len();
    if n == 1 {
        return Ok(LabeledTree::k1());
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut queue = VecDeque::from([1usize]);
    let mut next = 2;
    while let Some(u) = queue.pop_front() {
        let wanted = if u == 1 {
            degrees.degree(1)
        } else {
            degrees.degree(u) - 1
        };
        for _ in 0..wanted {
            edges.push((u, next));
            queue.push_back(next);
            next += 1;
        }
    }
    debug_assert_eq!(next, n + 1);
    LabeledTree::new(n, &edges)
}
