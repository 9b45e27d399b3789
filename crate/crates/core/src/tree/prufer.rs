use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::LabeledTree;
use crate::error::{Error, Result};

/// Prüfer code of a labeled tree on `n >= 2` vertices: `n - 2` labels in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PruferCode {
    n: usize,
    code: Vec<usize>,
}

impl PruferCode {
    pub fn new(n: usize, code: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::PruferTooSmall(n));
        }
        if code.len() != n - 2 {
            return Err(Error::PruferLength { len: code.len(), n });
        }
        if let Some(&label) = code.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::LabelOutOfRange { label, n });
        }
        Ok(Self { n, code })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.code
    }

    /// Occurrences of `u`, which equals `deg(u) - 1` in the decoded tree.
    pub fn occurrences(&self, u: usize) -> usize {
        self.code.iter().filter(|&&x| x == u).count()
    }
}

/// Classical encoding: remove the smallest-labeled leaf `n - 2` times, recording its neighbor.
pub fn prufer_encode(tree: &LabeledTree) -> Result<PruferCode> {
    let n = tree.n();
    if n < 2 {
        return Err(Error::PruferTooSmall(n));
    }
    let mut degree = tree.degrees();
    let mut removed = vec![false; n];
    let mut leaves: BinaryHeap<Reverse<usize>> = (1..=n)
        .filter(|&u| degree[u - 1] == 1)
        .map(Reverse)
        .collect();
    let mut code = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        removed[leaf - 1] = true;
        let parent = *tree
            .neighbors(leaf)
            .iter()
            .find(|&&v| !removed[v - 1])
            .expect("a leaf keeps one live neighbor");
        code.push(parent);
        degree[parent - 1] -= 1;
        if degree[parent - 1] == 1 {
            leaves.push(Reverse(parent));
        }
    }
    Ok(PruferCode { n, code })
}

/// Inverse of [`prufer_encode`].
pub fn prufer_decode(code: &PruferCode) -> LabeledTree {
    let n = code.n;
    let mut degree = vec![1usize; n];
    for &x in &code.code {
        degree[x - 1] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (1..=n)
        .filter(|&u| degree[u - 1] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &code.code {
        let Reverse(leaf) = leaves.pop().expect("a code always leaves a leaf available");
        edges.push((leaf, v));
        degree[v - 1] -= 1;
        if degree[v - 1] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two vertices remain");
    let Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a, b));
    LabeledTree::new(n, &edges).expect("a valid Prüfer code decodes to a tree")
}
