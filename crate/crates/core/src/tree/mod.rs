//! Labeled trees on `1..=n`, rooted at vertex 1.

mod io;
mod prufer;

use std::collections::VecDeque;

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};

pub use prufer::{prufer_decode, prufer_encode, PruferCode};

/// A tree on the vertex set `1..=n`.
///
/// Adjacency lists are kept sorted, so derived equality and hashing are
/// edge-set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    adjacency: Vec<Vec<usize>>,
}

impl LabeledTree {
    /// Validates `edges` as a tree on `1..=n`.
    ///
    /// Checks run in order: label range, self-loops, duplicate edges, cycles,
    /// connectivity. Too many edges always surface as a cycle, too few as
    /// disconnection.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTree);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::LabelOutOfRange { label: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u - 1].push(v);
            adjacency[v - 1].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        for (i, list) in adjacency.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = ordered(i + 1, w[0]);
                return Err(Error::DuplicateEdge(a, b));
            }
        }

        let mut dsu = DisjointSets::new(n);
        for &(u, v) in edges {
            if !dsu.union(u - 1, v - 1) {
                let (a, b) = ordered(u, v);
                return Err(Error::Cycle(a, b));
            }
        }
        let components = n - edges.len();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(Self { adjacency })
    }

    /// The single-vertex tree.
    pub fn k1() -> Self {
        Self {
            adjacency: vec![Vec::new()],
        }
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.n() - 1
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n()
    }

    /// Sorted neighbors of `u`. Panics on a label out of range.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u - 1]
    }

    pub fn degree(&self, u: usize) -> Result<usize> {
        self.check_label(u)?;
        Ok(self.adjacency[u - 1].len())
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n() && self.adjacency[u - 1].binary_search(&v).is_ok()
    }

    pub fn check_label(&self, u: usize) -> Result<()> {
        if u == 0 || u > self.n() {
            Err(Error::LabelOutOfRange {
                label: u,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adjacency.iter().enumerate() {
            let u = i + 1;
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// `(deg(1), ..., deg(n))` sorted, plus whether the labeled vector was already non-increasing.
    pub fn degree_sequence(&self) -> (DegreeSequence, bool) {
        let degrees: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        let sorted = degrees.windows(2).all(|w| w[0] >= w[1]);
        let seq = DegreeSequence::new(degrees).expect("a tree has at least one vertex");
        (seq, sorted)
    }

    /// Degrees by label, index `u - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Breadth-first structure from root 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Levels {
    level: Vec<usize>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl Levels {
    pub fn level(&self, u: usize) -> usize {
        self.level[u - 1]
    }

    /// `None` for the root.
    pub fn parent(&self, u: usize) -> Option<usize> {
        self.parent[u - 1]
    }

    /// Children of `u` in increasing label order.
    pub fn children(&self, u: usize) -> &[usize] {
        &self.children[u - 1]
    }

    /// Traversal order: levels increasing, children grouped under their parents.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn depth(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Vertices on level `k`, in increasing label order.
    pub fn on_level(&self, k: usize) -> Vec<usize> {
        (1..=self.level.len())
            .filter(|&u| self.level[u - 1] == k)
            .collect()
    }

    /// True iff `descendant` lies in the subtree rooted at `ancestor` (itself included).
    pub fn is_descendant(&self, descendant: usize, ancestor: usize) -> bool {
        let mut x = descendant;
        while self.level(x) > self.level(ancestor) {
            x = self.parent(x).expect("non-root vertex has a parent");
        }
        x == ancestor
    }
}

/// Levels, parents and BFS order from the root 1, visiting children by increasing label.
pub fn bfs_levels(tree: &LabeledTree) -> Levels {
    let n = tree.n();
    let mut level = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([1usize]);
    level[0] = 0;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in tree.neighbors(u) {
            if level[v - 1] == usize::MAX {
                level[v - 1] = level[u - 1] + 1;
                parent[v - 1] = Some(u);
                children[u - 1].push(v);
                queue.push_back(v);
            }
        }
    }
    Levels {
        level,
        parent,
        children,
        order,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn figure_tree() -> LabeledTree {
        LabeledTree::new(
            10,
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 8),
                (3, 9),
                (4, 10),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_edge() {
        let t = LabeledTree::new(2, &[(2, 1)]).unwrap();
        assert_eq!(t.edges(), vec![(1, 2)]);
        assert_eq!(t.degree(1).unwrap(), 1);
    }

    #[test]
    fn figure_tree_degrees() {
        let t = figure_tree();
        assert_eq!(t.degree(1).unwrap(), 4);
        assert_eq!(t.degree(10).unwrap(), 1);
        let (d, sorted) = t.degree_sequence();
        assert_eq!(d.degrees(), &[4, 3, 3, 2, 1, 1, 1, 1, 1, 1]);
        assert!(sorted);
    }

    #[test]
    fn k1() {
        let t = LabeledTree::new(1, &[]).unwrap();
        assert_eq!(t, LabeledTree::k1());
        assert_eq!(t.degree(1).unwrap(), 0);
        assert!(t.edges().is_empty());
        assert_eq!(bfs_levels(&t).level(1), 0);
    }

    #[test]
    fn unsorted_labeling_is_flagged() {
        let t = LabeledTree::new(3, &[(1, 2), (2, 3)]).unwrap();
        let (d, sorted) = t.degree_sequence();
        assert_eq!(d.degrees(), &[2, 1, 1]);
        assert_eq!(t.degrees(), vec![1, 2, 1]);
        assert!(!sorted);
        let (_, sorted) = LabeledTree::new(2, &[(1, 2)]).unwrap().degree_sequence();
        assert!(sorted);
    }

    #[test]
    fn rejects_non_trees() {
        assert!(matches!(
            LabeledTree::new(3, &[(1, 2), (1, 3), (2, 3)]),
            Err(Error::Cycle(2, 3))
        ));
        assert!(matches!(
            LabeledTree::new(4, &[(1, 2), (3, 4)]),
            Err(Error::Disconnected { components: 2 })
        ));
        assert!(matches!(
            LabeledTree::new(3, &[(1, 2), (2, 1)]),
            Err(Error::DuplicateEdge(1, 2))
        ));
        assert!(matches!(
            LabeledTree::new(2, &[(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            LabeledTree::new(2, &[(1, 3)]),
            Err(Error::LabelOutOfRange { label: 3, n: 2 })
        ));
        assert!(matches!(
            LabeledTree::new(2, &[(0, 1)]),
            Err(Error::LabelOutOfRange { label: 0, .. })
        ));
        assert!(matches!(LabeledTree::new(0, &[]), Err(Error::EmptyTree)));
        assert!(LabeledTree::new(2, &[(1, 2)]).unwrap().degree(3).is_err());
    }

    #[test]
    fn figure_levels() {
        let lv = bfs_levels(&figure_tree());
        assert_eq!(lv.level(1), 0);
        for u in 2..=5 {
            assert_eq!(lv.level(u), 1);
        }
        for u in 6..=10 {
            assert_eq!(lv.level(u), 2);
        }
        assert_eq!(lv.order(), &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        assert_eq!(lv.children(2), &[6, 7]);
        assert_eq!(lv.on_level(1), vec![2, 3, 4, 5]);
        assert!(lv.is_descendant(10, 4));
        assert!(!lv.is_descendant(10, 3));
        assert!(lv.is_descendant(4, 4));
    }

    #[test]
    fn edge_levels() {
        let lv = bfs_levels(&LabeledTree::new(2, &[(1, 2)]).unwrap());
        assert_eq!(lv.level(2), 1);
        assert_eq!(lv.parent(2), Some(1));
        assert_eq!(lv.parent(1), None);
    }

    #[test]
    fn traversal_groups_children_under_parents() {
        // 1 - 4, 1 - 2, 4 - 3, 2 - 5
        let t = LabeledTree::new(5, &[(1, 4), (1, 2), (4, 3), (2, 5)]).unwrap();
        let lv = bfs_levels(&t);
        assert_eq!(lv.order(), &[1, 2, 4, 5, 3]);
        for u in 2..=5 {
            assert_eq!(lv.level(lv.parent(u).unwrap()) + 1, lv.level(u));
        }
    }
}
