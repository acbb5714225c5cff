//! Complete mistake trees.
//!
//! Internal nodes carry a domain point and `b` outgoing edges with pairwise
//! distinct labels; every root-to-leaf path has the same length. A branch
//! (a sequence of child indices) induces the pattern of `(x(v), y(e))` pairs
//! along it.

use alloc::vec;
use alloc::vec::Vec;

use crate::class::PatternMembership;
use crate::error::{Error, Result};
use crate::label::{Label, Point};
use crate::pattern::{Example, Pattern};

/// Read-only navigation of a complete tree. Lets adversaries walk trees that
/// are too deep to materialize.
pub trait TreeView {
    fn depth(&self) -> usize;
    fn out_degree(&self) -> usize;
    /// Point and edge labels of the node reached by `path`; `None` at a leaf.
    fn node(&self, path: &[usize]) -> Option<(Point, Vec<Label>)>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MistakeTree {
    Leaf,
    Node { x: Point, edges: Vec<(Label, MistakeTree)> },
}

impl MistakeTree {
    /// Internal node; edge labels must be pairwise distinct.
    pub fn node(x: Point, edges: Vec<(Label, MistakeTree)>) -> Result<Self> {
        for (i, (y, _)) in edges.iter().enumerate() {
            if edges[..i].iter().any(|(z, _)| z == y) {
                return Err(Error::InvalidParameter(alloc::format!("duplicate edge label {y}")));
            }
        }
        Ok(MistakeTree::Node { x, edges })
    }

    /// Complete tree whose level `i` uses point `layers[i].0` and edge labels
    /// `layers[i].1`.
    pub fn from_layers(layers: &[(Point, Vec<Label>)]) -> Result<Self> {
        match layers.split_first() {
            None => Ok(MistakeTree::Leaf),
            Some(((x, labels), rest)) => {
                let child = MistakeTree::from_layers(rest)?;
                MistakeTree::node(*x, labels.iter().map(|&y| (y, child.clone())).collect())
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            MistakeTree::Leaf => 0,
            MistakeTree::Node { edges, .. } => 1 + edges.first().map_or(0, |(_, c)| c.depth()),
        }
    }

    /// Out-degree of the root (0 for a leaf).
    pub fn out_degree(&self) -> usize {
        match self {
            MistakeTree::Leaf => 0,
            MistakeTree::Node { edges, .. } => edges.len(),
        }
    }

    /// Every internal node has exactly `b` distinct edge labels and all
    /// leaves sit at the same depth.
    pub fn is_complete(&self, b: usize) -> bool {
        fn walk(t: &MistakeTree, b: usize, depth: usize) -> bool {
            match t {
                MistakeTree::Leaf => depth == 0,
                MistakeTree::Node { edges, .. } => {
                    depth > 0
                        && edges.len() == b
                        && edges.iter().enumerate().all(|(i, (y, _))| edges[..i].iter().all(|(z, _)| z != y))
                        && edges.iter().all(|(_, c)| walk(c, b, depth - 1))
                }
            }
        }
        walk(self, b, self.depth())
    }

    /// The pattern induced by following child indices `branch` from the root
    /// to a leaf.
    pub fn branch_pattern(&self, branch: &[usize]) -> Result<Pattern> {
        let mut node = self;
        let mut pattern = Pattern::empty();
        for (depth, &i) in branch.iter().enumerate() {
            match node {
                MistakeTree::Leaf => return Err(Error::InvalidBranch { index: i, depth }),
                MistakeTree::Node { x, edges } => {
                    let (y, child) = edges.get(i).ok_or(Error::InvalidBranch { index: i, depth })?;
                    pattern.push(Example { x: *x, y: *y });
                    node = child;
                }
            }
        }
        if *node != MistakeTree::Leaf {
            return Err(Error::InvalidBranch { index: usize::MAX, depth: branch.len() });
        }
        Ok(pattern)
    }

    /// All root-to-leaf branches as child-index sequences.
    pub fn branches(&self) -> Vec<Vec<usize>> {
        match self {
            MistakeTree::Leaf => vec![Vec::new()],
            MistakeTree::Node { edges, .. } => edges
                .iter()
                .enumerate()
                .flat_map(|(i, (_, c))| {
                    c.branches().into_iter().map(move |mut b| {
                        b.insert(0, i);
                        b
                    })
                })
                .collect(),
        }
    }

    /// All branch patterns, in branch order.
    pub fn branch_patterns(&self) -> Vec<Pattern> {
        self.branches().iter().map(|b| self.branch_pattern(b).expect("enumerated branch is valid")).collect()
    }
}

/// True iff every branch of `tree` induces a member of `class`.
pub fn is_shattered<P: PatternMembership + ?Sized>(tree: &MistakeTree, class: &P) -> bool {
    fn walk<P: PatternMembership + ?Sized>(t: &MistakeTree, prefix: &mut Pattern, class: &P) -> bool {
        match t {
            MistakeTree::Leaf => class.admits(prefix),
            MistakeTree::Node { x, edges } => edges.iter().all(|(y, c)| {
                prefix.push(Example { x: *x, y: *y });
                let ok = walk(c, prefix, class);
                let mut v = core::mem::take(prefix).into_examples();
                v.pop();
                *prefix = Pattern::new(v);
                ok
            }),
        }
    }
    walk(tree, &mut Pattern::empty(), class)
}

impl TreeView for MistakeTree {
    fn depth(&self) -> usize {
        MistakeTree::depth(self)
    }

    fn out_degree(&self) -> usize {
        MistakeTree::out_degree(self)
    }

    fn node(&self, path: &[usize]) -> Option<(Point, Vec<Label>)> {
        let mut node = self;
        for &i in path {
            match node {
                MistakeTree::Leaf => return None,
                MistakeTree::Node { edges, .. } => node = &edges.get(i)?.1,
            }
        }
        match node {
            MistakeTree::Leaf => None,
            MistakeTree::Node { x, edges } => Some((*x, edges.iter().map(|(y, _)| *y).collect())),
        }
    }
}

/// A complete tree in which every node at depth `i` shares the point and edge
/// labels of layer `i`. Deep trees of this form are never materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredTree {
    layers: Vec<(Point, Vec<Label>)>,
}

impl LayeredTree {
    pub fn new(layers: Vec<(Point, Vec<Label>)>) -> Result<Self> {
        let b = layers.first().map_or(0, |(_, l)| l.len());
        for (_, labels) in &layers {
            if labels.len() != b {
                return Err(Error::InvalidParameter(alloc::format!(
                    "layer out-degree {} differs from {b}",
                    labels.len()
                )));
            }
            if labels.iter().enumerate().any(|(i, y)| labels[..i].contains(y)) {
                return Err(Error::InvalidParameter("duplicate edge label in layer".into()));
            }
        }
        Ok(LayeredTree { layers })
    }

    /// `depth` copies of the same point and edge labels.
    pub fn stationary(depth: usize, x: Point, labels: Vec<Label>) -> Result<Self> {
        LayeredTree::new(vec![(x, labels); depth])
    }

    pub fn layers(&self) -> &[(Point, Vec<Label>)] {
        &self.layers
    }
}

impl TreeView for LayeredTree {
    fn depth(&self) -> usize {
        self.layers.len()
    }

    fn out_degree(&self) -> usize {
        self.layers.first().map_or(0, |(_, l)| l.len())
    }

    fn node(&self, path: &[usize]) -> Option<(Point, Vec<Label>)> {
        self.layers.get(path.len()).cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::downward_closure;
    use alloc::collections::BTreeSet;

    fn two_level() -> MistakeTree {
        let leafy = |x: u32| {
            MistakeTree::node(Point(x), vec![(Label(0), MistakeTree::Leaf), (Label(1), MistakeTree::Leaf)]).unwrap()
        };
        MistakeTree::node(Point(0), vec![(Label(0), leafy(1)), (Label(1), leafy(2))]).unwrap()
    }

    #[test]
    fn depth_zero_branch_is_empty() {
        assert_eq!(MistakeTree::Leaf.branch_pattern(&[]).unwrap(), Pattern::empty());
        assert!(MistakeTree::Leaf.is_complete(3));
    }

    #[test]
    fn depth_one_branch() {
        let t = MistakeTree::node(Point(0), vec![(Label(0), MistakeTree::Leaf), (Label(1), MistakeTree::Leaf)])
            .unwrap();
        assert_eq!(t.branch_pattern(&[0]).unwrap(), Pattern::from_pairs(&[(0, 0)]));
        assert!(t.branch_pattern(&[2]).is_err());
        assert!(t.branch_pattern(&[]).is_err());
    }

    #[test]
    fn depth_two_branches_by_hand() {
        let t = two_level();
        assert!(t.is_complete(2));
        let got: BTreeSet<Pattern> = t.branch_patterns().into_iter().collect();
        let want: BTreeSet<Pattern> = [
            Pattern::from_pairs(&[(0, 0), (1, 0)]),
            Pattern::from_pairs(&[(0, 0), (1, 1)]),
            Pattern::from_pairs(&[(0, 1), (2, 0)]),
            Pattern::from_pairs(&[(0, 1), (2, 1)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn shattering_against_explicit_class() {
        let t = two_level();
        let seeds = t.branch_patterns();
        let class = downward_closure(seeds.clone(), 3, 2).unwrap();
        assert!(is_shattered(&t, &class));
        let partial = downward_closure(seeds[..3].to_vec(), 3, 2).unwrap();
        assert!(!is_shattered(&t, &partial));
        assert!(is_shattered(&MistakeTree::Leaf, &partial));
    }

    #[test]
    fn duplicate_edge_labels_rejected() {
        assert!(MistakeTree::node(Point(0), vec![(Label(1), MistakeTree::Leaf), (Label(1), MistakeTree::Leaf)])
            .is_err());
    }

    #[test]
    fn layered_view_matches_materialized() {
        let layers = vec![(Point(0), vec![Label(0), Label(2)]), (Point(1), vec![Label(1), Label(0)])];
        let lt = LayeredTree::new(layers.clone()).unwrap();
        let mt = MistakeTree::from_layers(&layers).unwrap();
        for path in [&[][..], &[0], &[1]] {
            assert_eq!(TreeView::node(&lt, path), TreeView::node(&mt, path));
        }
        assert_eq!(TreeView::node(&mt, &[1, 0]), None);
        assert_eq!(TreeView::depth(&lt), 2);
    }
}
