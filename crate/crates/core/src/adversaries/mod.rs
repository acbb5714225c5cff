//! Adversaries that force list learners to err.
//!
//! Deterministic learners are walked down a mistake tree along an edge their
//! list misses. Randomized learners are interrogated through their exact
//! marginals, so every expected-loss claim becomes a per-round equality or
//! inequality rather than a Monte-Carlo estimate.

use alloc::format;
use alloc::vec::Vec;
use rand::Rng;

use crate::error::{Error, Result};
use crate::label::{Label, ListDistribution};
use crate::learners::{ListLearner, Prediction, RandomizedListLearner};
use crate::pattern::{Example, Pattern};
use crate::tree::TreeView;

pub mod corrupted;
pub mod extremal;
pub mod monotone;
pub mod symdiff;

pub use corrupted::{corrupted_branch_sequence, item2_loss, item2_round_loss, CorruptedBranch};
pub use extremal::{extremal_p1, extremal_p2_run, p2_class_finite, p2_horizon, p2_opt, P1Learner, P2Soa};
pub use monotone::{is_monotone_member, separation_tree, MonotoneLearner};
pub use symdiff::{symmetric_difference_sequence, two_hypothesis_opt};

/// The sequence an adversary produced and what the learner answered.
#[derive(Clone, Debug, PartialEq)]
pub struct AdversaryTranscript {
    pub sequence: Pattern,
    pub predictions: Vec<Prediction>,
    /// Realized loss for list predictions, exact expected loss for
    /// distributions.
    pub losses: Vec<f64>,
}

impl AdversaryTranscript {
    fn new() -> Self {
        AdversaryTranscript { sequence: Pattern::empty(), predictions: Vec::new(), losses: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.losses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.losses.is_empty()
    }

    pub fn mistakes(&self) -> usize {
        self.losses.iter().filter(|&&l| l > 0.5).count()
    }

    pub fn expected_loss(&self) -> f64 {
        self.losses.iter().sum()
    }
}

fn check_degree<T: TreeView + ?Sized>(tree: &T, k: usize) -> Result<()> {
    if tree.depth() > 0 && tree.out_degree() != k + 1 {
        return Err(Error::InvalidParameter(format!(
            "tree out-degree {} does not match list size {k} + 1",
            tree.out_degree()
        )));
    }
    Ok(())
}

/// Walks `tree` from the root, always following the first edge whose label
/// the learner's list misses. Every round is a mistake.
pub fn tree_adversary<T, L>(tree: &T, learner: &mut L) -> Result<AdversaryTranscript>
where
    T: TreeView + ?Sized,
    L: ListLearner + ?Sized,
{
    check_degree(tree, learner.list_size())?;
    let mut out = AdversaryTranscript::new();
    let mut path = Vec::with_capacity(tree.depth());
    while let Some((x, edges)) = tree.node(&path) {
        let list = learner.predict(&x)?;
        let (i, y) = edges
            .iter()
            .enumerate()
            .find(|(_, y)| !list.contains(**y))
            .map(|(i, y)| (i, *y))
            .expect("k+1 distinct edge labels cannot all lie in a k-list");
        learner.feed(&x, y)?;
        out.sequence.push(Example { x, y });
        out.predictions.push(Prediction::List(list));
        out.losses.push(1.0);
        path.push(i);
    }
    Ok(out)
}

/// `1 - Σ_{y ∈ edges} m(y) / |edges|`: expected loss when the label is uniform
/// over the edge labels.
pub fn uniform_edge_loss(dist: &ListDistribution, edges: &[Label]) -> f64 {
    let covered: f64 = edges.iter().map(|&y| dist.get(y)).sum();
    1.0 - covered / edges.len() as f64
}

/// Descends along uniformly random edges, recording the exact expected loss of
/// each round under the uniform edge label.
pub fn random_branch_adversary<T, L, R>(tree: &T, learner: &mut L, rng: &mut R) -> Result<AdversaryTranscript>
where
    T: TreeView + ?Sized,
    L: RandomizedListLearner + ?Sized,
    R: Rng + ?Sized,
{
    check_degree(tree, learner.list_size())?;
    let mut out = AdversaryTranscript::new();
    let mut path = Vec::with_capacity(tree.depth());
    while let Some((x, edges)) = tree.node(&path) {
        let dist = learner.marginals(&x)?;
        let loss = uniform_edge_loss(&dist, &edges);
        let i = rng.gen_range(0..edges.len());
        let y = edges[i];
        learner.feed(&x, y)?;
        out.sequence.push(Example { x, y });
        out.predictions.push(Prediction::Distribution(dist));
        out.losses.push(loss);
        path.push(i);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::list_littlestone_dim;
    use crate::hypothesis::{HypothesisClass, VersionSpace};
    use crate::label::{LabelList, Point};
    use crate::learners::{ConstantListLearner, ListSoa, UniformListLearner};
    use crate::tree::{is_shattered, LayeredTree, MistakeTree};
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn depth_zero_is_empty() {
        let mut c = ConstantListLearner::new(LabelList::first(1), 2);
        let t = tree_adversary(&MistakeTree::Leaf, &mut c).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.mistakes(), 0);
    }

    #[test]
    fn p1_witness_forces_two_mistakes() {
        let class = VersionSpace::from_class(HypothesisClass::all_functions(2, 3).unwrap());
        let res = list_littlestone_dim(&class, 2).unwrap();
        let tree = res.witness.unwrap();
        assert_eq!(tree.depth(), 2);
        let mut soa = ListSoa::new(class.clone(), 2).unwrap();
        let t = tree_adversary(&tree, &mut soa).unwrap();
        assert_eq!(t.mistakes(), 2);
        assert!(class.admits(&t.sequence));
        let mut c = ConstantListLearner::new(LabelList::first(2), 3);
        assert_eq!(tree_adversary(&tree, &mut c).unwrap().mistakes(), 2);
        assert!(is_shattered(&tree, &class));
    }

    #[test]
    fn wrong_degree_rejected() {
        let tree = LayeredTree::stationary(3, Point(0), vec![Label(0), Label(1)]).unwrap();
        let mut c = ConstantListLearner::new(LabelList::first(2), 3);
        assert!(tree_adversary(&tree, &mut c).is_err());
    }

    #[test]
    fn random_branch_best_case_loss() {
        let tree = LayeredTree::stationary(10, Point(0), vec![Label(0), Label(1), Label(2)]).unwrap();
        let mut u = UniformListLearner::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_branch_adversary(&tree, &mut u, &mut rng).unwrap();
        for l in &t.losses {
            assert!((l - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!(t.expected_loss() >= 10.0 / 3.0 - 1e-9);
    }
}
