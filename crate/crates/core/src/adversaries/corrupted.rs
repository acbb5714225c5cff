//! Random branches of a `k_H`-ary tree with a `p` fraction of labels moved
//! off the tree.
//!
//! A `k_H`-list learner sees each round's label drawn from the node's edge
//! set `L_t` with probability `1 - p` and from its complement otherwise, so its
//! loss is at least `p` per round while the best hypothesis errs only on the
//! corrupted rounds.

use alloc::format;
use alloc::vec::Vec;
use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::label::{Label, ListDistribution};
use crate::pattern::{Example, Pattern};
use crate::tree::TreeView;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorruptedBranch {
    pub sequence: Pattern,
    /// The uncorrupted branch, realized by any class shattering the tree.
    pub clean: Pattern,
    /// 0-based positions whose label was replaced, ascending.
    pub corrupted: Vec<usize>,
    /// Edge labels `L_t` of every visited node.
    pub edge_sets: Vec<Vec<Label>>,
}

/// Draws the corrupted branch for `p = p_num / p_den`.
pub fn corrupted_branch_sequence<T, R>(
    tree: &T,
    labels: usize,
    p_num: u64,
    p_den: u64,
    rng: &mut R,
) -> Result<CorruptedBranch>
where
    T: TreeView + ?Sized,
    R: Rng + ?Sized,
{
    let depth = tree.depth();
    let kh = tree.out_degree();
    if p_den == 0 || p_num * (kh as u64 + 1) > p_den {
        return Err(Error::InvalidParameter(format!("p = {p_num}/{p_den} outside [0, 1/(k_H+1)]")));
    }
    if !(p_num * depth as u64).is_multiple_of(p_den) {
        return Err(Error::InvalidParameter(format!("p·T = {p_num}·{depth}/{p_den} is not an integer")));
    }
    let flips = (p_num * depth as u64 / p_den) as usize;
    if flips > 0 && kh >= labels {
        return Err(Error::InvalidParameter("no labels outside the edge sets".into()));
    }

    let mut clean = Pattern::empty();
    let mut edge_sets = Vec::with_capacity(depth);
    let mut path = Vec::with_capacity(depth);
    while let Some((x, edges)) = tree.node(&path) {
        let i = rng.gen_range(0..edges.len());
        clean.push(Example { x, y: edges[i] });
        edge_sets.push(edges);
        path.push(i);
    }

    let mut corrupted = index::sample(rng, depth, flips).into_vec();
    corrupted.sort_unstable();
    let mut examples = clean.examples().to_vec();
    for &t in &corrupted {
        let outside: Vec<Label> = (0..labels).map(Label::new).filter(|y| !edge_sets[t].contains(y)).collect();
        examples[t].y = outside[rng.gen_range(0..outside.len())];
    }
    Ok(CorruptedBranch { sequence: Pattern::new(examples), clean, corrupted, edge_sets })
}

/// `(1-p)·β/k_H + p·(L - k_H - β)/(L - k_H)` with `β` the learner's marginal
/// mass outside `L_t`.
pub fn item2_loss(p: f64, beta: f64, kh: usize, labels: usize) -> f64 {
    let (kh, labels) = (kh as f64, labels as f64);
    (1.0 - p) * beta / kh + p * (labels - kh - beta) / (labels - kh)
}

/// Per-round mistake probability read directly off the marginals: the label
/// is uniform on `L_t` with probability `1 - p` and uniform off it otherwise.
pub fn item2_round_loss(dist: &ListDistribution, edges: &[Label], p: f64) -> f64 {
    let labels = dist.label_count();
    let (mut inside, mut outside) = (0.0, 0.0);
    for y in 0..labels {
        let q = 1.0 - dist.get(Label::new(y));
        if edges.contains(&Label::new(y)) {
            inside += q;
        } else {
            outside += q;
        }
    }
    (1.0 - p) * inside / edges.len() as f64 + p * outside / (labels - edges.len()) as f64
}
