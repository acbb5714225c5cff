//! A learnable pattern class that no learnable hypothesis class extends.
//!
//! Members are binary patterns whose labels never increase and which never
//! give one point both labels. One mistake suffices to learn it, yet any
//! hypothesis class containing it realizes every labeling of distinct points
//! (reorder a branch so its 1-labels come first), so it shatters binary trees
//! of every depth its domain allows.

use alloc::vec;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::class::PatternMembership;
use crate::error::{Error, Result};
use crate::label::{Label, LabelList, Point};
use crate::learners::ListLearner;
use crate::pattern::{Example, Pattern};
use crate::tree::{is_shattered, MistakeTree};

pub fn is_monotone_member(s: &Pattern) -> bool {
    let binary = s.iter().all(|z| z.y.index() <= 1);
    let non_increasing = s.windows(2).all(|w| w[0].y >= w[1].y);
    let contradiction_free = s.iter().all(|a| s.iter().all(|b| a.x != b.x || a.y == b.y));
    binary && non_increasing && contradiction_free
}

/// Membership oracle for the monotone class.
#[derive(Clone, Copy, Debug, Default)]
pub struct MonotoneClass;

impl PatternMembership for MonotoneClass {
    fn admits(&self, s: &Pattern) -> bool {
        is_monotone_member(s)
    }
}

/// Predicts `{1}` until the first mistake, then `{0}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MonotoneLearner {
    switched: bool,
}

impl MonotoneLearner {
    pub fn new() -> Self {
        MonotoneLearner::default()
    }
}

impl ListLearner for MonotoneLearner {
    fn list_size(&self) -> usize {
        1
    }

    fn label_count(&self) -> usize {
        2
    }

    fn predict(&mut self, _x: &Point) -> Result<LabelList> {
        let y = if self.switched { 0 } else { 1 };
        LabelList::new(vec![Label(y)], 2)
    }

    fn feed(&mut self, _x: &Point, y: Label) -> Result<()> {
        if y == Label(0) {
            self.switched = true;
        }
        Ok(())
    }
}

/// A random member of length `len` over points `0..domain`: a prefix of
/// 1-labels and a suffix of 0-labels drawn from disjoint halves of a shuffled
/// domain.
pub fn random_monotone_pattern<R: Rng + ?Sized>(len: usize, domain: usize, rng: &mut R) -> Pattern {
    let mut points: Vec<usize> = (0..domain.max(2)).collect();
    points.shuffle(rng);
    let split = rng.gen_range(1..points.len());
    let (ones, zeros) = points.split_at(split);
    let change = rng.gen_range(0..=len);
    (0..len)
        .map(|t| {
            let (pool, y) = if t < change { (ones, 1) } else { (zeros, 0) };
            Example::new(pool[rng.gen_range(0..pool.len())], y)
        })
        .collect()
}

/// Binary tree of the given depth whose level `i` asks point `i`, checked to
/// be shattered by `class`. Distinct points along every branch rule out
/// contradictions, so any class extending the monotone class passes.
pub fn separation_tree<P: PatternMembership + ?Sized>(class: &P, depth: usize, domain: usize) -> Result<MistakeTree> {
    if depth > domain {
        return Err(Error::InvalidParameter(alloc::format!("depth {depth} exceeds the {domain}-point domain budget")));
    }
    let layers: Vec<(Point, Vec<Label>)> = (0..depth).map(|i| (Point::new(i), vec![Label(0), Label(1)])).collect();
    let tree = MistakeTree::from_layers(&layers)?;
    if !is_shattered(&tree, class) {
        return Err(Error::InconsistentClass("class does not realize every branch of the separation tree".into()));
    }
    Ok(tree)
}

/// True when `class` admits every member over distinct points of
/// `0..domain`, of length at most `domain`.
pub fn extends_monotone<P: PatternMembership + ?Sized>(class: &P, domain: usize) -> bool {
    fn grow<P: PatternMembership + ?Sized>(class: &P, prefix: &mut Vec<Example>, used: &mut Vec<bool>) -> bool {
        if !class.admits(&Pattern::new(prefix.clone())) {
            return false;
        }
        let floor = prefix.last().map_or(1, |z| z.y.index());
        for x in 0..used.len() {
            if used[x] {
                continue;
            }
            for y in 0..=floor {
                used[x] = true;
                prefix.push(Example::new(x, y));
                let ok = grow(class, prefix, used);
                prefix.pop();
                used[x] = false;
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    grow(class, &mut Vec::new(), &mut vec![false; domain])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::HypothesisClass;
    use crate::learners::{pattern_stream, run_deterministic};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn member_and_learner() {
        let s = Pattern::from_pairs(&[(0, 1), (1, 1), (2, 0), (3, 0)]);
        assert!(is_monotone_member(&s));
        let trace = run_deterministic(&mut MonotoneLearner::new(), pattern_stream(&s)).unwrap();
        assert_eq!(trace.mistakes(), 1);
    }

    #[test]
    fn increasing_labels_rejected() {
        assert!(!is_monotone_member(&Pattern::from_pairs(&[(0, 0), (1, 1)])));
        assert!(!is_monotone_member(&Pattern::from_pairs(&[(0, 1), (0, 0)])));
    }

    #[test]
    fn random_members_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            assert!(is_monotone_member(&random_monotone_pattern(8, 6, &mut rng)));
        }
    }

    #[test]
    fn all_binary_functions_extend_and_separate() {
        let h = HypothesisClass::all_functions(3, 2).unwrap();
        assert!(extends_monotone(&h, 3));
        let tree = separation_tree(&h, 3, 3).unwrap();
        assert_eq!(tree.depth(), 3);
        let thin = HypothesisClass::from_table(&[vec![1, 1, 0], vec![1, 0, 0]], 3, 2).unwrap();
        assert!(!extends_monotone(&thin, 3));
        assert!(separation_tree(&thin, 3, 3).is_err());
    }
}
