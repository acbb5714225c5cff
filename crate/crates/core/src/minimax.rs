//! Horizon-bounded value of the realizable mistake game.
//!
//! The adversary picks a point, the learner answers with a `k`-list, the
//! adversary reveals any label that keeps the class nonempty, and the class is
//! restricted. `V_h` is the number of mistakes the adversary can force in `h`
//! rounds against the best learner:
//!
//! ```text
//! V_0(C) = 0
//! V_h(C) = max_x min_Λ max_{y : C_{x→y} ≠ ∅} ( 1[y ∉ Λ] + V_{h-1}(C_{x→y}) )
//! ```
//!
//! This solver shares nothing with [`crate::dimension`] beyond the class
//! interface; it enumerates every `k`-list explicitly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::class::ConceptClass;
use crate::error::{Error, Result};
use crate::label::{Label, Point};

pub struct MinimaxSolver<C: ConceptClass> {
    lists: Vec<Vec<Label>>,
    memo: BTreeMap<(C::Key, usize), usize>,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<Label>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(Label::new(i));
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl<C: ConceptClass> MinimaxSolver<C> {
    pub fn new(k: usize, label_count: usize) -> Result<Self> {
        if k == 0 || k >= label_count {
            return Err(Error::ListSizeOutOfRange { k, labels: label_count });
        }
        Ok(MinimaxSolver { lists: k_subsets(label_count, k), memo: BTreeMap::new() })
    }

    pub fn value(&mut self, class: &C, horizon: usize) -> usize {
        if horizon == 0 || class.is_empty() {
            return 0;
        }
        let key = (class.key(), horizon);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut best = 0;
        for x in 0..class.domain_size() {
            let replies: Vec<(Label, usize)> = (0..class.label_count())
                .filter_map(|y| {
                    let y = Label::new(y);
                    let r = class.restrict(Point::new(x), y);
                    (!r.is_empty()).then(|| (y, self.value(&r, horizon - 1)))
                })
                .collect();
            if replies.is_empty() {
                continue;
            }
            let learner_best = self
                .lists
                .iter()
                .map(|list| {
                    replies
                        .iter()
                        .map(|&(y, v)| usize::from(!list.contains(&y)) + v)
                        .max()
                        .expect("nonempty replies")
                })
                .min()
                .expect("at least one list");
            best = best.max(learner_best);
        }
        self.memo.insert(key, best);
        best
    }
}

pub fn minimax_value<C: ConceptClass>(class: &C, k: usize, horizon: usize) -> Result<usize> {
    let mut solver = MinimaxSolver::new(k, class.label_count())?;
    Ok(solver.value(class, horizon))
}

/// Iterates the horizon until `V_h = V_{h+1}` and returns that value. Fails if
/// no such `h <= cap` exists.
pub fn stabilized_minimax<C: ConceptClass>(class: &C, k: usize, cap: usize) -> Result<usize> {
    let mut solver = MinimaxSolver::new(k, class.label_count())?;
    let mut prev = solver.value(class, 0);
    for h in 1..=cap + 1 {
        let v = solver.value(class, h);
        if v == prev {
            return Ok(v);
        }
        prev = v;
    }
    Err(Error::NotStabilized { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::{HypothesisClass, MultiHypothesis, VersionSpace};
    use alloc::vec;

    #[test]
    fn subsets_enumerated() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(3, 1), vec![vec![Label(0)], vec![Label(1)], vec![Label(2)]]);
    }

    #[test]
    fn zero_horizon_is_zero() {
        let v = VersionSpace::from_class(HypothesisClass::all_functions(2, 3).unwrap());
        assert_eq!(minimax_value(&v, 2, 0).unwrap(), 0);
    }

    #[test]
    fn all_functions_two_points() {
        let v = VersionSpace::from_class(HypothesisClass::all_functions(2, 3).unwrap());
        assert_eq!(minimax_value(&v, 2, 1).unwrap(), 1);
        assert_eq!(minimax_value(&v, 2, 2).unwrap(), 2);
        assert_eq!(minimax_value(&v, 2, 5).unwrap(), 2);
        assert_eq!(stabilized_minimax(&v, 2, 5).unwrap(), 2);
    }

    #[test]
    fn infinite_class_does_not_stabilize() {
        let h = MultiHypothesis::from_lists(&[vec![0, 1]], 3).unwrap();
        let v = VersionSpace::from_class(HypothesisClass::new(vec![h], 1, 3, 2).unwrap());
        assert_eq!(minimax_value(&v, 1, 7).unwrap(), 7);
        assert_eq!(stabilized_minimax(&v, 1, 4), Err(Error::NotStabilized { cap: 4 }));
    }
}
