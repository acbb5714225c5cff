//! Multiplicative weights over `k`-list online functions.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::label::{Label, LabelList, ListDistribution, Point};
use crate::learners::RandomizedListLearner;

/// An adaptive expert: its list at round `t` may depend on `x_1..x_t` but
/// never on the true labels.
pub trait OnlineListFunction {
    /// List for the current round on point `x`.
    fn list(&mut self, x: Point) -> LabelList;
    /// Moves to the next round after `x` was presented.
    fn advance(&mut self, x: Point);
}

impl<T: OnlineListFunction + ?Sized> OnlineListFunction for Box<T> {
    fn list(&mut self, x: Point) -> LabelList {
        (**self).list(x)
    }
    fn advance(&mut self, x: Point) {
        (**self).advance(x)
    }
}

/// Expert with a fixed list per round, ignoring the points. Rounds past the
/// table repeat `fallback`.
#[derive(Clone, Debug)]
pub struct TableExpert {
    lists: Vec<LabelList>,
    fallback: LabelList,
    t: usize,
}

impl TableExpert {
    pub fn new(lists: Vec<LabelList>, fallback: LabelList) -> Self {
        TableExpert { lists, fallback, t: 0 }
    }
}

impl OnlineListFunction for TableExpert {
    fn list(&mut self, _x: Point) -> LabelList {
        self.lists.get(self.t).unwrap_or(&self.fallback).clone()
    }
    fn advance(&mut self, _x: Point) {
        self.t += 1;
    }
}

/// `γ = min(1/2, sqrt(ln n / T))`.
pub fn learning_rate(experts: usize, horizon: usize) -> f64 {
    let raw = libm::sqrt(libm::log(experts as f64) / horizon as f64);
    raw.min(0.5)
}

/// Weights below this are rescaled; predictions depend only on ratios.
const RENORMALIZE_BELOW: f64 = 1e-300;

/// Weight totals around one update: `after = before · (1 - γ·l)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightUpdate {
    pub before: f64,
    pub after: f64,
    pub weighted_loss: f64,
}

pub struct MultiplicativeWeights<E> {
    experts: Vec<E>,
    weights: Vec<f64>,
    gamma: f64,
    k: usize,
    labels: usize,
    pending: Option<(Point, Vec<LabelList>)>,
    last_update: Option<WeightUpdate>,
}

impl<E: OnlineListFunction> MultiplicativeWeights<E> {
    pub fn new(experts: Vec<E>, horizon: usize, k: usize, labels: usize) -> Result<Self> {
        if experts.is_empty() {
            return Err(Error::NoExperts);
        }
        if horizon == 0 {
            return Err(Error::InvalidParameter("horizon must be positive".into()));
        }
        if k == 0 || k > labels {
            return Err(Error::ListSizeOutOfRange { k, labels });
        }
        let gamma = learning_rate(experts.len(), horizon);
        let n = experts.len();
        Ok(MultiplicativeWeights {
            experts,
            weights: vec![1.0; n],
            gamma,
            k,
            labels,
            pending: None,
            last_update: None,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn len(&self) -> usize {
        self.experts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.experts.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn last_update(&self) -> Option<WeightUpdate> {
        self.last_update
    }

    fn lists_for(&mut self, x: Point) -> Vec<LabelList> {
        match self.pending.take() {
            Some((px, lists)) if px == x => lists,
            _ => self.experts.iter_mut().map(|e| e.list(x)).collect(),
        }
    }

    fn check_lists(&self, lists: &[LabelList]) -> Result<()> {
        for l in lists {
            if l.len() != self.k {
                return Err(Error::BadListSize { expected: self.k, got: l.len() });
            }
            if let Some(y) = l.iter().find(|y| y.index() >= self.labels) {
                return Err(Error::LabelOutOfRange { label: y.index(), labels: self.labels });
            }
        }
        Ok(())
    }
}

impl<E: OnlineListFunction> RandomizedListLearner for MultiplicativeWeights<E> {
    fn list_size(&self) -> usize {
        self.k
    }

    fn label_count(&self) -> usize {
        self.labels
    }

    fn marginals(&mut self, x: &Point) -> Result<ListDistribution> {
        let lists = self.lists_for(*x);
        self.check_lists(&lists)?;
        let total: f64 = self.weights.iter().sum();
        let mut m = vec![0.0; self.labels];
        for (w, list) in self.weights.iter().zip(&lists) {
            let share = w / total;
            for y in list.iter() {
                m[y.index()] += share;
            }
        }
        for v in &mut m {
            *v = v.min(1.0);
        }
        self.pending = Some((*x, lists));
        ListDistribution::new(m, self.k)
    }

    fn feed(&mut self, x: &Point, y: Label) -> Result<()> {
        let lists = self.lists_for(*x);
        self.check_lists(&lists)?;
        let before: f64 = self.weights.iter().sum();
        let mut missed = 0.0;
        for (w, list) in self.weights.iter_mut().zip(&lists) {
            if !list.contains(y) {
                missed += *w;
                *w *= 1.0 - self.gamma;
            }
        }
        let after: f64 = self.weights.iter().sum();
        self.last_update = Some(WeightUpdate { before, after, weighted_loss: missed / before });
        if after < RENORMALIZE_BELOW {
            for w in &mut self.weights {
                *w /= after;
            }
        }
        for e in &mut self.experts {
            e.advance(*x);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Label;

    fn single(y: u32) -> LabelList {
        LabelList::new(vec![Label(y)], 3).unwrap()
    }

    #[test]
    fn gamma_arithmetic() {
        assert!((learning_rate(2, 100) - 0.083255461).abs() < 1e-8);
        assert_eq!(learning_rate(1000, 1), 0.5);
        assert_eq!(learning_rate(1, 50), 0.0);
    }

    #[test]
    fn no_experts_rejected() {
        let r = MultiplicativeWeights::<TableExpert>::new(vec![], 10, 1, 2);
        assert!(matches!(r, Err(Error::NoExperts)));
    }

    #[test]
    fn single_expert_copies_its_losses() {
        let lists = vec![single(0), single(1), single(2), single(0)];
        let e = TableExpert::new(lists.clone(), single(0));
        let mut mw = MultiplicativeWeights::new(vec![e], 4, 1, 3).unwrap();
        let ys = [0u32, 2, 2, 1];
        for (t, &y) in ys.iter().enumerate() {
            let m = mw.marginals(&Point(0)).unwrap();
            let expert_loss = if lists[t].contains(Label(y)) { 0.0 } else { 1.0 };
            assert_eq!(m.loss(Label(y)), expert_loss);
            mw.feed(&Point(0), Label(y)).unwrap();
        }
    }

    #[test]
    fn weight_identity() {
        let experts = (0..3).map(|i| TableExpert::new(vec![single(i); 5], single(i))).collect();
        let mut mw = MultiplicativeWeights::new(experts, 5, 1, 3).unwrap();
        for y in [0u32, 0, 1, 2, 0] {
            mw.marginals(&Point(0)).unwrap();
            mw.feed(&Point(0), Label(y)).unwrap();
            let u = mw.last_update().unwrap();
            assert!((u.after - u.before * (1.0 - mw.gamma() * u.weighted_loss)).abs() < 1e-12);
        }
    }
}
