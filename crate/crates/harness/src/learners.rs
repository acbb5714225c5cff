//! Small deterministic learners used as opponents for the tree adversary.

use lol_core::learners::{ConstantListLearner, ListLearner};
use lol_core::{Label, LabelList, Point, Result};

/// Predicts `{t, t+1, ..., t+k-1} mod L` in round `t`.
#[derive(Clone, Debug)]
pub struct CyclicListLearner {
    labels: usize,
    k: usize,
    t: usize,
}

impl CyclicListLearner {
    pub fn new(labels: usize, k: usize) -> Self {
        CyclicListLearner { labels, k, t: 0 }
    }
}

impl ListLearner for CyclicListLearner {
    fn list_size(&self) -> usize {
        self.k
    }
    fn label_count(&self) -> usize {
        self.labels
    }
    fn predict(&mut self, _x: &Point) -> Result<LabelList> {
        LabelList::new((0..self.k).map(|i| Label::new((self.t + i) % self.labels)).collect(), self.labels)
    }
    fn feed(&mut self, _x: &Point, _y: Label) -> Result<()> {
        self.t += 1;
        Ok(())
    }
}

/// Predicts the `k` most recently seen distinct labels, padded with the
/// smallest unseen ones.
#[derive(Clone, Debug)]
pub struct RecentLabelsLearner {
    labels: usize,
    k: usize,
    recent: Vec<Label>,
}

impl RecentLabelsLearner {
    pub fn new(labels: usize, k: usize) -> Self {
        RecentLabelsLearner { labels, k, recent: Vec::new() }
    }
}

impl ListLearner for RecentLabelsLearner {
    fn list_size(&self) -> usize {
        self.k
    }
    fn label_count(&self) -> usize {
        self.labels
    }
    fn predict(&mut self, _x: &Point) -> Result<LabelList> {
        let mut list: Vec<Label> = self.recent.iter().rev().take(self.k).copied().collect();
        let pad: Vec<Label> = (0..self.labels).map(Label::new).filter(|y| !list.contains(y)).collect();
        list.extend(pad.into_iter().take(self.k - list.len()));
        LabelList::new(list, self.labels)
    }
    fn feed(&mut self, _x: &Point, y: Label) -> Result<()> {
        self.recent.retain(|&z| z != y);
        self.recent.push(y);
        Ok(())
    }
}

/// The fixed list `{0, ..., k-1}`.
pub fn constant_learner(labels: usize, k: usize) -> ConstantListLearner {
    ConstantListLearner::new(LabelList::first(k), labels)
}
