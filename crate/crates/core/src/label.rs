use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::TOLERANCE;

/// Index of a label in `[0, L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u32);

impl Label {
    pub fn new(index: usize) -> Self {
        Label(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of a point in a finite domain `[0, |X|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub u32);

impl Point {
    pub fn new(index: usize) -> Self {
        Point(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of `k` distinct labels, kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelList {
    labels: Vec<Label>,
}

impl LabelList {
    /// Builds a list from arbitrary labels; rejects duplicates and labels
    /// outside `[0, label_count)`.
    pub fn new(mut labels: Vec<Label>, label_count: usize) -> Result<Self> {
        labels.sort_unstable();
        let len = labels.len();
        labels.dedup();
        if labels.len() != len {
            return Err(Error::BadListSize { expected: len, got: labels.len() });
        }
        if let Some(&bad) = labels.iter().find(|l| l.index() >= label_count) {
            return Err(Error::LabelOutOfRange { label: bad.index(), labels: label_count });
        }
        Ok(LabelList { labels })
    }

    /// Labels `0..k`.
    pub fn first(k: usize) -> Self {
        LabelList { labels: (0..k).map(Label::new).collect() }
    }

    pub(crate) fn from_sorted_unchecked(labels: Vec<Label>) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        LabelList { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, y: Label) -> bool {
        self.labels.binary_search(&y).is_ok()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.labels.iter().copied()
    }

    /// 1-based position of `y` in ascending order.
    pub fn ordinal(&self, y: Label) -> Option<usize> {
        self.labels.binary_search(&y).ok().map(|i| i + 1)
    }
}

/// Marginal inclusion probabilities of a randomized `k`-list prediction.
///
/// Entry `y` is the probability that `y` is in the predicted list; entries
/// lie in `[0, 1]` and sum to `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ListDistribution {
    marginals: Vec<f64>,
    k: usize,
}

impl ListDistribution {
    pub fn new(marginals: Vec<f64>, k: usize) -> Result<Self> {
        let mut sum = 0.0;
        for (y, &m) in marginals.iter().enumerate() {
            if !m.is_finite() || !(-TOLERANCE..=1.0 + TOLERANCE).contains(&m) {
                return Err(Error::InvalidDistribution(format!("marginal of label {y} is {m}")));
            }
            sum += m;
        }
        if (sum - k as f64).abs() > TOLERANCE * (1.0 + marginals.len() as f64) {
            return Err(Error::InvalidDistribution(format!("marginals sum to {sum}, expected {k}")));
        }
        if k > marginals.len() {
            return Err(Error::ListSizeOutOfRange { k, labels: marginals.len() });
        }
        Ok(ListDistribution { marginals, k })
    }

    /// Point mass on a deterministic list.
    pub fn indicator(list: &LabelList, label_count: usize) -> Self {
        let mut marginals = alloc::vec![0.0; label_count];
        for y in list.iter() {
            marginals[y.index()] = 1.0;
        }
        ListDistribution { marginals, k: list.len() }
    }

    /// Every label with probability `k / L`.
    pub fn uniform(label_count: usize, k: usize) -> Self {
        let m = k as f64 / label_count as f64;
        ListDistribution { marginals: alloc::vec![m; label_count], k }
    }

    pub fn marginals(&self) -> &[f64] {
        &self.marginals
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn label_count(&self) -> usize {
        self.marginals.len()
    }

    pub fn get(&self, y: Label) -> f64 {
        self.marginals[y.index()]
    }

    /// Probability that `y` is missed: `1 - marginal(y)`.
    pub fn loss(&self, y: Label) -> f64 {
        1.0 - self.marginals[y.index()]
    }
}
