//! Deterministic and randomized `k`-list learners.
//!
//! A deterministic learner answers with a [`LabelList`]; a randomized one with
//! the marginal inclusion vector of its random list ([`ListDistribution`]).
//! Randomized learners are scored by exact expected loss `1 - marginal(y)`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::label::{Label, LabelList, ListDistribution, Point};
use crate::pattern::Pattern;

pub mod agnostic;
pub mod cover;
pub mod hybrid;
pub mod mw;
pub mod perceptron;
pub mod sampling;
pub mod soa;

pub use agnostic::{AnytimeAgnostic, FixedHorizonAgnostic};
pub use cover::{canonical_k_cover, CoverExpert, CoverExpertParams, CoverFamily};
pub use hybrid::HybridLearner;
pub use mw::{MultiplicativeWeights, OnlineListFunction, TableExpert};
pub use perceptron::ListPerceptron;
pub use sampling::madow_sample;
pub use soa::{ListSoa, SoaOracle};

pub trait ListLearner<X: ?Sized = Point> {
    fn list_size(&self) -> usize;
    fn label_count(&self) -> usize;
    fn predict(&mut self, x: &X) -> Result<LabelList>;
    fn feed(&mut self, x: &X, y: Label) -> Result<()>;
}

pub trait RandomizedListLearner<X: ?Sized = Point> {
    fn list_size(&self) -> usize;
    fn label_count(&self) -> usize;
    fn marginals(&mut self, x: &X) -> Result<ListDistribution>;
    fn feed(&mut self, x: &X, y: Label) -> Result<()>;
}

impl<X: ?Sized, T: ListLearner<X> + ?Sized> ListLearner<X> for Box<T> {
    fn list_size(&self) -> usize {
        (**self).list_size()
    }
    fn label_count(&self) -> usize {
        (**self).label_count()
    }
    fn predict(&mut self, x: &X) -> Result<LabelList> {
        (**self).predict(x)
    }
    fn feed(&mut self, x: &X, y: Label) -> Result<()> {
        (**self).feed(x, y)
    }
}

impl<X: ?Sized, T: RandomizedListLearner<X> + ?Sized> RandomizedListLearner<X> for Box<T> {
    fn list_size(&self) -> usize {
        (**self).list_size()
    }
    fn label_count(&self) -> usize {
        (**self).label_count()
    }
    fn marginals(&mut self, x: &X) -> Result<ListDistribution> {
        (**self).marginals(x)
    }
    fn feed(&mut self, x: &X, y: Label) -> Result<()> {
        (**self).feed(x, y)
    }
}

/// Views a deterministic learner as a randomized one with 0/1 marginals.
pub struct PointMass<L>(pub L);

impl<X: ?Sized, L: ListLearner<X>> RandomizedListLearner<X> for PointMass<L> {
    fn list_size(&self) -> usize {
        self.0.list_size()
    }
    fn label_count(&self) -> usize {
        self.0.label_count()
    }
    fn marginals(&mut self, x: &X) -> Result<ListDistribution> {
        let list = self.0.predict(x)?;
        Ok(ListDistribution::indicator(&list, self.0.label_count()))
    }
    fn feed(&mut self, x: &X, y: Label) -> Result<()> {
        self.0.feed(x, y)
    }
}

/// Always predicts the same list.
#[derive(Clone, Debug)]
pub struct ConstantListLearner {
    list: LabelList,
    labels: usize,
}

impl ConstantListLearner {
    pub fn new(list: LabelList, labels: usize) -> Self {
        ConstantListLearner { list, labels }
    }
}

impl ListLearner for ConstantListLearner {
    fn list_size(&self) -> usize {
        self.list.len()
    }
    fn label_count(&self) -> usize {
        self.labels
    }
    fn predict(&mut self, _x: &Point) -> Result<LabelList> {
        Ok(self.list.clone())
    }
    fn feed(&mut self, _x: &Point, _y: Label) -> Result<()> {
        Ok(())
    }
}

/// A uniformly random `k`-subset every round: every marginal is `k / L`.
#[derive(Clone, Copy, Debug)]
pub struct UniformListLearner {
    labels: usize,
    k: usize,
}

impl UniformListLearner {
    pub fn new(labels: usize, k: usize) -> Result<Self> {
        if k == 0 || k > labels {
            return Err(Error::ListSizeOutOfRange { k, labels });
        }
        Ok(UniformListLearner { labels, k })
    }
}

impl RandomizedListLearner for UniformListLearner {
    fn list_size(&self) -> usize {
        self.k
    }
    fn label_count(&self) -> usize {
        self.labels
    }
    fn marginals(&mut self, _x: &Point) -> Result<ListDistribution> {
        Ok(ListDistribution::uniform(self.labels, self.k))
    }
    fn feed(&mut self, _x: &Point, _y: Label) -> Result<()> {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Prediction {
    List(LabelList),
    Distribution(ListDistribution),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Round<X = Point> {
    pub t: usize,
    pub x: X,
    pub prediction: Prediction,
    pub y: Label,
    pub loss: f64,
}

/// Per-round record of a learner run.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace<X = Point> {
    rounds: Vec<Round<X>>,
}

impl<X> Default for Trace<X> {
    fn default() -> Self {
        Trace { rounds: Vec::new() }
    }
}

impl<X> Trace<X> {
    pub fn new() -> Self {
        Trace::default()
    }

    pub fn push_list(&mut self, x: X, list: LabelList, y: Label) {
        let loss = if list.contains(y) { 0.0 } else { 1.0 };
        let t = self.rounds.len() + 1;
        self.rounds.push(Round { t, x, prediction: Prediction::List(list), y, loss });
    }

    pub fn push_distribution(&mut self, x: X, dist: ListDistribution, y: Label) {
        let loss = dist.loss(y);
        let t = self.rounds.len() + 1;
        self.rounds.push(Round { t, x, prediction: Prediction::Distribution(dist), y, loss });
    }

    pub fn rounds(&self) -> &[Round<X>] {
        &self.rounds
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn losses(&self) -> impl Iterator<Item = f64> + '_ {
        self.rounds.iter().map(|r| r.loss)
    }

    pub fn cumulative_loss(&self) -> f64 {
        self.losses().sum()
    }

    /// Rounds whose true label fell outside a deterministic list.
    pub fn mistakes(&self) -> usize {
        self.rounds.iter().filter(|r| matches!(r.prediction, Prediction::List(_)) && r.loss > 0.5).count()
    }
}

impl Trace<Point> {
    pub fn pattern(&self) -> Pattern {
        self.rounds.iter().map(|r| crate::pattern::Example { x: r.x, y: r.y }).collect()
    }
}

/// Runs a deterministic learner over a labelled stream. Errors from `feed`
/// (such as non-realizable input to SOA) abort the run.
pub fn run_deterministic<X: Clone, L: ListLearner<X> + ?Sized>(
    learner: &mut L,
    stream: impl IntoIterator<Item = (X, Label)>,
) -> Result<Trace<X>> {
    let mut trace = Trace::new();
    for (x, y) in stream {
        let list = learner.predict(&x)?;
        learner.feed(&x, y)?;
        trace.push_list(x, list, y);
    }
    Ok(trace)
}

pub fn run_randomized<X: Clone, L: RandomizedListLearner<X> + ?Sized>(
    learner: &mut L,
    stream: impl IntoIterator<Item = (X, Label)>,
) -> Result<Trace<X>> {
    let mut trace = Trace::new();
    for (x, y) in stream {
        let dist = learner.marginals(&x)?;
        learner.feed(&x, y)?;
        trace.push_distribution(x, dist, y);
    }
    Ok(trace)
}

/// Stream view of a finite-domain pattern.
pub fn pattern_stream(s: &Pattern) -> impl Iterator<Item = (Point, Label)> + '_ {
    s.iter().map(|z| (z.x, z.y))
}
