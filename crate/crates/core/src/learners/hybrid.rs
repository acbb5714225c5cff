//! A `k`-list learner that beats the best hypothesis of a class whose minimal
//! finite list size `k_H` is strictly smaller than `k`.
//!
//! The wrapped `k_H`-list learner `B` is completed to `k` labels by adding the
//! remaining `k - k_H` slots uniformly over the labels outside `B`'s list. At
//! the marginal level this gives
//! `m_A(y) = m_B(y) + (1 - m_B(y))·(k - k_H)/(L - k_H)`, so every round's
//! expected loss is exactly `p·ℓ_B` with `p = (L - k)/(L - k_H)`.

use alloc::vec::Vec;

use crate::class::ConceptClass;
use crate::dimension::minimal_finite_list_size;
use crate::error::{Error, Result};
use crate::label::{Label, ListDistribution, Point};
use crate::learners::agnostic::AnytimeAgnostic;
use crate::learners::RandomizedListLearner;

pub struct HybridLearner<B> {
    base: B,
    k: usize,
}

impl<B: RandomizedListLearner> HybridLearner<B> {
    /// Wraps `base` (list size `k_H`) into a `k`-list learner.
    pub fn new(base: B, k: usize) -> Result<Self> {
        let (kh, labels) = (base.list_size(), base.label_count());
        if k <= kh || k > labels {
            return Err(Error::InvalidParameter(alloc::format!(
                "hybrid list size {k} must exceed the base size {kh} and not exceed {labels} labels"
            )));
        }
        Ok(HybridLearner { base, k })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    /// `p = (L - k)/(L - k_H)`.
    pub fn scale(&self) -> f64 {
        let labels = self.base.label_count() as f64;
        (labels - self.k as f64) / (labels - self.base.list_size() as f64)
    }

    /// Base and completed marginals for the same round.
    pub fn marginals_with_base(&mut self, x: &Point) -> Result<(ListDistribution, ListDistribution)> {
        let b = self.base.marginals(x)?;
        let a = self.complete(&b)?;
        Ok((b, a))
    }

    /// Completes a base marginal vector to list size `k`.
    pub fn complete(&self, base: &ListDistribution) -> Result<ListDistribution> {
        let labels = base.label_count();
        let kh = base.k();
        let q = (self.k - kh) as f64 / (labels - kh) as f64;
        let m: Vec<f64> = base.marginals().iter().map(|&b| b + (1.0 - b) * q).collect();
        ListDistribution::new(m, self.k)
    }
}

impl<B: RandomizedListLearner> RandomizedListLearner for HybridLearner<B> {
    fn list_size(&self) -> usize {
        self.k
    }
    fn label_count(&self) -> usize {
        self.base.label_count()
    }
    fn marginals(&mut self, x: &Point) -> Result<ListDistribution> {
        let b = self.base.marginals(x)?;
        self.complete(&b)
    }
    fn feed(&mut self, x: &Point, y: Label) -> Result<()> {
        self.base.feed(x, y)
    }
}

/// The hybrid over the anytime agnostic learner at list size `k_H`.
pub fn negative_regret_learner<C: ConceptClass>(
    class: C,
    k: usize,
    budget: u128,
) -> Result<HybridLearner<AnytimeAgnostic<C>>> {
    let kh = minimal_finite_list_size(&class);
    if k <= kh {
        return Err(Error::InvalidParameter(alloc::format!(
            "list size {k} does not exceed the minimal finite list size {kh}"
        )));
    }
    let base = AnytimeAgnostic::new(class, kh, budget)?;
    HybridLearner::new(base, k)
}
