//! Agnostic list learners: multiplicative weights over the cover family, and
//! its anytime version by restarting on blocks of doubling length.

use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::class::ConceptClass;
use crate::error::{Error, Result};
use crate::label::{Label, ListDistribution, Point};
use crate::learners::cover::{cover_experts, cover_parts, CoverExpert};
use crate::learners::mw::MultiplicativeWeights;
use crate::learners::soa::SoaOracle;
use crate::learners::RandomizedListLearner;

/// Default ceiling on the number of cover experts built for one horizon.
pub const DEFAULT_EXPERT_BUDGET: u128 = 250_000;

/// `2·sqrt(T ln n)`.
pub fn mw_bound(experts: usize, horizon: usize) -> f64 {
    2.0 * libm::sqrt(horizon as f64 * libm::log(experts as f64))
}

fn cover_log_term(d: usize, horizon: usize, labels: usize, k: usize) -> f64 {
    let (d, t) = (d as f64, horizon as f64);
    let choices = (cover_parts(labels, k) * k) as f64;
    libm::sqrt(d * t + d * t * libm::log(t / d * choices))
}

/// `2·sqrt(dT + dT·ln((T/d)·⌈(L-k)/k⌉·k))`; zero when `d = 0`.
pub fn fixed_horizon_bound(d: usize, horizon: usize, labels: usize, k: usize) -> f64 {
    if d == 0 || horizon == 0 {
        return 0.0;
    }
    2.0 * cover_log_term(d, horizon, labels, k)
}

/// The fixed-horizon root scaled by `2√2/(√2-1)`.
pub fn anytime_bound(d: usize, horizon: usize, labels: usize, k: usize) -> f64 {
    if d == 0 || horizon == 0 {
        return 0.0;
    }
    let s = core::f64::consts::SQRT_2;
    2.0 * s / (s - 1.0) * cover_log_term(d, horizon, labels, k)
}

/// Lengths `1, 2, 4, ...` of the blocks covering `T` rounds, the last one
/// truncated.
pub fn block_lengths(horizon: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut covered, mut len) = (0usize, 1usize);
    while covered < horizon {
        let take = len.min(horizon - covered);
        out.push(take);
        covered += take;
        len *= 2;
    }
    out
}

/// Multiplicative weights over every cover expert for horizon `T`.
pub struct FixedHorizonAgnostic<C: ConceptClass> {
    mw: MultiplicativeWeights<CoverExpert<C>>,
    horizon: usize,
}

impl<C: ConceptClass> FixedHorizonAgnostic<C> {
    pub fn new(class: &C, k: usize, horizon: usize, budget: u128) -> Result<Self> {
        let oracle = SoaOracle::shared(k, class.label_count())?;
        Self::with_oracle(class, &oracle, horizon, budget)
    }

    pub fn with_oracle(class: &C, oracle: &Rc<RefCell<SoaOracle<C>>>, horizon: usize, budget: u128) -> Result<Self> {
        let k = oracle.borrow().k();
        let experts = cover_experts(class, oracle, horizon, budget)?;
        let mw = MultiplicativeWeights::new(experts, horizon, k, class.label_count())?;
        Ok(FixedHorizonAgnostic { mw, horizon })
    }

    pub fn experts(&self) -> usize {
        self.mw.len()
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn gamma(&self) -> f64 {
        self.mw.gamma()
    }
}

impl<C: ConceptClass> RandomizedListLearner for FixedHorizonAgnostic<C> {
    fn list_size(&self) -> usize {
        self.mw.list_size()
    }
    fn label_count(&self) -> usize {
        self.mw.label_count()
    }
    fn marginals(&mut self, x: &Point) -> Result<ListDistribution> {
        self.mw.marginals(x)
    }
    fn feed(&mut self, x: &Point, y: Label) -> Result<()> {
        self.mw.feed(x, y)
    }
}

/// Restarts [`FixedHorizonAgnostic`] on blocks of length `1, 2, 4, ...`.
/// Each block's learner is built when its first round arrives; all blocks
/// share one SOA oracle.
pub struct AnytimeAgnostic<C: ConceptClass> {
    class: C,
    oracle: Rc<RefCell<SoaOracle<C>>>,
    budget: u128,
    block_len: usize,
    left_in_block: usize,
    blocks: usize,
    inner: Option<FixedHorizonAgnostic<C>>,
}

impl<C: ConceptClass> AnytimeAgnostic<C> {
    pub fn new(class: C, k: usize, budget: u128) -> Result<Self> {
        let oracle = SoaOracle::shared(k, class.label_count())?;
        Self::with_oracle(class, oracle, budget)
    }

    pub fn with_oracle(class: C, oracle: Rc<RefCell<SoaOracle<C>>>, budget: u128) -> Result<Self> {
        if class.is_empty() {
            return Err(Error::EmptyClass);
        }
        if oracle.borrow_mut().dim(&class).finite().is_none() {
            return Err(Error::InfiniteDimension);
        }
        Ok(AnytimeAgnostic { class, oracle, budget, block_len: 0, left_in_block: 0, blocks: 0, inner: None })
    }

    /// Number of blocks started so far.
    pub fn blocks(&self) -> usize {
        self.blocks
    }

    fn current(&mut self) -> Result<&mut FixedHorizonAgnostic<C>> {
        if self.left_in_block == 0 || self.inner.is_none() {
            let len = if self.blocks == 0 { 1 } else { self.block_len * 2 };
            let inner = FixedHorizonAgnostic::with_oracle(&self.class, &self.oracle, len, self.budget)
                .map_err(|e| match e {
                    Error::BudgetExceeded(msg) => {
                        Error::BudgetExceeded(format!("block {} of length {len}: {msg}", self.blocks + 1))
                    }
                    other => other,
                })?;
            self.inner = Some(inner);
            self.block_len = len;
            self.left_in_block = len;
            self.blocks += 1;
        }
        Ok(self.inner.as_mut().expect("block learner initialized"))
    }
}

impl<C: ConceptClass> RandomizedListLearner for AnytimeAgnostic<C> {
    fn list_size(&self) -> usize {
        self.oracle.borrow().k()
    }
    fn label_count(&self) -> usize {
        self.class.label_count()
    }
    fn marginals(&mut self, x: &Point) -> Result<ListDistribution> {
        self.current()?.marginals(x)
    }
    fn feed(&mut self, x: &Point, y: Label) -> Result<()> {
        self.current()?.feed(x, y)?;
        self.left_in_block -= 1;
        Ok(())
    }
}
