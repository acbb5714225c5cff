//! Two classes on which randomized learners meet the extremes of the
//! `[L_k/(k+1), L_k]` range.
//!
//! * `P1 = [k+1]^[d]`: guessing uniformly on unseen points costs `1/(k+1)` per
//!   distinct point, so `d/(k+1)` in total.
//! * `P2 = {h : |h⁻¹(0)| ≤ d}` on fresh points: an adversary that answers `0`
//!   whenever the learner rarely lists `0` extracts `d - ε` expected mistakes.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::adversaries::AdversaryTranscript;
use crate::error::{Error, Result};
use crate::hypothesis::HypothesisClass;
use crate::label::{Label, LabelList, ListDistribution, Point};
use crate::learners::{ListLearner, Prediction, RandomizedListLearner};
use crate::pattern::{Example, Pattern};

/// Uniform `k`-list on unseen points; on a seen point, its label plus the
/// smallest other labels.
#[derive(Clone, Debug)]
pub struct P1Learner {
    k: usize,
    known: Vec<Option<Label>>,
}

impl P1Learner {
    pub fn new(d: usize, k: usize) -> Self {
        P1Learner { k, known: vec![None; d] }
    }

    pub fn known(&self, x: Point) -> Option<Label> {
        self.known.get(x.index()).copied().flatten()
    }
}

impl RandomizedListLearner for P1Learner {
    fn list_size(&self) -> usize {
        self.k
    }

    fn label_count(&self) -> usize {
        self.k + 1
    }

    fn marginals(&mut self, x: &Point) -> Result<ListDistribution> {
        let labels = self.k + 1;
        match self.known.get(x.index()) {
            None => Err(Error::PointOutOfRange { point: x.index(), size: self.known.len() }),
            Some(None) => Ok(ListDistribution::uniform(labels, self.k)),
            Some(Some(y)) => {
                let mut list = vec![*y];
                list.extend((0..labels).map(Label::new).filter(|z| z != y).take(self.k - 1));
                Ok(ListDistribution::indicator(&LabelList::new(list, labels)?, labels))
            }
        }
    }

    fn feed(&mut self, x: &Point, y: Label) -> Result<()> {
        let size = self.known.len();
        let slot = self.known.get_mut(x.index()).ok_or(Error::PointOutOfRange { point: x.index(), size })?;
        match slot {
            Some(prev) if *prev != y => Err(Error::NonRealizable { point: x.index(), label: y.index() }),
            _ => {
                *slot = Some(y);
                Ok(())
            }
        }
    }
}

/// The class of all functions `[d] → [k+1]` and its bundled learner.
pub fn extremal_p1(d: usize, k: usize) -> Result<(HypothesisClass, P1Learner)> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidParameter("P1 needs d ≥ 1 and k ≥ 1".into()));
    }
    Ok((HypothesisClass::all_functions(d, k + 1)?, P1Learner::new(d, k)))
}

/// `⌈k·d²/ε⌉ + d - 1`.
pub fn p2_horizon(d: usize, k: usize, epsilon: f64) -> usize {
    libm::ceil(k as f64 * (d * d) as f64 / epsilon) as usize + d - 1
}

/// Best-hypothesis mistakes on a fresh-point sequence: zeros beyond the first
/// `d`, plus labels outside `{0..k}`.
pub fn p2_opt(s: &Pattern, d: usize, k: usize) -> usize {
    let zeros = s.iter().filter(|z| z.y == Label(0)).count();
    let outside = s.iter().filter(|z| z.y.index() > k).count();
    zeros.saturating_sub(d) + outside
}

/// Restriction of `P2` to `n` points, materialized for cross-checks.
pub fn p2_class_finite(n: usize, d: usize, k: usize) -> Result<HypothesisClass> {
    let all = HypothesisClass::all_functions(n, k + 1)?;
    let rows: Vec<Vec<usize>> = all
        .hypotheses()
        .iter()
        .map(|h| h.images().iter().map(|l| l.labels()[0].index()).collect::<Vec<_>>())
        .filter(|row| row.iter().filter(|&&y| y == 0).count() <= d)
        .collect();
    HypothesisClass::from_table(&rows, n, k + 1)
}

/// List SOA on `P2` over fresh points, in closed form.
///
/// With `z` zeros seen, a fresh point's label `y ≠ 0` keeps the class (dimension
/// `d - z`) while `0` drops it to `d - z - 1`, so the top `k` labels are always
/// `{1..k}` and the version space only shrinks when a `0` is missed.
#[derive(Clone, Debug)]
pub struct P2Soa {
    d: usize,
    k: usize,
    zeros: usize,
}

impl P2Soa {
    pub fn new(d: usize, k: usize) -> Self {
        P2Soa { d, k, zeros: 0 }
    }

    /// Remaining dimension `d - z`.
    pub fn dimension(&self) -> usize {
        self.d - self.zeros
    }
}

impl ListLearner for P2Soa {
    fn list_size(&self) -> usize {
        self.k
    }

    fn label_count(&self) -> usize {
        self.k + 1
    }

    fn predict(&mut self, _x: &Point) -> Result<LabelList> {
        Ok(LabelList::from_sorted_unchecked((1..=self.k).map(Label::new).collect()))
    }

    fn feed(&mut self, x: &Point, y: Label) -> Result<()> {
        if y == Label(0) {
            if self.zeros == self.d {
                return Err(Error::NonRealizable { point: x.index(), label: 0 });
            }
            self.zeros += 1;
        }
        Ok(())
    }
}

/// Runs the `P2` adversary for [`p2_horizon`] rounds on points `0, 1, ...`.
/// Each round records the learner's exact expected loss given the history.
pub fn extremal_p2_run<L, R>(learner: &mut L, d: usize, k: usize, epsilon: f64, rng: &mut R) -> Result<AdversaryTranscript>
where
    L: RandomizedListLearner + ?Sized,
    R: Rng + ?Sized,
{
    if d == 0 || k == 0 || !(epsilon > 0.0 && epsilon < d as f64) {
        return Err(Error::InvalidParameter("P2 needs d ≥ 1, k ≥ 1 and 0 < ε < d".into()));
    }
    if learner.list_size() != k || learner.label_count() != k + 1 {
        return Err(Error::BadListSize { expected: k, got: learner.list_size() });
    }
    let horizon = p2_horizon(d, k, epsilon);
    let mut out = AdversaryTranscript {
        sequence: Pattern::empty(),
        predictions: Vec::with_capacity(horizon),
        losses: Vec::with_capacity(horizon),
    };
    let mut zeros = 0;
    for t in 0..horizon {
        let x = Point::new(t);
        let dist = learner.marginals(&x)?;
        let zero_mass = dist.get(Label(0));
        let (y, loss) = if zero_mass <= epsilon / d as f64 && zeros < d {
            zeros += 1;
            (Label(0), 1.0 - zero_mass)
        } else {
            let listed: f64 = (1..=k).map(|y| dist.get(Label::new(y))).sum();
            (Label::new(rng.gen_range(1..=k)), 1.0 - listed / k as f64)
        };
        learner.feed(&x, y)?;
        out.sequence.push(Example { x, y });
        out.predictions.push(Prediction::Distribution(dist));
        out.losses.push(loss);
    }
    Ok(out)
}
