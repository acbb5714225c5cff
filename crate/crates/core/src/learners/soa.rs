//! List Standard Optimal Algorithm.
//!
//! Predicts the `k` labels whose restrictions keep the largest dimension
//! (ties by ascending label) and restricts its version space only on rounds
//! where it erred. Laziness is what lets the cover construction replay it.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::class::ConceptClass;
use crate::dimension::{Dim, DimensionSolver};
use crate::error::{Error, Result};
use crate::label::{Label, LabelList, Point};
use crate::learners::ListLearner;

/// Dimension solver plus a prediction cache, shareable between many SOA
/// instances over the same base class.
pub struct SoaOracle<C: ConceptClass> {
    solver: DimensionSolver<C>,
    cache: BTreeMap<(C::Key, Point), LabelList>,
}

impl<C: ConceptClass> SoaOracle<C> {
    pub fn new(k: usize, label_count: usize) -> Result<Self> {
        Ok(SoaOracle { solver: DimensionSolver::new(k, label_count)?, cache: BTreeMap::new() })
    }

    pub fn shared(k: usize, label_count: usize) -> Result<Rc<RefCell<Self>>> {
        Ok(Rc::new(RefCell::new(SoaOracle::new(k, label_count)?)))
    }

    pub fn k(&self) -> usize {
        self.solver.k()
    }

    pub fn dim(&mut self, class: &C) -> Dim {
        self.solver.dim(class)
    }

    pub fn predict(&mut self, class: &C, x: Point) -> LabelList {
        let key = (class.key(), x);
        if let Some(list) = self.cache.get(&key) {
            return list.clone();
        }
        let k = self.solver.k();
        let mut top: Vec<Label> = self.solver.ranked_labels(class, x).into_iter().take(k).map(|(y, _)| y).collect();
        top.sort_unstable();
        let list = LabelList::from_sorted_unchecked(top);
        self.cache.insert(key, list.clone());
        list
    }
}

pub struct ListSoa<C: ConceptClass> {
    version: C,
    oracle: Rc<RefCell<SoaOracle<C>>>,
    updates: usize,
}

impl<C: ConceptClass> ListSoa<C> {
    pub fn new(class: C, k: usize) -> Result<Self> {
        let oracle = SoaOracle::shared(k, class.label_count())?;
        ListSoa::with_oracle(class, oracle)
    }

    pub fn with_oracle(class: C, oracle: Rc<RefCell<SoaOracle<C>>>) -> Result<Self> {
        if class.is_empty() {
            return Err(Error::EmptyClass);
        }
        Ok(ListSoa { version: class, oracle, updates: 0 })
    }

    pub fn version(&self) -> &C {
        &self.version
    }

    /// Number of times the version space was restricted.
    pub fn updates(&self) -> usize {
        self.updates
    }

    pub fn oracle(&self) -> &Rc<RefCell<SoaOracle<C>>> {
        &self.oracle
    }

    fn check_point(&self, x: Point) -> Result<()> {
        if x.index() >= self.version.domain_size() {
            return Err(Error::PointOutOfRange { point: x.index(), size: self.version.domain_size() });
        }
        Ok(())
    }
}

impl<C: ConceptClass> Clone for ListSoa<C> {
    fn clone(&self) -> Self {
        ListSoa { version: self.version.clone(), oracle: self.oracle.clone(), updates: self.updates }
    }
}

impl<C: ConceptClass> ListLearner for ListSoa<C> {
    fn list_size(&self) -> usize {
        self.oracle.borrow().k()
    }

    fn label_count(&self) -> usize {
        self.version.label_count()
    }

    fn predict(&mut self, x: &Point) -> Result<LabelList> {
        self.check_point(*x)?;
        Ok(self.oracle.borrow_mut().predict(&self.version, *x))
    }

    /// Restricts on a mistake. If the restriction would be empty the version
    /// space is left unchanged and `NonRealizable` is returned.
    fn feed(&mut self, x: &Point, y: Label) -> Result<()> {
        if y.index() >= self.version.label_count() {
            return Err(Error::LabelOutOfRange { label: y.index(), labels: self.version.label_count() });
        }
        let list = self.predict(x)?;
        if list.contains(y) {
            return Ok(());
        }
        let restricted = self.version.restrict(*x, y);
        if restricted.is_empty() {
            return Err(Error::NonRealizable { point: x.index(), label: y.index() });
        }
        self.version = restricted;
        self.updates += 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::{HypothesisClass, VersionSpace};
    use crate::learners::{pattern_stream, run_deterministic};
    use crate::pattern::Pattern;
    use alloc::vec;

    #[test]
    fn singleton_never_errs() {
        let v = VersionSpace::from_class(HypothesisClass::from_table(&[vec![2, 0, 1]], 3, 3).unwrap());
        let mut soa = ListSoa::new(v, 1).unwrap();
        let s = Pattern::from_pairs(&[(0, 2), (1, 0), (2, 1), (0, 2)]);
        let trace = run_deterministic(&mut soa, pattern_stream(&s)).unwrap();
        assert_eq!(trace.mistakes(), 0);
    }

    #[test]
    fn lazy_updates_only_on_mistakes() {
        let v = VersionSpace::from_class(HypothesisClass::all_functions(3, 3).unwrap());
        let mut soa = ListSoa::new(v, 2).unwrap();
        let s = Pattern::from_pairs(&[(0, 2), (1, 0), (0, 2), (2, 2), (1, 0)]);
        for (x, y) in pattern_stream(&s) {
            let before = soa.version().clone();
            let list = soa.predict(&x).unwrap();
            soa.feed(&x, y).unwrap();
            assert_eq!(before == *soa.version(), list.contains(y));
        }
        assert!(soa.updates() <= 3);
    }

    #[test]
    fn non_realizable_feed_freezes() {
        let v = VersionSpace::from_class(HypothesisClass::from_table(&[vec![0]], 1, 3).unwrap());
        let mut soa = ListSoa::new(v, 1).unwrap();
        let before = soa.version().clone();
        assert_eq!(soa.feed(&Point(0), Label(2)), Err(Error::NonRealizable { point: 0, label: 2 }));
        assert_eq!(*soa.version(), before);
        assert!(soa.predict(&Point(1)).is_err());
    }

    #[test]
    fn empty_class_rejected() {
        let v = VersionSpace::from_class(HypothesisClass::new(vec![], 1, 2, 1).unwrap());
        assert!(matches!(ListSoa::new(v, 1), Err(Error::EmptyClass)));
    }
}
