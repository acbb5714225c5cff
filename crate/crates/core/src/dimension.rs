//! Exact `(k+1)`-ary Littlestone dimension.
//!
//! The dimension satisfies `dim(P) >= m + 1` iff some point `x` admits `k + 1`
//! distinct labels `y` with `dim(P_{x→y}) >= m`. The solver evaluates
//!
//! ```text
//! dim(P) = max_x ( 1 + (k+1)-th largest of { dim(P_{x→y}) : y ∈ Y } )
//! ```
//!
//! with the empty class at `-1`, memoized on the class key.
//!
//! Restricting a version space can return the same version space (every
//! active hypothesis already contains `y` at `x`). Such a self-loop contributes
//! `dim(P)` itself, which dominates every strict restriction, so with `e`
//! self-loops at `x` the `(k+1)`-th largest value is the `(k+1-e)`-th largest
//! strict value, and `e >= k + 1` means arbitrarily deep trees exist.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::class::ConceptClass;
use crate::error::{Error, Result};
use crate::label::{Label, Point};
use crate::tree::MistakeTree;

/// Value of the list Littlestone dimension. `Empty` is the `-1` sentinel of
/// the empty class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Empty,
    Finite(usize),
    Infinite,
}

impl Dim {
    /// Integer value with `-1` for the empty class; `None` when infinite.
    pub fn value(self) -> Option<i64> {
        match self {
            Dim::Empty => Some(-1),
            Dim::Finite(d) => Some(d as i64),
            Dim::Infinite => None,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(d) => Some(d),
            _ => None,
        }
    }

    fn succ(self) -> Dim {
        match self {
            Dim::Empty => Dim::Finite(0),
            Dim::Finite(d) => Dim::Finite(d + 1),
            Dim::Infinite => Dim::Infinite,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Empty => f.write_str("-1"),
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionResult {
    pub dim: Dim,
    /// Shattered complete `(k+1)`-ary tree of depth `dim`, present whenever
    /// the dimension is finite and nonnegative.
    pub witness: Option<MistakeTree>,
}

/// Memoized dimension evaluator for one list size `k`.
///
/// The memo table belongs to this instance; use one solver per thread.
#[derive(Clone, Debug)]
pub struct DimensionSolver<C: ConceptClass> {
    k: usize,
    memo: BTreeMap<C::Key, Dim>,
}

impl<C: ConceptClass> DimensionSolver<C> {
    pub fn new(k: usize, label_count: usize) -> Result<Self> {
        if k == 0 || k >= label_count {
            return Err(Error::ListSizeOutOfRange { k, labels: label_count });
        }
        Ok(DimensionSolver { k, memo: BTreeMap::new() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn dim(&mut self, class: &C) -> Dim {
        if class.is_empty() {
            return Dim::Empty;
        }
        let key = class.key();
        if let Some(&d) = self.memo.get(&key) {
            return d;
        }
        let mut best = Dim::Finite(0);
        for x in 0..class.domain_size() {
            best = best.max(self.candidate(class, &key, Point::new(x)));
            if best == Dim::Infinite {
                break;
            }
        }
        self.memo.insert(key, best);
        best
    }

    /// `1 + (k+1)-th largest dim(P_{x→y})` for a single point.
    fn candidate(&mut self, class: &C, key: &C::Key, x: Point) -> Dim {
        let mut self_loops = 0;
        let mut strict = Vec::with_capacity(class.label_count());
        for y in 0..class.label_count() {
            let r = class.restrict(x, Label::new(y));
            if r.is_empty() {
                strict.push(Dim::Empty);
            } else if r.key() == *key {
                self_loops += 1;
            } else {
                strict.push(self.dim(&r));
            }
        }
        if self_loops > self.k {
            return Dim::Infinite;
        }
        strict.sort_unstable_by(|a, b| b.cmp(a));
        let rank = self.k - self_loops;
        strict.get(rank).copied().unwrap_or(Dim::Empty).succ()
    }

    /// Labels ordered by `(dim(P_{x→y}) descending, label ascending)` along
    /// with their restriction dimensions.
    pub fn ranked_labels(&mut self, class: &C, x: Point) -> Vec<(Label, Dim)> {
        let own = self.dim(class);
        let key = class.key();
        let mut ranked: Vec<(Label, Dim)> = (0..class.label_count())
            .map(|y| {
                let y = Label::new(y);
                let r = class.restrict(x, y);
                let d = if !r.is_empty() && r.key() == key { own } else { self.dim(&r) };
                (y, d)
            })
            .collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked
    }

    /// A shattered complete `(k+1)`-ary tree of the given depth, or `None` if
    /// the class dimension is below `depth`.
    pub fn witness(&mut self, class: &C, depth: usize) -> Option<MistakeTree> {
        if self.dim(class) < Dim::Finite(depth) {
            return None;
        }
        Some(self.build(class, depth))
    }

    fn build(&mut self, class: &C, depth: usize) -> MistakeTree {
        if depth == 0 {
            return MistakeTree::Leaf;
        }
        let key = class.key();
        let mut best: Option<(Dim, Point)> = None;
        for x in 0..class.domain_size() {
            let x = Point::new(x);
            let c = self.candidate(class, &key, x);
            if best.is_none_or(|(b, _)| c > b) {
                best = Some((c, x));
            }
        }
        let (_, x) = best.expect("nonempty domain for positive depth");
        let edges = self
            .ranked_labels(class, x)
            .into_iter()
            .take(self.k + 1)
            .map(|(y, d)| {
                debug_assert!(d >= Dim::Finite(depth - 1));
                let child = self.build(&class.restrict(x, y), depth - 1);
                (y, child)
            })
            .collect();
        MistakeTree::node(x, edges).expect("ranked labels are distinct")
    }
}

/// Dimension of `class` for list size `k`, with a witness tree of that depth
/// when the dimension is finite.
pub fn list_littlestone_dim<C: ConceptClass>(class: &C, k: usize) -> Result<DimensionResult> {
    let mut solver = DimensionSolver::new(k, class.label_count())?;
    let dim = solver.dim(class);
    let witness = dim.finite().map(|d| solver.build(class, d));
    Ok(DimensionResult { dim, witness })
}

/// Smallest list size `k` whose dimension is finite. Lists of all `L`
/// labels never err, so the answer is at most `L`.
pub fn minimal_finite_list_size<C: ConceptClass>(class: &C) -> usize {
    let labels = class.label_count();
    (1..labels)
        .find(|&k| {
            DimensionSolver::new(k, labels).map(|mut s| s.dim(class) != Dim::Infinite).unwrap_or(false)
        })
        .unwrap_or(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::{HypothesisClass, MultiHypothesis, VersionSpace};
    use crate::pattern::{downward_closure, Pattern};
    use crate::tree::is_shattered;
    use alloc::vec;

    #[test]
    fn all_functions_two_points_three_labels() {
        let h = HypothesisClass::all_functions(2, 3).unwrap();
        let v = VersionSpace::from_class(h.clone());
        let r = list_littlestone_dim(&v, 2).unwrap();
        assert_eq!(r.dim, Dim::Finite(2));
        let w = r.witness.unwrap();
        assert_eq!(w.depth(), 2);
        assert!(w.is_complete(3));
        assert!(is_shattered(&w, &h));
    }

    #[test]
    fn singleton_has_dimension_zero() {
        let v = VersionSpace::from_class(HypothesisClass::from_table(&[vec![1, 0, 2]], 3, 3).unwrap());
        for k in 1..3 {
            let r = list_littlestone_dim(&v, k).unwrap();
            assert_eq!(r.dim, Dim::Finite(0));
            assert_eq!(r.witness, Some(MistakeTree::Leaf));
        }
    }

    #[test]
    fn empty_class_sentinel() {
        let v = VersionSpace::from_class(HypothesisClass::new(vec![], 2, 3, 1).unwrap());
        let r = list_littlestone_dim(&v, 1).unwrap();
        assert_eq!(r.dim, Dim::Empty);
        assert_eq!(r.dim.value(), Some(-1));
        assert!(r.witness.is_none());
    }

    #[test]
    fn list_size_must_leave_a_spare_label() {
        let v = VersionSpace::from_class(HypothesisClass::all_functions(1, 3).unwrap());
        assert!(list_littlestone_dim(&v, 3).is_err());
        assert!(list_littlestone_dim(&v, 0).is_err());
    }

    #[test]
    fn wide_hypothesis_gives_infinite_dimension() {
        let h = MultiHypothesis::from_lists(&[vec![0, 1]], 3).unwrap();
        let class = HypothesisClass::new(vec![h], 1, 3, 2).unwrap();
        let v = VersionSpace::from_class(class);
        assert_eq!(list_littlestone_dim(&v, 1).unwrap().dim, Dim::Infinite);
        assert_eq!(list_littlestone_dim(&v, 2).unwrap().dim, Dim::Finite(0));
        assert_eq!(minimal_finite_list_size(&v), 2);
        let mut solver = DimensionSolver::new(1, 3).unwrap();
        let deep = solver.witness(&v, 5).unwrap();
        assert_eq!(deep.depth(), 5);
        assert!(is_shattered(&deep, &v));
    }

    #[test]
    fn explicit_pattern_class_chain() {
        // {ε, (0,0), (0,1)}: one point with two labels
        let p = downward_closure([Pattern::from_pairs(&[(0, 0)]), Pattern::from_pairs(&[(0, 1)])], 1, 2).unwrap();
        assert_eq!(list_littlestone_dim(&p, 1).unwrap().dim, Dim::Finite(1));
        // order matters: (0,0) then (1,y) for both y, but not the reverse
        let p = downward_closure(
            [Pattern::from_pairs(&[(0, 0), (1, 0)]), Pattern::from_pairs(&[(0, 1), (1, 1)])],
            2,
            2,
        )
        .unwrap();
        let r = list_littlestone_dim(&p, 1).unwrap();
        assert_eq!(r.dim, Dim::Finite(1));
        assert!(is_shattered(r.witness.as_ref().unwrap(), &p));
    }

    #[test]
    fn ranked_labels_tie_break_ascending() {
        let v = VersionSpace::from_class(HypothesisClass::all_functions(2, 3).unwrap());
        let mut s = DimensionSolver::new(1, 3).unwrap();
        let ranked = s.ranked_labels(&v, Point(0));
        assert_eq!(ranked.iter().map(|(y, _)| y.0).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(ranked.iter().all(|(_, d)| *d == Dim::Finite(1)));
    }
}
