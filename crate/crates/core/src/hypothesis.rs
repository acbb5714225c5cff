//! Multi-labeled hypothesis classes and version spaces over them.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::label::{Label, LabelList, Point};
use crate::pattern::Pattern;

/// Fixed-width bit set over hypothesis indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mask {
    words: Vec<u64>,
    len: usize,
}

impl Mask {
    pub fn empty(len: usize) -> Self {
        Mask { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut m = Mask::empty(len);
        for i in 0..len {
            m.insert(i);
        }
        m
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersect(&self, other: &Mask) -> Mask {
        debug_assert_eq!(self.len, other.len);
        Mask {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            len: self.len,
        }
    }

    pub fn is_subset(&self, other: &Mask) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

/// A map from every domain point to a set of exactly `k'` labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiHypothesis {
    images: Vec<LabelList>,
}

impl MultiHypothesis {
    pub fn new(images: Vec<LabelList>) -> Result<Self> {
        if let Some(first) = images.first() {
            let kprime = first.len();
            if let Some(bad) = images.iter().find(|l| l.len() != kprime) {
                return Err(Error::BadListSize { expected: kprime, got: bad.len() });
            }
        }
        Ok(MultiHypothesis { images })
    }

    /// Single-labeled hypothesis `x ↦ {labels[x]}`.
    pub fn single(labels: &[usize]) -> Self {
        MultiHypothesis {
            images: labels.iter().map(|&y| LabelList::from_sorted_unchecked(vec![Label::new(y)])).collect(),
        }
    }

    pub fn from_lists(lists: &[Vec<usize>], label_count: usize) -> Result<Self> {
        let images = lists
            .iter()
            .map(|ys| LabelList::new(ys.iter().map(|&y| Label::new(y)).collect(), label_count))
            .collect::<Result<Vec<_>>>()?;
        MultiHypothesis::new(images)
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn kprime(&self) -> usize {
        self.images.first().map_or(0, LabelList::len)
    }

    pub fn image(&self, x: Point) -> &LabelList {
        &self.images[x.index()]
    }

    pub fn images(&self) -> &[LabelList] {
        &self.images
    }

    pub fn contains(&self, x: Point, y: Label) -> bool {
        self.images.get(x.index()).is_some_and(|l| l.contains(y))
    }

    pub fn is_consistent(&self, s: &Pattern) -> bool {
        s.iter().all(|z| self.contains(z.x, z.y))
    }
}

/// Number of rounds `t` with `y_t ∉ h(x_t)`.
pub fn mistakes(h: &MultiHypothesis, s: &Pattern) -> usize {
    s.iter().filter(|z| !h.contains(z.x, z.y)).count()
}

/// A finite class of hypotheses sharing domain, label space and `k'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisClass {
    hypotheses: Vec<MultiHypothesis>,
    domain_size: usize,
    label_count: usize,
    kprime: usize,
    // support[x * L + y] = hypotheses h with y ∈ h(x)
    support: Vec<Mask>,
}

impl HypothesisClass {
    pub fn new(
        hypotheses: Vec<MultiHypothesis>,
        domain_size: usize,
        label_count: usize,
        kprime: usize,
    ) -> Result<Self> {
        if kprime == 0 || kprime > label_count {
            return Err(Error::InvalidParameter(format!("k' = {kprime} with {label_count} labels")));
        }
        for (i, h) in hypotheses.iter().enumerate() {
            if h.domain_size() != domain_size {
                return Err(Error::InconsistentClass(format!(
                    "hypothesis {i} defined on {} points, expected {domain_size}",
                    h.domain_size()
                )));
            }
            if domain_size > 0 && h.kprime() != kprime {
                return Err(Error::InconsistentClass(format!(
                    "hypothesis {i} has list width {}, expected {kprime}",
                    h.kprime()
                )));
            }
            for l in h.images() {
                if let Some(y) = l.iter().find(|y| y.index() >= label_count) {
                    return Err(Error::LabelOutOfRange { label: y.index(), labels: label_count });
                }
            }
        }
        let n = hypotheses.len();
        let mut support = vec![Mask::empty(n); domain_size * label_count];
        for (i, h) in hypotheses.iter().enumerate() {
            for (x, l) in h.images().iter().enumerate() {
                for y in l.iter() {
                    support[x * label_count + y.index()].insert(i);
                }
            }
        }
        Ok(HypothesisClass { hypotheses, domain_size, label_count, kprime, support })
    }

    /// Single-labeled class from a table `rows[h][x] = label`.
    pub fn from_table(rows: &[Vec<usize>], domain_size: usize, label_count: usize) -> Result<Self> {
        let hs = rows.iter().map(|r| MultiHypothesis::single(r)).collect();
        HypothesisClass::new(hs, domain_size, label_count, 1)
    }

    /// All `label_count^domain_size` single-labeled functions.
    pub fn all_functions(domain_size: usize, label_count: usize) -> Result<Self> {
        let total = (label_count as u64)
            .checked_pow(domain_size as u32)
            .filter(|&t| t <= 1 << 20)
            .ok_or_else(|| Error::BudgetExceeded(format!("{label_count}^{domain_size} hypotheses")))?;
        let rows: Vec<Vec<usize>> = (0..total)
            .map(|mut code| {
                (0..domain_size)
                    .map(|_| {
                        let y = (code % label_count as u64) as usize;
                        code /= label_count as u64;
                        y
                    })
                    .collect()
            })
            .collect();
        HypothesisClass::from_table(&rows, domain_size, label_count)
    }

    pub fn hypotheses(&self) -> &[MultiHypothesis] {
        &self.hypotheses
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn label_count(&self) -> usize {
        self.label_count
    }

    pub fn kprime(&self) -> usize {
        self.kprime
    }

    /// Hypotheses `h` with `y ∈ h(x)`. Out-of-range pairs give the empty mask.
    pub fn support(&self, x: Point, y: Label) -> Mask {
        if x.index() >= self.domain_size || y.index() >= self.label_count {
            return Mask::empty(self.len());
        }
        self.support[x.index() * self.label_count + y.index()].clone()
    }

    /// Hypotheses consistent with every example of `s`.
    pub fn consistent(&self, s: &Pattern) -> Mask {
        s.iter().fold(Mask::full(self.len()), |m, z| m.intersect(&self.support(z.x, z.y)))
    }

    /// Membership in the induced pattern class `P(H)`.
    pub fn admits(&self, s: &Pattern) -> bool {
        !self.consistent(s).is_empty()
    }

    /// `min_h M(h; S)` by exhaustive scan.
    pub fn opt(&self, s: &Pattern) -> Result<usize> {
        self.hypotheses.iter().map(|h| mistakes(h, s)).min().ok_or(Error::EmptyClass)
    }

    /// Subclass keeping the hypotheses selected by `mask`.
    pub fn subclass(&self, mask: &Mask) -> HypothesisClass {
        let hs = mask.iter().map(|i| self.hypotheses[i].clone()).collect();
        HypothesisClass::new(hs, self.domain_size, self.label_count, self.kprime)
            .expect("subclass of a valid class is valid")
    }
}

/// The subset of a base class still consistent with the feedback seen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VersionSpace {
    base: Arc<HypothesisClass>,
    active: Mask,
}

impl VersionSpace {
    pub fn new(base: Arc<HypothesisClass>) -> Self {
        let active = Mask::full(base.len());
        VersionSpace { base, active }
    }

    pub fn from_class(base: HypothesisClass) -> Self {
        VersionSpace::new(Arc::new(base))
    }

    pub fn with_mask(base: Arc<HypothesisClass>, active: Mask) -> Self {
        assert_eq!(active.len(), base.len());
        VersionSpace { base, active }
    }

    pub fn base(&self) -> &Arc<HypothesisClass> {
        &self.base
    }

    pub fn active(&self) -> &Mask {
        &self.active
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    /// `V_{x→y}`: active hypotheses with `y ∈ h(x)`.
    pub fn restrict(&self, x: Point, y: Label) -> VersionSpace {
        VersionSpace { base: self.base.clone(), active: self.active.intersect(&self.base.support(x, y)) }
    }

    pub fn admits(&self, s: &Pattern) -> bool {
        !self.active.intersect(&self.base.consistent(s)).is_empty()
    }

    pub fn opt(&self, s: &Pattern) -> Result<usize> {
        self.active
            .iter()
            .map(|i| mistakes(&self.base.hypotheses()[i], s))
            .min()
            .ok_or(Error::EmptyClass)
    }
}
