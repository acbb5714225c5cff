//! Finite online cover of a class by SOA-replaying experts.
//!
//! An expert is parameterized by a set `I` of at most `d` rounds and, for each
//! `t ∈ I`, a pair `(i_t, j_t)`. Off `I` it outputs the lazy SOA list and feeds
//! SOA the smallest label of that list (no update, since SOA is lazy). On `I`
//! it outputs part `j_t` of the canonical `k`-cover of the labels SOA left out
//! and feeds SOA the `i_t`-th element of that part. Every realizable sequence
//! of length `T` is covered round by round by the expert whose `I` is the set
//! of rounds where SOA errs on it.

use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::class::ConceptClass;
use crate::dimension::Dim;
use crate::error::{Error, Result};
use crate::label::{Label, LabelList, Point};
use crate::learners::mw::OnlineListFunction;
use crate::learners::soa::{ListSoa, SoaOracle};
use crate::learners::ListLearner;
use crate::pattern::Pattern;

/// Splits the ordered set `a` into `⌈|a|/k⌉` consecutive parts of size `k`,
/// padding the last part from the front of `a`.
///
/// When `|a| < k` no padding from `a` can reach `k` distinct labels; the single
/// part is then completed with the smallest labels outside `a`.
pub fn canonical_k_cover(a: &[Label], k: usize, label_count: usize) -> Result<Vec<LabelList>> {
    if a.is_empty() || k == 0 || k > label_count {
        return Err(Error::InvalidParameter(format!("cover of {} labels by {k}-sets", a.len())));
    }
    if a.len() < k {
        let mut part: Vec<Label> = a.to_vec();
        part.extend((0..label_count).map(Label::new).filter(|y| !a.contains(y)).take(k - a.len()));
        return Ok(alloc::vec![LabelList::new(part, label_count)?]);
    }
    a.chunks(k)
        .map(|chunk| {
            let mut part = chunk.to_vec();
            part.extend_from_slice(&a[..k - chunk.len()]);
            LabelList::new(part, label_count)
        })
        .collect()
}

/// Number of parts in the canonical cover of the `L - k` labels outside a list.
pub fn cover_parts(labels: usize, k: usize) -> usize {
    (labels - k).div_ceil(k)
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// `Σ_{i=0}^{d} C(T, i) · (⌈(L-k)/k⌉·k)^i`, saturating.
pub fn cover_family_size(d: usize, horizon: usize, labels: usize, k: usize) -> u128 {
    let choices = (cover_parts(labels, k) * k) as u128;
    (0..=d as u128).fold(0u128, |acc, i| {
        let term = binomial(horizon as u128, i).saturating_mul(choices.saturating_pow(i as u32));
        acc.saturating_add(term)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pick {
    /// 1-based round.
    pub t: usize,
    /// 1-based position of the self-fed label inside the chosen part.
    pub i: usize,
    /// 1-based index of the part in the canonical cover.
    pub j: usize,
}

/// The `(I, {(i_t, j_t)})` parameters of one cover expert.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverExpertParams {
    picks: Vec<Pick>,
}

impl CoverExpertParams {
    pub fn new(mut picks: Vec<Pick>) -> Self {
        picks.sort();
        CoverExpertParams { picks }
    }

    pub fn picks(&self) -> &[Pick] {
        &self.picks
    }

    pub fn validate(&self, d: usize, k: usize, labels: usize, horizon: usize) -> Result<()> {
        let parts = cover_parts(labels, k);
        if self.picks.len() > d {
            return Err(Error::InvalidParameter(format!("|I| = {} exceeds d = {d}", self.picks.len())));
        }
        for (n, p) in self.picks.iter().enumerate() {
            if p.t == 0 || p.t > horizon || (n > 0 && self.picks[n - 1].t == p.t) {
                return Err(Error::InvalidParameter(format!("round {} invalid or repeated", p.t)));
            }
            if p.i == 0 || p.i > k || p.j == 0 || p.j > parts {
                return Err(Error::InvalidParameter(format!("pair ({}, {}) out of range", p.i, p.j)));
            }
        }
        Ok(())
    }
}

/// Lazy enumeration of every parameter tuple, by `|I|`, then `I`
/// lexicographically, then the pairs.
#[derive(Clone, Debug)]
pub struct CoverFamily {
    horizon: usize,
    k: usize,
    choices: usize,
    max_size: usize,
    combo: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl CoverFamily {
    pub fn new(d: usize, horizon: usize, labels: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= labels {
            return Err(Error::ListSizeOutOfRange { k, labels });
        }
        Ok(CoverFamily {
            horizon,
            k,
            choices: cover_parts(labels, k) * k,
            max_size: d.min(horizon),
            combo: Vec::new(),
            digits: Vec::new(),
            done: false,
        })
    }

    fn current(&self) -> CoverExpertParams {
        let picks = self
            .combo
            .iter()
            .zip(&self.digits)
            .map(|(&t, &v)| Pick { t, i: v % self.k + 1, j: v / self.k + 1 })
            .collect();
        CoverExpertParams { picks }
    }

    fn next_combo(&mut self) -> bool {
        let s = self.combo.len();
        let mut pos = s;
        while pos > 0 {
            pos -= 1;
            if self.combo[pos] < self.horizon - (s - 1 - pos) {
                self.combo[pos] += 1;
                for q in pos + 1..s {
                    self.combo[q] = self.combo[q - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn step(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.choices {
                return;
            }
            *d = 0;
        }
        if self.next_combo() {
            return;
        }
        let s = self.combo.len() + 1;
        if s > self.max_size {
            self.done = true;
            return;
        }
        self.combo = (1..=s).collect();
        self.digits = alloc::vec![0; s];
    }
}

impl Iterator for CoverFamily {
    type Item = CoverExpertParams;

    fn next(&mut self) -> Option<CoverExpertParams> {
        if self.done {
            return None;
        }
        let item = self.current();
        self.step();
        Some(item)
    }
}

/// One member of the cover family.
pub struct CoverExpert<C: ConceptClass> {
    picks: Vec<Pick>,
    soa: ListSoa<C>,
    horizon: usize,
    k: usize,
    labels: usize,
    t: usize,
    next_pick: usize,
    current: Option<(Point, LabelList)>,
}

impl<C: ConceptClass> CoverExpert<C> {
    pub fn new(params: CoverExpertParams, soa: ListSoa<C>, horizon: usize) -> Self {
        let k = soa.list_size();
        let labels = soa.label_count();
        CoverExpert { picks: params.picks, soa, horizon, k, labels, t: 1, next_pick: 0, current: None }
    }

    fn pick(&self) -> Option<Pick> {
        self.picks.get(self.next_pick).copied().filter(|p| p.t == self.t)
    }

    fn compute(&mut self, x: Point) -> LabelList {
        if self.t > self.horizon {
            return LabelList::first(self.k);
        }
        let soa_list = match self.soa.predict(&x) {
            Ok(l) => l,
            Err(_) => return LabelList::first(self.k),
        };
        match self.pick() {
            None => soa_list,
            Some(p) => {
                let rest: Vec<Label> = (0..self.labels).map(Label::new).filter(|y| !soa_list.contains(*y)).collect();
                let mut cover = canonical_k_cover(&rest, self.k, self.labels).expect("k < L leaves labels to cover");
                cover.swap_remove(p.j - 1)
            }
        }
    }
}

impl<C: ConceptClass> Clone for CoverExpert<C> {
    fn clone(&self) -> Self {
        CoverExpert {
            picks: self.picks.clone(),
            soa: self.soa.clone(),
            horizon: self.horizon,
            k: self.k,
            labels: self.labels,
            t: self.t,
            next_pick: self.next_pick,
            current: self.current.clone(),
        }
    }
}

impl<C: ConceptClass> OnlineListFunction for CoverExpert<C> {
    fn list(&mut self, x: Point) -> LabelList {
        if let Some((cx, list)) = &self.current {
            if *cx == x {
                return list.clone();
            }
        }
        let list = self.compute(x);
        self.current = Some((x, list.clone()));
        list
    }

    fn advance(&mut self, x: Point) {
        let list = self.list(x);
        if self.t <= self.horizon {
            let y = match self.pick() {
                Some(p) => {
                    self.next_pick += 1;
                    list.labels()[p.i - 1]
                }
                None => list.labels()[0],
            };
            // An empty restriction leaves SOA unchanged, which is all we need.
            let _ = self.soa.feed(&x, y);
        }
        self.t += 1;
        self.current = None;
    }
}

/// Builds every cover expert for `class` at horizon `T`, failing if the
/// family would exceed `budget` members.
pub fn cover_experts<C: ConceptClass>(
    class: &C,
    oracle: &Rc<RefCell<SoaOracle<C>>>,
    horizon: usize,
    budget: u128,
) -> Result<Vec<CoverExpert<C>>> {
    let (k, d) = {
        let mut o = oracle.borrow_mut();
        (o.k(), o.dim(class))
    };
    let d = match d {
        Dim::Finite(d) => d,
        Dim::Infinite => return Err(Error::InfiniteDimension),
        Dim::Empty => return Err(Error::EmptyClass),
    };
    let labels = class.label_count();
    let size = cover_family_size(d, horizon, labels, k);
    if size > budget {
        return Err(Error::BudgetExceeded(format!(
            "cover family of {size} experts (d = {d}, T = {horizon}) exceeds budget {budget}"
        )));
    }
    let soa = ListSoa::with_oracle(class.clone(), oracle.clone())?;
    Ok(CoverFamily::new(d, horizon, labels, k)?.map(|p| CoverExpert::new(p, soa.clone(), horizon)).collect())
}

/// Parameters of the expert that covers the realizable sequence `s`: the
/// rounds where SOA errs on `s`, each with the part and position of `y_t`.
pub fn covering_params<C: ConceptClass>(soa: &ListSoa<C>, s: &Pattern) -> Result<CoverExpertParams> {
    let mut soa = soa.clone();
    let k = soa.list_size();
    let labels = soa.label_count();
    let mut picks = Vec::new();
    for (t, z) in s.iter().enumerate() {
        let list = soa.predict(&z.x)?;
        if !list.contains(z.y) {
            let rest: Vec<Label> = (0..labels).map(Label::new).filter(|y| !list.contains(*y)).collect();
            let cover = canonical_k_cover(&rest, k, labels)?;
            let (j, part) = cover
                .iter()
                .enumerate()
                .find(|(_, part)| part.contains(z.y))
                .expect("canonical cover covers the complement");
            picks.push(Pick { t: t + 1, i: part.ordinal(z.y).expect("label in part"), j: j + 1 });
        }
        soa.feed(&z.x, z.y)?;
    }
    Ok(CoverExpertParams::new(picks))
}
