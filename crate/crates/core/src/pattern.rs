//! Examples, patterns and explicitly materialized pattern classes.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::{Error, Result};
use crate::label::{Label, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Example {
    pub x: Point,
    pub y: Label,
}

impl Example {
    pub fn new(x: usize, y: usize) -> Self {
        Example { x: Point::new(x), y: Label::new(y) }
    }
}

/// An ordered, finite sequence of examples. The empty pattern is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(Vec<Example>);

impl Pattern {
    pub fn new(examples: Vec<Example>) -> Self {
        Pattern(examples)
    }

    pub fn empty() -> Self {
        Pattern(Vec::new())
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Pattern(pairs.iter().map(|&(x, y)| Example::new(x, y)).collect())
    }

    pub fn push(&mut self, z: Example) {
        self.0.push(z);
    }

    /// `self ∘ other`.
    pub fn concat(&self, other: &Pattern) -> Pattern {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Pattern(v)
    }

    /// `(x, y) ∘ self`.
    pub fn prepend(&self, z: Example) -> Pattern {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(z);
        v.extend_from_slice(&self.0);
        Pattern(v)
    }

    pub fn examples(&self) -> &[Example] {
        &self.0
    }

    pub fn into_examples(self) -> Vec<Example> {
        self.0
    }

    /// Every subsequence (including the empty one and `self`), with
    /// duplicates when examples repeat.
    pub fn subsequences(&self) -> impl Iterator<Item = Pattern> + '_ {
        let n = self.0.len();
        assert!(n < 64, "pattern too long to enumerate subsequences");
        (0u64..(1u64 << n)).map(move |bits| {
            Pattern(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, z)| *z)
                    .collect(),
            )
        })
    }

    fn check_ranges(&self, domain_size: usize, label_count: usize) -> Result<()> {
        for z in &self.0 {
            if z.x.index() >= domain_size {
                return Err(Error::PointOutOfRange { point: z.x.index(), size: domain_size });
            }
            if z.y.index() >= label_count {
                return Err(Error::LabelOutOfRange { label: z.y.index(), labels: label_count });
            }
        }
        Ok(())
    }
}

impl Deref for Pattern {
    type Target = [Example];

    fn deref(&self) -> &[Example] {
        &self.0
    }
}

impl FromIterator<Example> for Pattern {
    fn from_iter<I: IntoIterator<Item = Example>>(iter: I) -> Self {
        Pattern(iter.into_iter().collect())
    }
}

/// True iff the examples of `short` appear in `long` in order, not
/// necessarily contiguously.
pub fn is_subsequence(short: &[Example], long: &[Example]) -> bool {
    let mut rest = long.iter();
    short.iter().all(|z| rest.any(|w| w == z))
}

/// A downward-closed set of patterns, stored with every subsequence
/// materialized.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternClassExplicit {
    patterns: BTreeSet<Pattern>,
    domain_size: usize,
    label_count: usize,
}

impl PatternClassExplicit {
    /// Closes `seeds` under taking subsequences.
    pub fn from_seeds<I>(seeds: I, domain_size: usize, label_count: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Pattern>,
    {
        let mut patterns = BTreeSet::new();
        for seed in seeds {
            seed.check_ranges(domain_size, label_count)?;
            patterns.extend(seed.subsequences());
        }
        Ok(PatternClassExplicit { patterns, domain_size, label_count })
    }

    pub fn empty(domain_size: usize, label_count: usize) -> Self {
        PatternClassExplicit { patterns: BTreeSet::new(), domain_size, label_count }
    }

    pub fn patterns(&self) -> &BTreeSet<Pattern> {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn label_count(&self) -> usize {
        self.label_count
    }

    pub fn contains(&self, s: &Pattern) -> bool {
        self.patterns.contains(s)
    }

    /// `{S : (x, y) ∘ S ∈ P}`.
    pub fn restrict(&self, x: Point, y: Label) -> PatternClassExplicit {
        let head = Example { x, y };
        let patterns: BTreeSet<Pattern> = self
            .patterns
            .iter()
            .filter(|s| s.first() == Some(&head))
            .map(|s| Pattern(s[1..].to_vec()))
            .collect();
        let restricted = PatternClassExplicit {
            patterns,
            domain_size: self.domain_size,
            label_count: self.label_count,
        };
        debug_assert!(restricted.is_downward_closed());
        restricted
    }

    /// Checks that removing any single example from a member yields a member,
    /// which implies closure under all subsequences.
    pub fn is_downward_closed(&self) -> bool {
        self.patterns.iter().all(|s| {
            (0..s.len()).all(|i| {
                let mut shorter = s.0.clone();
                shorter.remove(i);
                self.patterns.contains(&Pattern(shorter))
            })
        })
    }

    /// True iff some member repeats a point with two different labels.
    pub fn has_contradictions(&self) -> bool {
        self.patterns.iter().any(|s| {
            s.iter().enumerate().any(|(i, a)| s[i + 1..].iter().any(|b| a.x == b.x && a.y != b.y))
        })
    }

    pub fn into_patterns(self) -> Vec<Pattern> {
        self.patterns.into_iter().collect()
    }
}

/// Closure of a set of seed patterns under subsequences.
pub fn downward_closure<I>(seeds: I, domain_size: usize, label_count: usize) -> Result<PatternClassExplicit>
where
    I: IntoIterator<Item = Pattern>,
{
    PatternClassExplicit::from_seeds(seeds, domain_size, label_count)
}
