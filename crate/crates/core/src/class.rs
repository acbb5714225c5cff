//! The two views of a class used throughout the crate: a restrictable state
//! (for dimension recursion and SOA) and a pattern membership oracle.

use alloc::vec::Vec;

use crate::hypothesis::{HypothesisClass, Mask, VersionSpace};
use crate::label::{Label, Point};
use crate::pattern::{Pattern, PatternClassExplicit};

/// A class over a finite domain that can be restricted by an example.
pub trait ConceptClass: Clone {
    /// Canonical value identifying the class, used as a memo key.
    type Key: Ord + Clone;

    fn domain_size(&self) -> usize;
    fn label_count(&self) -> usize;
    fn is_empty(&self) -> bool;
    /// `{S : (x, y) ∘ S ∈ self}`.
    fn restrict(&self, x: Point, y: Label) -> Self;
    fn key(&self) -> Self::Key;
}

impl ConceptClass for PatternClassExplicit {
    type Key = Vec<Pattern>;

    fn domain_size(&self) -> usize {
        PatternClassExplicit::domain_size(self)
    }

    fn label_count(&self) -> usize {
        PatternClassExplicit::label_count(self)
    }

    fn is_empty(&self) -> bool {
        PatternClassExplicit::is_empty(self)
    }

    fn restrict(&self, x: Point, y: Label) -> Self {
        PatternClassExplicit::restrict(self, x, y)
    }

    fn key(&self) -> Vec<Pattern> {
        self.patterns().iter().cloned().collect()
    }
}

impl ConceptClass for VersionSpace {
    type Key = Mask;

    fn domain_size(&self) -> usize {
        self.base().domain_size()
    }

    fn label_count(&self) -> usize {
        self.base().label_count()
    }

    fn is_empty(&self) -> bool {
        VersionSpace::is_empty(self)
    }

    fn restrict(&self, x: Point, y: Label) -> Self {
        VersionSpace::restrict(self, x, y)
    }

    fn key(&self) -> Mask {
        self.active().clone()
    }
}

/// Membership oracle for a pattern class.
pub trait PatternMembership {
    fn admits(&self, s: &Pattern) -> bool;
}

impl PatternMembership for PatternClassExplicit {
    fn admits(&self, s: &Pattern) -> bool {
        self.contains(s)
    }
}

impl PatternMembership for HypothesisClass {
    fn admits(&self, s: &Pattern) -> bool {
        HypothesisClass::admits(self, s)
    }
}

impl PatternMembership for VersionSpace {
    fn admits(&self, s: &Pattern) -> bool {
        VersionSpace::admits(self, s)
    }
}

impl<T: PatternMembership + ?Sized> PatternMembership for &T {
    fn admits(&self, s: &Pattern) -> bool {
        (**self).admits(s)
    }
}
