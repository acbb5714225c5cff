//! List online learning over finite domains.
//!
//! A `k`-list learner answers every round with a set of `k` candidate labels
//! and errs when the true label falls outside that set. This crate provides
//! the exact combinatorics behind that setting:
//!
//! * patterns, pattern classes and multi-labeled hypothesis classes
//!   ([`pattern`], [`hypothesis`]);
//! * the `(k+1)`-ary Littlestone dimension with witness trees, and an
//!   independent minimax game-value solver ([`dimension`], [`minimax`]);
//! * learners: List SOA, List Perceptron, the SSP cover family, multiplicative
//!   weights, the anytime agnostic learner and the negative-regret hybrid
//!   ([`learners`]);
//! * the adversaries that witness the matching lower bounds ([`adversaries`]);
//! * separable data with certified list margins ([`datagen`]).
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches files,
//! threads or the command line lives in the `lol` harness crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adversaries;
pub mod class;
pub mod datagen;
pub mod dimension;
pub mod error;
pub mod hypothesis;
pub mod label;
pub mod learners;
pub mod minimax;
pub mod pattern;
pub mod tree;

pub use class::{ConceptClass, PatternMembership};
pub use dimension::{list_littlestone_dim, Dim, DimensionResult, DimensionSolver};
pub use error::{Error, Result};
pub use hypothesis::{HypothesisClass, Mask, MultiHypothesis, VersionSpace};
pub use label::{Label, LabelList, ListDistribution, Point};
pub use pattern::{Example, Pattern, PatternClassExplicit};
pub use tree::{MistakeTree, TreeView};

/// Absolute tolerance for floating point invariants (marginal sums, norms).
pub const TOLERANCE: f64 = 1e-9;
