//! Experiment harness for list online learning: class loading, seeded trials,
//! regret accounting and CSV/JSON reporting around `lol-core`.

pub mod accounting;
pub mod classfile;
pub mod cli;
pub mod config;
pub mod error;
pub mod format;
pub mod learners;
pub mod parallel;
pub mod report;
pub mod scenarios;
pub mod streams;

pub use config::{AdversaryKind, ExperimentConfig, Rational, Scenario, StreamKind};
pub use error::{HarnessError, Result};
pub use report::Outcome;
pub use scenarios::run;
