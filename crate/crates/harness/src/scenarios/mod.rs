//! Scenario drivers. Each one runs seeded trials in parallel, evaluates the
//! relevant bound and reports a pass flag.

mod adversary;
mod agnostic;
mod perceptron;
mod realizable;

use std::collections::BTreeMap;

use lol_core::{ConceptClass, PatternMembership, VersionSpace};
use serde_json::{json, Map, Value};

use crate::accounting::{ResultRow, RowBuilder};
use crate::classfile::{ClassSource, LoadedClass};
use crate::config::{ExperimentConfig, Scenario};
use crate::error::{usage, Result};
use crate::report::Outcome;
use crate::streams::RealizableSource;

pub use adversary::{
    deterministic_learner, randomized_learner, run_adversary, DETERMINISTIC_LEARNERS, RANDOMIZED_LEARNERS,
};
pub use realizable::{coverage_check, CoverageStats};

/// Absolute slack for comparisons of exact expectations against bounds.
pub const SLACK: f64 = 1e-9;

/// Everything a scenario needs from a class.
pub trait Class: RealizableSource + PatternMembership + Send + Sync + 'static {}
impl<C: RealizableSource + PatternMembership + Send + Sync + 'static> Class for C {}

/// Result of one trial.
#[derive(Clone, Debug, Default)]
pub struct TrialOutcome {
    pub rows: Vec<ResultRow>,
    pub pass: bool,
    /// Extra per-trial numbers, averaged into the summary.
    pub stats: BTreeMap<&'static str, f64>,
}

impl TrialOutcome {
    pub fn new(rows: RowBuilder, pass: bool) -> Self {
        TrialOutcome { rows: rows.into_rows(), pass, stats: BTreeMap::new() }
    }

    pub fn stat(mut self, key: &'static str, v: f64) -> Self {
        self.stats.insert(key, v);
        self
    }

    fn last(&self) -> ResultRow {
        self.rows.last().copied().unwrap_or(ResultRow {
            trial: 0,
            t: 0,
            loss: 0.0,
            cum_loss: 0.0,
            opt: 0.0,
            regret: 0.0,
            bound: 0.0,
        })
    }
}

/// Dispatches on a loaded class, viewing hypothesis classes as version spaces.
macro_rules! with_class {
    ($loaded:expr, |$c:ident| $body:expr) => {
        match $loaded {
            LoadedClass::Hypothesis(h) => {
                let $c = VersionSpace::from_class(h.clone());
                $body
            }
            LoadedClass::Pattern(p) => {
                let $c = p.clone();
                $body
            }
        }
    };
}
pub(crate) use with_class;

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    config.validate()?;
    let source = config.class.as_deref().map(ClassSource::resolve).transpose()?;
    let need = || source.as_ref().ok_or_else(|| usage(format!("scenario {} needs --class", config.scenario.name())));
    match config.scenario {
        Scenario::Dim => with_class!(need()?.class()?, |c| realizable::dim(config, &c)),
        Scenario::Soa => {
            let loaded = need()?.class()?;
            let opt = loaded.as_hypotheses().ok();
            with_class!(loaded, |c| realizable::soa(config, &c, opt))
        }
        Scenario::Cover => with_class!(need()?.class()?, |c| realizable::cover(config, &c)),
        Scenario::Perceptron => perceptron::run(config),
        Scenario::Mw => agnostic::mw(config),
        Scenario::Agnostic => agnostic::agnostic(config, need()?.class()?.as_hypotheses()?),
        Scenario::Hybrid => agnostic::hybrid(config, need()?.class()?.as_hypotheses()?),
        Scenario::Adversary(kind) => run_adversary(config, kind, source.as_ref()),
    }
}

/// Summary fields shared by every row-producing scenario, plus `extra`.
pub(crate) fn aggregate(config: &ExperimentConfig, trials: Vec<TrialOutcome>, extra: Map<String, Value>) -> Outcome {
    let n = trials.len() as f64;
    let lasts: Vec<ResultRow> = trials.iter().map(TrialOutcome::last).collect();
    let mean = |f: fn(&ResultRow) -> f64| lasts.iter().map(f).sum::<f64>() / n;
    let max = |f: fn(&ResultRow) -> f64| lasts.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    let min = |f: fn(&ResultRow) -> f64| lasts.iter().map(f).fold(f64::INFINITY, f64::min);
    let violations = trials.iter().filter(|t| !t.pass).count();

    let mut stats: BTreeMap<&'static str, f64> = BTreeMap::new();
    for t in &trials {
        for (k, v) in &t.stats {
            *stats.entry(k).or_insert(0.0) += v / n;
        }
    }

    let mut summary = json!({
        "scenario": config.scenario.name(),
        "seed": config.seed,
        "trials": trials.len(),
        "T": config.horizon,
        "loss_mean": mean(|r| r.cum_loss),
        "loss_max": max(|r| r.cum_loss),
        "opt_mean": mean(|r| r.opt),
        "regret_mean": mean(|r| r.regret),
        "regret_min": min(|r| r.regret),
        "regret_max": max(|r| r.regret),
        "bound": lasts.first().map_or(0.0, |r| r.bound),
        "violations": violations,
        "pass": violations == 0,
    });
    let obj = summary.as_object_mut().expect("summary is an object");
    if let Some(k) = config.k {
        obj.insert("k".into(), json!(k));
    }
    if !stats.is_empty() {
        obj.insert("stats".into(), json!(stats));
    }
    obj.extend(extra);
    let pass = obj["pass"].as_bool().unwrap_or(false);
    let rows = trials.into_iter().flat_map(|t| t.rows).collect();
    Outcome { rows, summary, pass }
}

/// Validates `1 <= k < L`.
pub(crate) fn check_k<C: ConceptClass>(class: &C, k: usize) -> Result<()> {
    if k == 0 || k >= class.label_count() {
        return Err(usage(format!("--k must satisfy 1 <= k < {} labels", class.label_count())));
    }
    Ok(())
}
