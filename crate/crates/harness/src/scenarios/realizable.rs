//! Dimension, SOA and cover scenarios on realizable input.

use lol_core::learners::cover::{cover_experts, cover_family_size, CoverExpert};
use lol_core::learners::{ListLearner, ListSoa, OnlineListFunction, SoaOracle};
use lol_core::minimax::stabilized_minimax;
use lol_core::tree::is_shattered;
use lol_core::{list_littlestone_dim, ConceptClass, Dim, Error, HypothesisClass, LabelList, Label, Point};
use serde_json::{json, Map, Value};

use super::{aggregate, check_k, Class, TrialOutcome};
use crate::accounting::{ClassOpt, RowBuilder};
use crate::classfile::tree_json;
use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::parallel::run_trials;
use crate::report::Outcome;
use crate::streams::trial_rng;

fn dim_json(d: Dim) -> Value {
    match d {
        Dim::Finite(d) => json!(d),
        Dim::Empty => json!(-1),
        Dim::Infinite => json!("inf"),
    }
}

pub(super) fn dim<C: Class>(config: &ExperimentConfig, class: &C) -> Result<Outcome> {
    let k = config.k()?;
    check_k(class, k)?;
    let res = list_littlestone_dim(class, k)?;
    let cap = match (config.dim_cap, res.dim) {
        (Some(cap), _) => cap,
        (None, Dim::Finite(d)) => d + 3,
        (None, _) => 8,
    };
    let minimax = match stabilized_minimax(class, k, cap) {
        Ok(v) => Some(v),
        Err(Error::NotStabilized { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    // An infinite dimension shows up as a game value that never stabilizes.
    let agree = match (res.dim, minimax) {
        (Dim::Finite(d), Some(v)) => d == v,
        (Dim::Empty, Some(v)) => v == 0,
        (Dim::Infinite, None) => true,
        _ => false,
    };
    let shattered = res.witness.as_ref().is_none_or(|t| is_shattered(t, class));
    let pass = agree && shattered;
    let summary = json!({
        "scenario": "dim",
        "k": k,
        "dim": dim_json(res.dim),
        "minimax": minimax,
        "minimax_cap": cap,
        "agree": agree,
        "witness": res.witness.as_ref().map_or(Value::Null, tree_json),
        "witness_shattered": shattered,
        "pass": pass,
    });
    Ok(Outcome { rows: Vec::new(), summary, pass })
}

fn finite_dim<C: ConceptClass>(class: &C, k: usize) -> Result<usize> {
    match list_littlestone_dim(class, k)?.dim {
        Dim::Finite(d) => Ok(d),
        Dim::Empty => Err(Error::EmptyClass.into()),
        Dim::Infinite => Err(Error::InfiniteDimension.into()),
    }
}

pub(super) fn soa<C: Class>(config: &ExperimentConfig, class: &C, hyps: Option<&HypothesisClass>) -> Result<Outcome> {
    let k = config.k()?;
    check_k(class, k)?;
    let d = finite_dim(class, k)?;
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let s = class.sample_realizable(config.horizon, &mut rng);
        let mut soa = ListSoa::new(class.clone(), k)?;
        let mut opt = hyps.map(ClassOpt::new);
        let mut rows = RowBuilder::new(trial);
        for z in s.iter() {
            let list = soa.predict(&z.x)?;
            soa.feed(&z.x, z.y)?;
            let best = opt.as_mut().map_or(0, |o| o.observe(z.x, z.y));
            rows.push(if list.contains(z.y) { 0.0 } else { 1.0 }, best as f64, d as f64);
        }
        let pass = rows.cumulative_loss() <= d as f64;
        Ok(TrialOutcome::new(rows, pass).stat("length", s.len() as f64))
    })?;
    let mut extra = Map::new();
    extra.insert("dim".into(), json!(d));
    Ok(aggregate(config, trials, extra))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoverageStats {
    pub sequences: u128,
    pub uncovered: u128,
    pub nodes: u128,
}

/// Walks every realizable sequence of length `horizon`, tracking which experts
/// have covered it so far. Cover experts never read the true label, so their
/// lists depend on the points alone and can be advanced once per point.
pub fn coverage_check<C: ConceptClass>(
    class: &C,
    experts: Vec<CoverExpert<C>>,
    horizon: usize,
    budget: u128,
) -> Result<CoverageStats> {
    fn walk<C: ConceptClass>(
        class: &C,
        experts: &[CoverExpert<C>],
        left: usize,
        budget: u128,
        stats: &mut CoverageStats,
    ) -> Result<()> {
        if left == 0 {
            stats.sequences += 1;
            if experts.is_empty() {
                stats.uncovered += 1;
            }
            return Ok(());
        }
        for x in (0..class.domain_size()).map(Point::new) {
            let mut moved = experts.to_vec();
            let lists: Vec<LabelList> = moved
                .iter_mut()
                .map(|e| {
                    let l = e.list(x);
                    e.advance(x);
                    l
                })
                .collect();
            for y in (0..class.label_count()).map(Label::new) {
                let rest = class.restrict(x, y);
                if rest.is_empty() {
                    continue;
                }
                stats.nodes += 1;
                if stats.nodes > budget {
                    return Err(HarnessError::Budget(format!("coverage walk exceeded {budget} nodes")));
                }
                let alive: Vec<CoverExpert<C>> =
                    moved.iter().zip(&lists).filter(|(_, l)| l.contains(y)).map(|(e, _)| e.clone()).collect();
                walk(&rest, &alive, left - 1, budget, stats)?;
            }
        }
        Ok(())
    }
    let mut stats = CoverageStats::default();
    if !class.is_empty() {
        walk(class, &experts, horizon, budget, &mut stats)?;
    }
    Ok(stats)
}

fn clamp(v: u128) -> u64 {
    u64::try_from(v).unwrap_or(u64::MAX)
}

pub(super) fn cover<C: Class>(config: &ExperimentConfig, class: &C) -> Result<Outcome> {
    let k = config.k()?;
    check_k(class, k)?;
    let labels = class.label_count();
    let oracle = SoaOracle::shared(k, labels)?;
    let d = finite_dim(class, k)?;
    let closed = cover_family_size(d, config.horizon, labels, k);
    let experts = cover_experts(class, &oracle, config.horizon, config.budget)?;
    let enumerated = experts.len() as u128;
    let stats = coverage_check(class, experts, config.horizon, config.budget.saturating_mul(64))?;
    let pass = enumerated == closed && stats.uncovered == 0;
    let summary = json!({
        "scenario": "cover",
        "k": k,
        "T": config.horizon,
        "dim": d,
        "closed_form": clamp(closed),
        "enumerated": clamp(enumerated),
        "sequences": clamp(stats.sequences),
        "uncovered": clamp(stats.uncovered),
        "pass": pass,
    });
    Ok(Outcome { rows: Vec::new(), summary, pass })
}
