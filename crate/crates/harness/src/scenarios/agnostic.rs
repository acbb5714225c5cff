//! Expert aggregation, agnostic cover learners and the negative-regret hybrid.

use lol_core::dimension::minimal_finite_list_size;
use lol_core::learners::agnostic::{
    anytime_bound, fixed_horizon_bound, mw_bound, AnytimeAgnostic, FixedHorizonAgnostic,
};
use lol_core::learners::cover::cover_family_size;
use lol_core::learners::hybrid::negative_regret_learner;
use lol_core::learners::{MultiplicativeWeights, RandomizedListLearner, TableExpert};
use lol_core::{list_littlestone_dim, Dim, Error, HypothesisClass, Label, LabelList, Point, VersionSpace};
use rand::seq::index::sample;
use rand::Rng;
use serde_json::{json, Map};

use super::{aggregate, check_k, TrialOutcome, SLACK};
use crate::accounting::{ClassOpt, MistakeCounters, RowBuilder};
use crate::config::{ExperimentConfig, StreamKind};
use crate::error::{usage, HarnessError, Result};
use crate::parallel::run_trials;
use crate::report::Outcome;
use crate::streams::{noisy_stream, trial_rng};

fn within(rows: &RowBuilder) -> bool {
    rows.last().is_none_or(|r| r.regret <= r.bound + SLACK)
}

pub(super) fn mw(config: &ExperimentConfig) -> Result<Outcome> {
    let (k, labels, n, horizon) = (config.k()?, config.labels, config.experts, config.horizon);
    if k == 0 || k >= labels {
        return Err(usage(format!("--k must satisfy 1 <= k < {labels} labels")));
    }
    if n == 0 {
        return Err(usage("--experts must be at least 1"));
    }
    let bound = mw_bound(n, horizon);
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let tables: Vec<Vec<LabelList>> = (0..n)
            .map(|_| {
                (0..horizon)
                    .map(|_| LabelList::new(sample(&mut rng, labels, k).into_iter().map(Label::new).collect(), labels))
                    .collect::<lol_core::Result<_>>()
            })
            .collect::<lol_core::Result<_>>()?;
        let experts = tables.iter().map(|t| TableExpert::new(t.clone(), LabelList::first(k))).collect();
        let mut learner = MultiplicativeWeights::new(experts, horizon, k, labels)?;
        let mut counters = MistakeCounters::new(n);
        let mut rows = RowBuilder::new(trial);
        let mut pass = true;
        let x = Point(0);
        for t in 0..horizon {
            let dist = learner.marginals(&x)?;
            let y = match config.stream {
                StreamKind::Random => Label::new(rng.gen_range(0..labels)),
                StreamKind::Adversarial => (0..labels)
                    .map(Label::new)
                    .fold(Label(0), |best, y| if dist.get(y) < dist.get(best) { y } else { best }),
            };
            learner.feed(&x, y)?;
            let best = counters.observe(|i| !tables[i][t].contains(y));
            rows.push(dist.loss(y), best as f64, bound);
            pass &= within(&rows);
        }
        Ok(TrialOutcome::new(rows, pass))
    })?;
    let mut extra = Map::new();
    extra.insert("experts".into(), json!(n));
    extra.insert("gamma".into(), json!(lol_core::learners::mw::learning_rate(n, horizon)));
    Ok(aggregate(config, trials, extra))
}

fn dim_of(class: &VersionSpace, k: usize) -> Result<usize> {
    match list_littlestone_dim(class, k)?.dim {
        Dim::Finite(d) => Ok(d),
        Dim::Empty => Err(Error::EmptyClass.into()),
        Dim::Infinite => Err(Error::InfiniteDimension.into()),
    }
}

pub(super) fn agnostic(config: &ExperimentConfig, class: &HypothesisClass) -> Result<Outcome> {
    let k = config.k()?;
    let vs = VersionSpace::from_class(class.clone());
    check_k(&vs, k)?;
    let d = dim_of(&vs, k)?;
    let (labels, horizon) = (class.label_count(), config.horizon);
    let bound_at = |t: usize| {
        if config.anytime {
            anytime_bound(d, t, labels, k)
        } else {
            fixed_horizon_bound(d, horizon, labels, k)
        }
    };
    if !config.anytime && cover_family_size(d, horizon, labels, k) > config.budget {
        return Err(HarnessError::Budget(format!(
            "cover family of size {} exceeds the budget {}",
            cover_family_size(d, horizon, labels, k),
            config.budget
        )));
    }
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let s = noisy_stream(class, horizon, config.noise, &mut rng);
        let mut learner: Box<dyn RandomizedListLearner> = if config.anytime {
            Box::new(AnytimeAgnostic::new(vs.clone(), k, config.budget)?)
        } else {
            Box::new(FixedHorizonAgnostic::new(&vs, k, horizon, config.budget)?)
        };
        let mut opt = ClassOpt::new(class);
        let mut rows = RowBuilder::new(trial);
        let mut pass = true;
        for (t, z) in s.iter().enumerate() {
            let dist = learner.marginals(&z.x)?;
            learner.feed(&z.x, z.y)?;
            let best = opt.observe(z.x, z.y);
            rows.push(dist.loss(z.y), best as f64, bound_at(t + 1));
            pass &= within(&rows);
        }
        Ok(TrialOutcome::new(rows, pass))
    })?;
    let mut extra = Map::new();
    extra.insert("dim".into(), json!(d));
    extra.insert("anytime".into(), json!(config.anytime));
    extra.insert("noise".into(), json!(config.noise));
    if !config.anytime {
        let size = cover_family_size(d, horizon, labels, k);
        extra.insert("experts".into(), json!(u64::try_from(size).unwrap_or(u64::MAX)));
    }
    Ok(aggregate(config, trials, extra))
}

pub(super) fn hybrid(config: &ExperimentConfig, class: &HypothesisClass) -> Result<Outcome> {
    let k = config.k()?;
    let vs = VersionSpace::from_class(class.clone());
    let labels = class.label_count();
    let kh = minimal_finite_list_size(&vs);
    if k <= kh || k > labels {
        return Err(usage(format!("--k must satisfy {kh} < k <= {labels} for this class")));
    }
    let dh = dim_of(&vs, kh)?;
    let p = (labels - k) as f64 / (labels - kh) as f64;
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let s = noisy_stream(class, config.horizon, config.noise, &mut rng);
        let mut learner = negative_regret_learner(vs.clone(), k, config.budget)?;
        let mut opt = ClassOpt::new(class);
        let mut rows = RowBuilder::new(trial);
        let (mut dev, mut base_loss, mut pass) = (0.0f64, 0.0, true);
        for (t, z) in s.iter().enumerate() {
            let (b, a) = learner.marginals_with_base(&z.x)?;
            learner.feed(&z.x, z.y)?;
            let (la, lb) = (a.loss(z.y), b.loss(z.y));
            dev = dev.max((la - p * lb).abs());
            base_loss += lb;
            let best = opt.observe(z.x, z.y) as f64;
            rows.push(la, best, p * (best + anytime_bound(dh, t + 1, labels, kh)) - best);
            pass &= within(&rows);
        }
        let negative = rows.last().is_some_and(|r| r.regret < 0.0);
        Ok(TrialOutcome::new(rows, pass && dev <= SLACK)
            .stat("identity_deviation", dev)
            .stat("base_loss", base_loss)
            .stat("negative_regret", if negative { 1.0 } else { 0.0 }))
    })?;
    let mut extra = Map::new();
    extra.insert("p".into(), json!(p));
    extra.insert("k_h".into(), json!(kh));
    extra.insert("dim_k_h".into(), json!(dh));
    Ok(aggregate(config, trials, extra))
}
