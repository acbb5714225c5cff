//! Lower-bound constructions run against concrete learners.

use lol_core::adversaries::{
    corrupted_branch_sequence, extremal_p2_run, item2_round_loss, p2_horizon, random_branch_adversary,
    symmetric_difference_sequence, tree_adversary, AdversaryTranscript, MonotoneLearner, P1Learner, P2Soa,
};
use lol_core::adversaries::monotone::{extends_monotone, random_monotone_pattern};
use lol_core::learners::agnostic::FixedHorizonAgnostic;
use lol_core::learners::{ListLearner, ListSoa, PointMass, RandomizedListLearner, UniformListLearner};
use lol_core::tree::{is_shattered, LayeredTree};
use lol_core::adversaries::separation_tree;
use lol_core::{
    list_littlestone_dim, ConceptClass, Dim, HypothesisClass, Label, MistakeTree, MultiHypothesis, Point,
    TreeView, VersionSpace,
};
use rand::Rng;
use serde_json::{json, Map, Value};

use super::{aggregate, check_k, with_class, Class, TrialOutcome, SLACK};
use crate::accounting::{ClassOpt, MistakeCounters, RowBuilder};
use crate::classfile::{tree_json, ClassSource, LoadedClass, Named};
use crate::config::{AdversaryKind, ExperimentConfig};
use crate::error::{usage, Result};
use crate::learners::{constant_learner, CyclicListLearner, RecentLabelsLearner};
use crate::parallel::run_trials;
use crate::report::Outcome;
use crate::streams::trial_rng;

pub const DETERMINISTIC_LEARNERS: [&str; 4] = ["soa", "constant", "cyclic", "recent"];
pub const RANDOMIZED_LEARNERS: [&str; 3] = ["uniform", "soa", "agnostic"];

/// A deterministic `k`-list learner by name.
pub fn deterministic_learner<C: ConceptClass + 'static>(
    name: &str,
    class: &C,
    k: usize,
) -> Result<Box<dyn ListLearner>> {
    let labels = class.label_count();
    Ok(match name {
        "soa" => Box::new(ListSoa::new(class.clone(), k)?),
        "constant" => Box::new(constant_learner(labels, k)),
        "cyclic" => Box::new(CyclicListLearner::new(labels, k)),
        "recent" => Box::new(RecentLabelsLearner::new(labels, k)),
        other => return Err(usage(format!("unknown deterministic learner {other:?}"))),
    })
}

/// A randomized `k`-list learner by name; `agnostic` is the fixed-horizon
/// cover learner for `horizon` rounds.
pub fn randomized_learner<C: ConceptClass + 'static>(
    name: &str,
    class: &C,
    k: usize,
    horizon: usize,
    budget: u128,
) -> Result<Box<dyn RandomizedListLearner>> {
    Ok(match name {
        "uniform" => Box::new(UniformListLearner::new(class.label_count(), k)?),
        "soa" => Box::new(PointMass(ListSoa::new(class.clone(), k)?)),
        "agnostic" => Box::new(FixedHorizonAgnostic::new(class, k, horizon, budget)?),
        other => return Err(usage(format!("unknown randomized learner {other:?}"))),
    })
}

fn witness<C: Class>(class: &C, k: usize) -> Result<(usize, MistakeTree)> {
    let res = list_littlestone_dim(class, k)?;
    match (res.dim, res.witness) {
        (Dim::Finite(d), Some(tree)) => Ok((d, tree)),
        (Dim::Empty, _) => Err(lol_core::Error::EmptyClass.into()),
        _ => Err(lol_core::Error::InfiniteDimension.into()),
    }
}

/// Rows of a transcript against a fixed `opt` source and bound.
fn transcript_rows(
    trial: usize,
    t: &AdversaryTranscript,
    mut opt: impl FnMut(Point, Label) -> usize,
    mut bound: impl FnMut(usize) -> f64,
) -> RowBuilder {
    let mut rows = RowBuilder::new(trial);
    for (i, (z, loss)) in t.sequence.iter().zip(&t.losses).enumerate() {
        let best = opt(z.x, z.y);
        rows.push(*loss, best as f64, bound(i + 1));
    }
    rows
}

pub fn run_adversary(config: &ExperimentConfig, kind: AdversaryKind, source: Option<&ClassSource>) -> Result<Outcome> {
    let class = || {
        source
            .ok_or_else(|| usage(format!("adversary {} needs --class", kind.name())))
            .and_then(|s| s.class())
    };
    match kind {
        AdversaryKind::Tree => {
            let loaded = class()?;
            let hyps = loaded.as_hypotheses().ok();
            with_class!(loaded, |c| tree(config, &c, hyps))
        }
        AdversaryKind::RandomBranch => match source {
            Some(s) => {
                let loaded = s.class()?;
                with_class!(loaded, |c| random_branch_on_class(config, &c))
            }
            None => random_branch_stationary(config),
        },
        AdversaryKind::CorruptedBranch => corrupted(config),
        AdversaryKind::Symdiff => {
            let owned;
            let loaded = match source {
                Some(s) => s.class()?,
                None => {
                    owned = Named::Symdiff.materialize()?;
                    &owned
                }
            };
            symdiff(config, loaded.as_hypotheses()?)
        }
        AdversaryKind::P1 => match source.and_then(|s| s.named) {
            Some(Named::P1 { d, k }) => p1(config, d, k),
            _ => Err(usage("adversary p1 needs --class p1:d:k")),
        },
        AdversaryKind::P2 => match source.and_then(|s| s.named) {
            Some(Named::P2 { d, k, .. }) => p2(config, d, k),
            _ => Err(usage("adversary p2 needs --class p2:d:k")),
        },
        AdversaryKind::Monotone => monotone(config, source.map(|s| s.class()).transpose()?),
    }
}

fn tree<C: Class>(config: &ExperimentConfig, class: &C, hyps: Option<&HypothesisClass>) -> Result<Outcome> {
    let k = config.k()?;
    check_k(class, k)?;
    let name = config.learner.as_deref().unwrap_or("soa");
    let (d, tree) = witness(class, k)?;
    let trials = run_trials(config.trials, |trial| {
        let mut learner = deterministic_learner(name, class, k)?;
        let t = tree_adversary(&tree, &mut learner)?;
        let mut opt = hyps.map(ClassOpt::new);
        let rows = transcript_rows(trial, &t, |x, y| opt.as_mut().map_or(0, |o| o.observe(x, y)), |_| d as f64);
        let pass = t.mistakes() == d && class.admits(&t.sequence);
        Ok(TrialOutcome::new(rows, pass))
    })?;
    let mut extra = Map::new();
    extra.insert("dim".into(), json!(d));
    extra.insert("learner".into(), json!(name));
    extra.insert("witness".into(), tree_json(&tree));
    Ok(aggregate(config, trials, extra))
}

fn random_branch_rows<T: TreeView + Sync + ?Sized>(
    config: &ExperimentConfig,
    tree: &T,
    k: usize,
    make: impl Fn() -> Result<Box<dyn RandomizedListLearner>> + Sync,
) -> Result<Vec<TrialOutcome>> {
    let floor = 1.0 / (k as f64 + 1.0);
    run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let mut learner = make()?;
        let t = random_branch_adversary(tree, &mut learner, &mut rng)?;
        let rows = transcript_rows(trial, &t, |_, _| 0, |i| i as f64 * floor);
        let pass = t.losses.iter().all(|&l| l >= floor - SLACK);
        let min = t.losses.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(TrialOutcome::new(rows, pass).stat("min_round_loss", if min.is_finite() { min } else { floor }))
    })
}

fn random_branch_on_class<C: Class>(config: &ExperimentConfig, class: &C) -> Result<Outcome> {
    let k = config.k()?;
    check_k(class, k)?;
    let name = config.learner.as_deref().unwrap_or("uniform");
    let (d, tree) = witness(class, k)?;
    let trials = random_branch_rows(config, &tree, k, || randomized_learner(name, class, k, d, config.budget))?;
    let mut extra = Map::new();
    extra.insert("dim".into(), json!(d));
    extra.insert("learner".into(), json!(name));
    Ok(aggregate(config, trials, extra))
}

fn random_branch_stationary(config: &ExperimentConfig) -> Result<Outcome> {
    let k = config.k()?;
    let labels = config.labels.max(k + 1);
    if let Some(name) = config.learner.as_deref().filter(|&n| n != "uniform") {
        return Err(usage(format!("learner {name:?} needs --class; only uniform runs on the stationary tree")));
    }
    let tree = LayeredTree::stationary(config.horizon, Point(0), (0..=k).map(Label::new).collect())?;
    let trials = random_branch_rows(config, &tree, k, || Ok(Box::new(UniformListLearner::new(labels, k)?)))?;
    let mut extra = Map::new();
    extra.insert("learner".into(), json!("uniform"));
    extra.insert("labels".into(), json!(labels));
    Ok(aggregate(config, trials, extra))
}

fn corrupted(config: &ExperimentConfig) -> Result<Outcome> {
    let (kh, labels, horizon) = (config.k()?, config.labels, config.horizon);
    if kh == 0 || kh >= labels {
        return Err(usage(format!("--k (the base list size) must satisfy 1 <= k < {labels} labels")));
    }
    let p = config.p.ok_or_else(|| usage("adversary corrupted-branch needs --p"))?;
    if p.num.saturating_mul(kh as u64 + 1) > p.den {
        return Err(usage(format!("p = {}/{} exceeds 1/(k+1)", p.num, p.den)));
    }
    // p·T is rounded down to a whole number of corrupted rounds.
    let flips = (p.num as u128 * horizon as u128 / p.den as u128) as u64;
    let (p_num, p_den) = if horizon == 0 { (0, 1) } else { (flips, horizon as u64) };
    let p_nominal = p.value();
    let edges: Vec<Label> = (0..kh).map(Label::new).collect();
    let tree = LayeredTree::stationary(horizon, Point(0), edges.clone())?;
    let wide = MultiHypothesis::new(vec![lol_core::LabelList::new(edges.clone(), labels)?])?;
    let class = HypothesisClass::new(vec![wide], 1, labels, kh)?;
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let branch = corrupted_branch_sequence(&tree, labels, p_num, p_den, &mut rng)?;
        let mut learner = UniformListLearner::new(labels, kh)?;
        let mut opt = ClassOpt::new(&class);
        let mut rows = RowBuilder::new(trial);
        let mut item2_min = f64::INFINITY;
        for z in branch.sequence.iter() {
            let dist = learner.marginals(&z.x)?;
            learner.feed(&z.x, z.y)?;
            item2_min = item2_min.min(item2_round_loss(&dist, &edges, p_nominal));
            let best = opt.observe(z.x, z.y);
            rows.push(dist.loss(z.y), best as f64, p_nominal * rows.last().map_or(1, |r| r.t + 1) as f64);
        }
        let pass = rows.cumulative_loss() >= p_nominal * horizon as f64 - 1e-6
            && (horizon == 0 || item2_min >= p_nominal - SLACK);
        Ok(TrialOutcome::new(rows, pass).stat("item2_min_round_loss", if horizon == 0 { p_nominal } else { item2_min }))
    })?;
    let mut extra = Map::new();
    extra.insert("p".into(), json!(p_nominal));
    extra.insert("p_effective".into(), json!(if horizon == 0 { 0.0 } else { flips as f64 / horizon as f64 }));
    extra.insert("corrupted_rounds".into(), json!(flips));
    extra.insert("labels".into(), json!(labels));
    Ok(aggregate(config, trials, extra))
}

fn symdiff(config: &ExperimentConfig, class: &HypothesisClass) -> Result<Outcome> {
    let hs = class.hypotheses();
    if hs.len() < 2 {
        return Err(usage("symdiff needs a class with at least two hypotheses"));
    }
    let (ha, hb) = (&hs[0], &hs[1]);
    let x = (0..class.domain_size())
        .map(Point::new)
        .find(|&x| ha.image(x) != hb.image(x))
        .ok_or_else(|| usage("the first two hypotheses agree everywhere"))?;
    let (kh, labels) = (class.kprime(), class.label_count());
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let s = symmetric_difference_sequence(ha, hb, x, config.horizon, &mut rng)?;
        let mut learner = UniformListLearner::new(labels, kh)?;
        let mut counters = MistakeCounters::new(2);
        let mut rows = RowBuilder::new(trial);
        for z in s.iter() {
            let dist = learner.marginals(&z.x)?;
            learner.feed(&z.x, z.y)?;
            let best = counters.observe(|i| !hs[i].contains(z.x, z.y));
            rows.push(dist.loss(z.y), best as f64, 0.0);
        }
        let pass = rows.last().is_none_or(|r| r.regret >= -SLACK);
        Ok(TrialOutcome::new(rows, pass))
    })?;
    let regret_mean = trials.iter().filter_map(|t| t.rows.last()).map(|r| r.regret).sum::<f64>() / trials.len() as f64;
    let mut extra = Map::new();
    extra.insert("k_h".into(), json!(kh));
    extra.insert("regret_over_sqrt_T".into(), json!(regret_mean / (config.horizon.max(1) as f64).sqrt()));
    Ok(aggregate(config, trials, extra))
}

fn p1(config: &ExperimentConfig, d: usize, k: usize) -> Result<Outcome> {
    let bound = d as f64 / (k as f64 + 1.0);
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let mut learner = P1Learner::new(d, k);
        let mut rows = RowBuilder::new(trial);
        for _ in 0..config.horizon {
            let x = Point::new(rng.gen_range(0..d));
            let y = learner.known(x).unwrap_or_else(|| Label::new(rng.gen_range(0..=k)));
            let dist = learner.marginals(&x)?;
            learner.feed(&x, y)?;
            rows.push(dist.loss(y), 0.0, bound);
        }
        let pass = rows.cumulative_loss() <= bound + SLACK;
        Ok(TrialOutcome::new(rows, pass))
    })?;
    let mut extra = Map::new();
    extra.insert("d".into(), json!(d));
    extra.insert("k".into(), json!(k));
    Ok(aggregate(config, trials, extra))
}

fn p2(config: &ExperimentConfig, d: usize, k: usize) -> Result<Outcome> {
    let eps = config.epsilon;
    let name = config.learner.as_deref().unwrap_or("soa");
    let target = d as f64 - eps;
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let mut learner: Box<dyn RandomizedListLearner> = match name {
            "soa" => Box::new(PointMass(P2Soa::new(d, k))),
            "uniform" => Box::new(UniformListLearner::new(k + 1, k)?),
            other => return Err(usage(format!("unknown learner {other:?} for p2; use soa or uniform"))),
        };
        let t = extremal_p2_run(&mut learner, d, k, eps, &mut rng)?;
        let (mut zeros, mut outside) = (0usize, 0usize);
        let rows = transcript_rows(
            trial,
            &t,
            |_, y| {
                zeros += usize::from(y == Label(0));
                outside += usize::from(y.index() > k);
                zeros.saturating_sub(d) + outside
            },
            |_| target,
        );
        let pass = t.expected_loss() >= target - SLACK;
        Ok(TrialOutcome::new(rows, pass))
    })?;
    let mut extra = Map::new();
    extra.insert("d".into(), json!(d));
    extra.insert("k".into(), json!(k));
    extra.insert("epsilon".into(), json!(eps));
    extra.insert("horizon".into(), json!(p2_horizon(d, k, eps)));
    extra.insert("learner".into(), json!(name));
    Ok(aggregate(config, trials, extra))
}

fn monotone(config: &ExperimentConfig, class: Option<&LoadedClass>) -> Result<Outcome> {
    let domain = (2 * config.horizon).max(2);
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let s = random_monotone_pattern(config.horizon, domain, &mut rng);
        let mut learner = MonotoneLearner::new();
        let mut rows = RowBuilder::new(trial);
        for z in s.iter() {
            let list = learner.predict(&z.x)?;
            learner.feed(&z.x, z.y)?;
            rows.push(if list.contains(z.y) { 0.0 } else { 1.0 }, 0.0, 1.0);
        }
        let pass = rows.cumulative_loss() <= 1.0 && lol_core::adversaries::is_monotone_member(&s);
        Ok(TrialOutcome::new(rows, pass))
    })?;
    let mut extra = Map::new();
    let mut pass = trials.iter().all(|t| t.pass);
    if let Some(loaded) = class {
        let n = loaded.domain_size();
        let (extends, tree) = with_class!(loaded, |c| {
            let extends = extends_monotone(&c, n);
            let tree = if extends { Some(separation_tree(&c, 3.min(n), n)?) } else { None };
            let verified = tree.as_ref().is_some_and(|t| is_shattered(t, &c));
            (extends, tree.filter(|_| verified))
        });
        pass &= !extends || tree.is_some();
        extra.insert("extends_monotone".into(), json!(extends));
        extra.insert("separation_tree".into(), tree.as_ref().map_or(Value::Null, tree_json));
    }
    extra.insert("pass".into(), json!(pass));
    Ok(aggregate(config, trials, extra))
}
