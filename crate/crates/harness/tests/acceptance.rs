//! Acceptance checks. Prints one `[PASS]`/`[FAIL]` line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use lol::config::{ExperimentConfig, Rational, Scenario, StreamKind};
use lol::parallel::run_trials;
use lol::scenarios::{coverage_check, deterministic_learner, randomized_learner, DETERMINISTIC_LEARNERS};
use lol::streams::trial_rng;
use lol_core::adversaries::monotone::{extends_monotone, random_monotone_pattern};
use lol_core::adversaries::{
    corrupted_branch_sequence, extremal_p1, extremal_p2_run, is_monotone_member, item2_loss, item2_round_loss,
    p2_class_finite, random_branch_adversary, separation_tree, symmetric_difference_sequence, tree_adversary,
    two_hypothesis_opt, MonotoneLearner, P1Learner, P2Soa,
};
use lol_core::learners::cover::{cover_experts, cover_family_size, CoverFamily};
use lol_core::learners::hybrid::negative_regret_learner;
use lol_core::learners::{ListLearner, ListSoa, PointMass, RandomizedListLearner, SoaOracle, UniformListLearner};
use lol_core::minimax::stabilized_minimax;
use lol_core::tree::{is_shattered, LayeredTree};
use lol_core::{
    list_littlestone_dim, ConceptClass, Dim, HypothesisClass, Label, LabelList, ListDistribution, MultiHypothesis,
    Pattern, PatternClassExplicit, PatternMembership, Point, VersionSpace,
};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- class pools

fn random_hypothesis_class(rng: &mut ChaCha8Rng, n: usize, labels: usize, max_h: usize, kprime: usize) -> HypothesisClass {
    let size = rng.gen_range(1..=max_h);
    let mut rows: Vec<Vec<Vec<usize>>> = Vec::new();
    for _ in 0..size {
        let row: Vec<Vec<usize>> = (0..n).map(|_| sample(rng, labels, kprime).into_vec()).collect();
        let mut canon = row.clone();
        canon.iter_mut().for_each(|l| l.sort_unstable());
        if !rows.contains(&canon) {
            rows.push(canon);
        }
    }
    let hs = rows.iter().map(|r| MultiHypothesis::from_lists(r, labels).unwrap()).collect();
    HypothesisClass::new(hs, n, labels, kprime).unwrap()
}

/// Random classes with `|X| <= 4`, `L <= 5`, `|H| <= 12`, `k ∈ {1,2,3}`; every
/// fourth class with three or more labels has two-label images.
fn class_pool() -> Vec<(VersionSpace, usize)> {
    let mut rng = trial_rng(2024, 0);
    (0..240)
        .map(|i| {
            let n = rng.gen_range(1..=4);
            let labels = rng.gen_range(2..=5);
            let k = rng.gen_range(1..=3.min(labels - 1));
            let kprime = if i % 4 == 3 && labels >= 3 { 2 } else { 1 };
            (VersionSpace::from_class(random_hypothesis_class(&mut rng, n, labels, 12, kprime)), k)
        })
        .collect()
}

fn extremal_pool() -> Vec<(VersionSpace, usize, String)> {
    let mut out = Vec::new();
    for d in 1..=3 {
        for k in 1..=2 {
            out.push((VersionSpace::from_class(extremal_p1(d, k).unwrap().0), k, format!("P1({d},{k})")));
        }
    }
    for n in 3..=4 {
        for d in 1..=2 {
            for k in 1..=2 {
                let c = p2_class_finite(n, d, k).unwrap();
                out.push((VersionSpace::from_class(c), k, format!("P2({d},{k}) on {n} points")));
            }
        }
    }
    out
}

fn random_pattern_class(rng: &mut ChaCha8Rng) -> PatternClassExplicit {
    let n = rng.gen_range(1..=3);
    let labels = rng.gen_range(2..=3);
    let seeds: Vec<Pattern> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let len = rng.gen_range(1..=3);
            (0..len).map(|_| lol_core::Example::new(rng.gen_range(0..n), rng.gen_range(0..labels))).collect()
        })
        .collect();
    PatternClassExplicit::from_seeds(seeds, n, labels).unwrap()
}

// ---------------------------------------------------------------- criteria

fn dim_minimax_agree<C: ConceptClass>(class: &C, k: usize) -> Result<Dim, String> {
    let d = list_littlestone_dim(class, k).map_err(|e| e.to_string())?.dim;
    match d {
        Dim::Finite(d) => {
            let v = stabilized_minimax(class, k, d + 3).map_err(|e| e.to_string())?;
            ensure(v == d, || format!("dim {d} but minimax {v}"))?;
        }
        Dim::Infinite => {
            // The game value must keep growing: V_h = h for every horizon probed.
            for h in 0..=6 {
                let v = lol_core::minimax::minimax_value(class, k, h).map_err(|e| e.to_string())?;
                ensure(v == h, || format!("infinite dim but V_{h} = {v}"))?;
            }
        }
        Dim::Empty => return Err("empty class in pool".into()),
    }
    Ok(d)
}

fn c01() -> Check {
    let (mut finite, mut infinite, mut max_dim) = (0, 0, 0);
    for (i, (class, k)) in class_pool().iter().enumerate() {
        match dim_minimax_agree(class, *k).map_err(|e| format!("random class {i}: {e}"))? {
            Dim::Finite(d) => {
                finite += 1;
                max_dim = max_dim.max(d);
            }
            _ => infinite += 1,
        }
    }
    let extremal = extremal_pool();
    for (class, k, name) in &extremal {
        dim_minimax_agree(class, *k).map_err(|e| format!("{name}: {e}"))?;
    }
    let p1 = list_littlestone_dim(&VersionSpace::from_class(extremal_p1(2, 2).unwrap().0), 2).unwrap().dim;
    ensure(p1 == Dim::Finite(2), || format!("P1(2,2) has dim {p1}, expected 2"))?;
    let mut rng = trial_rng(77, 0);
    for i in 0..24 {
        let c = random_pattern_class(&mut rng);
        let k = rng.gen_range(1..c.label_count());
        dim_minimax_agree(&c, k).map_err(|e| format!("pattern class {i}: {e}"))?;
    }
    Ok(format!(
        "240 random classes ({finite} finite up to dim {max_dim}, {infinite} infinite), {} extremal, 24 pattern classes",
        extremal.len()
    ))
}

fn soa_walk(
    soa: &ListSoa<VersionSpace>,
    class: &VersionSpace,
    mistakes: usize,
    left: usize,
    d: usize,
    seqs: &mut u64,
) -> Result<(), String> {
    *seqs += 1;
    if left == 0 {
        return Ok(());
    }
    for x in (0..class.domain_size()).map(Point::new) {
        for y in (0..class.label_count()).map(Label::new) {
            let rest = class.restrict(x, y);
            if rest.is_empty() {
                continue;
            }
            let mut s = soa.clone();
            let list = s.predict(&x).map_err(|e| e.to_string())?;
            let m = mistakes + usize::from(!list.contains(y));
            s.feed(&x, y).map_err(|e| e.to_string())?;
            ensure(m <= d, || format!("{m} mistakes exceed dim {d}"))?;
            ensure(s.updates() == m, || "version space changed on a correct round".into())?;
            soa_walk(&s, &rest, m, left - 1, d, seqs)?;
        }
    }
    Ok(())
}

fn c02() -> Check {
    let mut pool: Vec<(VersionSpace, usize, String)> =
        class_pool().into_iter().enumerate().map(|(i, (c, k))| (c, k, format!("random class {i}"))).collect();
    pool.extend(extremal_pool());
    let (mut seqs, mut classes) = (0u64, 0);
    for (class, k, name) in &pool {
        let Some(d) = list_littlestone_dim(class, *k).unwrap().dim.finite() else { continue };
        let oracle = SoaOracle::shared(*k, class.label_count()).unwrap();
        let soa = ListSoa::with_oracle(class.clone(), oracle).unwrap();
        soa_walk(&soa, class, 0, 4, d, &mut seqs).map_err(|e| format!("{name}: {e}"))?;
        classes += 1;
    }
    Ok(format!("{seqs} realizable sequences of length <= 4 over {classes} finite-dimension classes, 0 violations"))
}

fn c03() -> Check {
    let mut pool: Vec<(VersionSpace, usize, String)> =
        class_pool().into_iter().enumerate().map(|(i, (c, k))| (c, k, format!("random class {i}"))).collect();
    pool.extend(extremal_pool());
    let mut runs = 0;
    for (class, k, name) in &pool {
        let res = list_littlestone_dim(class, *k).unwrap();
        let (Dim::Finite(d), Some(tree)) = (res.dim, res.witness) else { continue };
        ensure(is_shattered(&tree, class) && tree.is_complete(k + 1), || format!("{name}: bad witness"))?;
        for learner in DETERMINISTIC_LEARNERS {
            let mut l = deterministic_learner(learner, class, *k).map_err(|e| e.to_string())?;
            let t = tree_adversary(&tree, &mut l).map_err(|e| format!("{name}/{learner}: {e}"))?;
            ensure(t.mistakes() == d && t.len() == d, || {
                format!("{name}/{learner}: {} mistakes on a depth-{d} witness", t.mistakes())
            })?;
            ensure(class.admits(&t.sequence), || format!("{name}/{learner}: forced sequence not realizable"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs ({} learners), every run forced exactly dim mistakes", DETERMINISTIC_LEARNERS.len()))
}

fn check_rounds(losses: &[f64], k: usize, what: &str) -> Result<(), String> {
    let floor = 1.0 / (k as f64 + 1.0) - 1e-9;
    match losses.iter().position(|&l| l < floor) {
        Some(i) => Err(format!("{what}: round {} loss {} below 1/(k+1)", i + 1, losses[i])),
        None => Ok(()),
    }
}

fn c04() -> Check {
    let mut rounds = 0usize;
    let mut rng = trial_rng(4, 0);
    for (i, (class, k)) in class_pool().iter().enumerate() {
        let res = list_littlestone_dim(class, *k).unwrap();
        let (Dim::Finite(d), Some(tree)) = (res.dim, res.witness) else { continue };
        if d == 0 {
            continue;
        }
        for name in ["uniform", "soa", "agnostic"] {
            let mut l = randomized_learner(name, class, *k, d, 250_000).map_err(|e| e.to_string())?;
            let t = random_branch_adversary(&tree, &mut l, &mut rng).map_err(|e| e.to_string())?;
            check_rounds(&t.losses, *k, &format!("class {i}/{name}"))?;
            rounds += t.len();
        }
    }
    for d in 1..=4 {
        for k in 1..=2 {
            let (class, learner) = extremal_p1(d, k).unwrap();
            let vs = VersionSpace::from_class(class);
            let tree = list_littlestone_dim(&vs, k).unwrap().witness.unwrap();
            let mut l = learner;
            let t = random_branch_adversary(&tree, &mut l, &mut rng).map_err(|e| e.to_string())?;
            check_rounds(&t.losses, k, &format!("P1({d},{k})"))?;
            rounds += t.len();
        }
    }
    for (labels, k) in [(3, 1), (4, 2), (5, 3)] {
        let tree = LayeredTree::stationary(200, Point(0), (0..=k).map(Label::new).collect()).unwrap();
        let mut l = UniformListLearner::new(labels, k).unwrap();
        let t = random_branch_adversary(&tree, &mut l, &mut rng).map_err(|e| e.to_string())?;
        check_rounds(&t.losses, k, &format!("stationary L={labels}"))?;
        rounds += t.len();
    }
    Ok(format!("{rounds} rounds across uniform, SOA, agnostic and P1 learners, all >= 1/(k+1)"))
}

fn c05() -> Check {
    let mut runs = 0;
    let mut worst: f64 = 0.0;
    for features in [2, 3] {
        for labels in [3, 5] {
            for k in [1, 2] {
                let mut cfg = ExperimentConfig::new(Scenario::Perceptron);
                cfg.k = Some(k);
                cfg.features = features;
                cfg.labels = labels;
                cfg.horizon = 2000;
                cfg.trials = 50;
                cfg.seed = 5000 + (features * 100 + labels * 10 + k) as u64;
                let out = lol::run(&cfg).map_err(|e| e.to_string())?;
                ensure(out.pass, || format!("(D,L,k)=({features},{labels},{k}): {}", out.summary))?;
                for row in out.rows.iter().filter(|r| r.t == 2000) {
                    worst = worst.max(row.cum_loss / row.bound);
                }
                runs += 50;
            }
        }
    }
    Ok(format!("{runs} datasets, certificates valid, potential inequality exact, max mistakes/bound = {worst:.4}"))
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn c06() -> Check {
    let mut combos = 0;
    for d in 0..=2 {
        for t in 1..=5 {
            for labels in 2usize..=4 {
                for k in 1usize..=2.min(labels - 1) {
                    let choices = (labels - k).div_ceil(k) as u128 * k as u128;
                    let expected: u128 = (0..=d as u128).map(|i| binomial(t as u128, i) * choices.pow(i as u32)).sum();
                    let counted = CoverFamily::new(d, t, labels, k).unwrap().count() as u128;
                    ensure(counted == expected && cover_family_size(d, t, labels, k) == expected, || {
                        format!("(d,T,L,k)=({d},{t},{labels},{k}): counted {counted}, expected {expected}")
                    })?;
                    combos += 1;
                }
            }
        }
    }
    let mut rng = trial_rng(6, 0);
    let (mut classes, mut seqs) = (0, 0u128);
    while classes < 30 {
        let n = rng.gen_range(1..=3);
        let labels = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=2.min(labels - 1));
        let class = VersionSpace::from_class(random_hypothesis_class(&mut rng, n, labels, 10, 1));
        let oracle = SoaOracle::shared(k, labels).unwrap();
        let d = oracle.borrow_mut().dim(&class).finite().unwrap();
        if d > 2 {
            continue;
        }
        for horizon in 1..=5 {
            let experts = cover_experts(&class, &oracle, horizon, u128::MAX).unwrap();
            ensure(experts.len() as u128 == cover_family_size(d, horizon, labels, k), || "family size mismatch".into())?;
            let stats = coverage_check(&class, experts, horizon, u128::MAX).map_err(|e| e.to_string())?;
            ensure(stats.uncovered == 0, || format!("class {classes}, T={horizon}: {} uncovered", stats.uncovered))?;
            seqs += stats.sequences;
        }
        classes += 1;
    }
    Ok(format!("{combos} parameter tuples match the closed form; {seqs} realizable sequences over {classes} classes, 0 misses"))
}

fn c07() -> Check {
    let mut runs = 0;
    let mut worst: f64 = f64::NEG_INFINITY;
    for n in [1, 2, 5, 16, 32] {
        for horizon in [256, 1024, 4096] {
            for stream in [StreamKind::Random, StreamKind::Adversarial] {
                for (labels, k) in [(3, 1), (5, 2)] {
                    let mut cfg = ExperimentConfig::new(Scenario::Mw);
                    cfg.k = Some(k);
                    cfg.labels = labels;
                    cfg.experts = n;
                    cfg.horizon = horizon;
                    cfg.stream = stream;
                    cfg.trials = 3;
                    cfg.seed = (n * 7919 + horizon) as u64;
                    let out = lol::run(&cfg).map_err(|e| e.to_string())?;
                    for r in &out.rows {
                        ensure(r.regret <= r.bound + 1e-9, || {
                            format!("n={n}, T={horizon}, {stream:?}: regret {} > bound {} at t={}", r.regret, r.bound, r.t)
                        })?;
                        if r.t == horizon && r.bound > 0.0 {
                            worst = worst.max(r.regret / r.bound);
                        }
                    }
                    runs += 3;
                }
            }
        }
    }
    Ok(format!("{runs} runs, every prefix within 2·sqrt(T ln n); max final regret/bound = {worst:.3}"))
}

fn class_json(h: &HypothesisClass) -> String {
    let hyps: Vec<Vec<Vec<usize>>> = h
        .hypotheses()
        .iter()
        .map(|g| g.images().iter().map(|l| l.iter().map(Label::index).collect()).collect())
        .collect();
    json!({"kind": "hypothesis", "domain_size": h.domain_size(), "labels": h.label_count(),
           "kprime": h.kprime(), "hypotheses": hyps})
    .to_string()
}

fn c08() -> Check {
    let mut rng = trial_rng(8, 0);
    let (mut runs, mut classes) = (0, 0);
    while classes < 10 {
        let n = rng.gen_range(1..=3);
        let labels = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=2.min(labels - 1));
        let class = random_hypothesis_class(&mut rng, n, labels, 8, 1);
        let d = list_littlestone_dim(&VersionSpace::from_class(class.clone()), k).unwrap().dim.finite().unwrap();
        if d > 2 {
            continue;
        }
        for (anytime, horizon) in [(false, 16), (false, 64), (true, 64), (true, 128)] {
            let mut cfg = ExperimentConfig::new(Scenario::Agnostic);
            cfg.class = Some(class_json(&class));
            cfg.k = Some(k);
            cfg.horizon = horizon;
            cfg.anytime = anytime;
            cfg.noise = 0.3;
            cfg.trials = 2;
            cfg.seed = 800 + classes as u64;
            let out = lol::run(&cfg).map_err(|e| e.to_string())?;
            for r in &out.rows {
                ensure(r.regret <= r.bound + 1e-9, || {
                    format!("class {classes} (d={d}), anytime={anytime}, T={horizon}: regret {} > {} at t={}", r.regret, r.bound, r.t)
                })?;
            }
            runs += 2;
        }
        classes += 1;
    }
    Ok(format!("{runs} runs over {classes} classes with d <= 2, fixed-horizon and anytime, 0 violations"))
}

fn c09() -> Check {
    let horizon = 4096;
    let mut lines = Vec::new();
    // Scenario path: noisy streams on all functions of one point into four labels.
    for k in [2, 3] {
        let mut cfg = ExperimentConfig::new(Scenario::Hybrid);
        cfg.class = Some("all:1:4".into());
        cfg.k = Some(k);
        cfg.horizon = horizon;
        cfg.noise = 0.5;
        cfg.trials = 3;
        cfg.seed = 900 + k as u64;
        let out = lol::run(&cfg).map_err(|e| e.to_string())?;
        ensure(out.pass, || format!("k={k}: identity or bound violated: {}", out.summary))?;
        for r in out.rows.iter().filter(|r| r.t == horizon) {
            ensure(r.opt >= 0.3 * horizon as f64, || format!("k={k}: opt {} below 0.3T", r.opt))?;
            ensure(r.regret < 0.0, || format!("k={k}, trial {}: final regret {} not negative", r.trial, r.regret))?;
            lines.push(r.regret);
        }
    }
    // Direct path: two hypotheses, labels uniform over all four.
    let ha = MultiHypothesis::from_lists(&[vec![0]], 4).unwrap();
    let hb = MultiHypothesis::from_lists(&[vec![1]], 4).unwrap();
    let class = HypothesisClass::new(vec![ha.clone(), hb.clone()], 1, 4, 1).unwrap();
    for k in [2, 3] {
        let mut rng = trial_rng(99, k);
        let mut learner = negative_regret_learner(VersionSpace::from_class(class.clone()), k, 250_000).unwrap();
        let p = learner.scale();
        let (mut loss, mut s) = (0.0, Pattern::empty());
        for _ in 0..horizon {
            let y = Label::new(rng.gen_range(0..4));
            let (b, a) = learner.marginals_with_base(&Point(0)).unwrap();
            ensure((a.loss(y) - p * b.loss(y)).abs() <= 1e-9, || "per-round identity violated".into())?;
            learner.feed(&Point(0), y).unwrap();
            loss += a.loss(y);
            s.push(lol_core::Example { x: Point(0), y });
        }
        let opt = two_hypothesis_opt(&ha, &hb, &s) as f64;
        ensure(opt >= 0.3 * horizon as f64, || format!("opt {opt} below 0.3T"))?;
        ensure(loss - opt < 0.0, || format!("k={k}: regret {} not negative", loss - opt))?;
        lines.push(loss - opt);
    }
    let max = lines.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(format!("{} runs at T=4096, identity within 1e-9 every round, max final regret {max:.1}", lines.len()))
}

fn random_marginals(rng: &mut ChaCha8Rng, labels: usize, k: usize) -> ListDistribution {
    let parts = rng.gen_range(1..6);
    let weights: Vec<f64> = (0..parts).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut m = vec![0.0; labels];
    for w in weights {
        for y in sample(rng, labels, k).into_iter() {
            m[y] += w / total;
        }
    }
    ListDistribution::new(m.into_iter().map(|v| v.min(1.0)).collect(), k).unwrap()
}

fn c10() -> Check {
    let horizon = 512;
    let mut checks = 0usize;
    let mut rng = trial_rng(10, 0);
    for (kh, labels) in [(1, 3), (1, 4), (2, 4), (2, 5)] {
        for p in [Rational { num: 1, den: kh as u64 + 1 }, Rational { num: 1, den: 2 * (kh as u64 + 1) }] {
            let pv = p.value();
            for i in 0..=100 {
                let beta = kh as f64 * i as f64 / 100.0;
                let l = item2_loss(pv, beta, kh, labels);
                ensure(l >= pv - 1e-12, || format!("grid: β={beta}, loss {l} < p={pv}"))?;
                checks += 1;
            }
            let edges: Vec<Label> = (0..kh).map(Label::new).collect();
            let tree = LayeredTree::stationary(horizon, Point(0), edges.clone()).unwrap();
            let flips = p.num * horizon as u64 / p.den;
            let branch = corrupted_branch_sequence(&tree, labels, flips, horizon as u64, &mut rng).map_err(|e| e.to_string())?;
            let mut learner = UniformListLearner::new(labels, kh).unwrap();
            let mut mistakes = 0.0;
            for z in branch.sequence.iter() {
                for _ in 0..100 {
                    let m = random_marginals(&mut rng, labels, kh);
                    let l = item2_round_loss(&m, &edges, pv);
                    ensure(l >= pv - 1e-9, || format!("random marginals: loss {l} < p={pv}"))?;
                    checks += 1;
                }
                let dist = learner.marginals(&z.x).unwrap();
                learner.feed(&z.x, z.y).unwrap();
                mistakes += dist.loss(z.y);
            }
            ensure(mistakes >= pv * horizon as f64 - 1e-6, || {
                format!("k_H={kh}, L={labels}, p={pv}: {mistakes} expected mistakes < pT")
            })?;
        }
    }
    Ok(format!("{checks} loss evaluations >= p; corrupted streams at T=512 above pT for every (k_H, L, p)"))
}

fn c11() -> Check {
    let trials = 2000;
    let ha = MultiHypothesis::from_lists(&[vec![0, 1]], 4).unwrap();
    let hb = MultiHypothesis::from_lists(&[vec![2, 3]], 4).unwrap();
    let mut means = Vec::new();
    for horizon in [256usize, 1024, 4096] {
        let regrets = run_trials(trials, |trial| {
            let mut rng = trial_rng(11_000 + horizon as u64, trial);
            let s = symmetric_difference_sequence(&ha, &hb, Point(0), horizon, &mut rng)?;
            let mut learner = UniformListLearner::new(4, 2)?;
            let mut loss = 0.0;
            for z in s.iter() {
                loss += learner.marginals(&z.x)?.loss(z.y);
                learner.feed(&z.x, z.y)?;
            }
            Ok(loss - two_hypothesis_opt(&ha, &hb, &s) as f64)
        })
        .map_err(|e| e.to_string())?;
        means.push(regrets.iter().sum::<f64>() / trials as f64);
    }
    let r1 = means[1] / means[0];
    let r2 = means[2] / means[1];
    ensure((1.6..=2.4).contains(&r1) && (1.6..=2.4).contains(&r2), || {
        format!("mean regrets {means:?}, ratios {r1:.3}, {r2:.3}")
    })?;
    Ok(format!(
        "mean regret {:.2} / {:.2} / {:.2} at T=256/1024/4096, ratios {r1:.3} and {r2:.3}",
        means[0], means[1], means[2]
    ))
}

/// Exhaustive walk over realizable sequences for P1, tracking the learner's
/// exact expected loss along each prefix.
fn p1_walk(learner: &P1Learner, d: usize, k: usize, spent: f64, left: usize, worst: &mut f64, seqs: &mut u64) -> Result<(), String> {
    *seqs += 1;
    *worst = worst.max(spent);
    ensure(spent <= d as f64 / (k as f64 + 1.0) + 1e-9, || format!("P1({d},{k}): expected mistakes {spent}"))?;
    if left == 0 {
        return Ok(());
    }
    for x in (0..d).map(Point::new) {
        let ys: Vec<Label> = match learner.known(x) {
            Some(y) => vec![y],
            None => (0..=k).map(Label::new).collect(),
        };
        for y in ys {
            let mut l = learner.clone();
            let loss = l.marginals(&x).map_err(|e| e.to_string())?.loss(y);
            l.feed(&x, y).map_err(|e| e.to_string())?;
            p1_walk(&l, d, k, spent + loss, left - 1, worst, seqs)?;
        }
    }
    Ok(())
}

fn c12() -> Check {
    let combos: Vec<(usize, usize)> = (1..=6).flat_map(|d| (1..=2).map(move |k| (d, k))).collect();
    let results = run_trials(combos.len(), |i| {
        let (d, k) = combos[i];
        let (mut worst, mut seqs) = (0.0, 0u64);
        p1_walk(&P1Learner::new(d, k), d, k, 0.0, 6, &mut worst, &mut seqs).map_err(lol::HarnessError::Usage)?;
        Ok(seqs)
    })
    .map_err(|e| e.to_string())?;
    let total: u64 = results.iter().sum();

    let (d, k, eps) = (3, 2, 0.5);
    let mut lowest = f64::INFINITY;
    for seed in 0..20u64 {
        let mut rng = trial_rng(1200, seed as usize);
        let learners: [(&str, Box<dyn RandomizedListLearner>); 2] = [
            ("soa", Box::new(PointMass(P2Soa::new(d, k)))),
            ("uniform", Box::new(UniformListLearner::new(k + 1, k).unwrap())),
        ];
        for (name, mut learner) in learners {
            let t = extremal_p2_run(&mut learner, d, k, eps, &mut rng).map_err(|e| e.to_string())?;
            ensure(t.len() == 38, || format!("horizon {} instead of 38", t.len()))?;
            let loss = t.expected_loss();
            ensure(loss >= d as f64 - eps - 1e-9, || format!("P2 vs {name}: expected mistakes {loss} < d - ε"))?;
            lowest = lowest.min(loss);
        }
    }
    Ok(format!("P1: {total} prefixes over d <= 6, k <= 2 within d/(k+1); P2(3,2,0.5): min expected mistakes {lowest:.3} >= 2.5"))
}

fn c13() -> Check {
    let mut rng = trial_rng(13, 0);
    let mut worst = 0;
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=50);
        let s = random_monotone_pattern(len, 100, &mut rng);
        ensure(is_monotone_member(&s), || "generated pattern is not a member".into())?;
        let mut learner = MonotoneLearner::new();
        let mut mistakes = 0;
        for z in s.iter() {
            let list: LabelList = learner.predict(&z.x).unwrap();
            mistakes += usize::from(!list.contains(z.y));
            learner.feed(&z.x, z.y).unwrap();
        }
        worst = worst.max(mistakes);
        ensure(mistakes <= 1, || format!("{mistakes} mistakes on {s:?}"))?;
    }

    let mut pool: Vec<(String, Box<dyn PatternMembership>, usize)> = Vec::new();
    for n in 3..=5 {
        pool.push((format!("cube:{n}"), Box::new(HypothesisClass::all_functions(n, 2).unwrap()), n));
    }
    for n in 3..=4 {
        pool.push((format!("all:{n}:3"), Box::new(HypothesisClass::all_functions(n, 3).unwrap()), n));
    }
    for seed in 0..4 {
        let mut r = trial_rng(1300, seed);
        let n = 4;
        let mut rows: Vec<Vec<usize>> = (0..1usize << n).map(|c| (0..n).map(|x| (c >> x) & 1).collect()).collect();
        for _ in 0..6 {
            rows.push((0..n).map(|_| r.gen_range(0..3)).collect());
        }
        rows.sort();
        rows.dedup();
        pool.push((format!("cube:4 plus random ternary functions #{seed}"), Box::new(HypothesisClass::from_table(&rows, n, 3).unwrap()), n));
    }
    let mut checked = 0;
    for (name, class, n) in &pool {
        ensure(extends_monotone(class.as_ref(), *n), || format!("{name} does not extend the monotone class"))?;
        let tree = separation_tree(class.as_ref(), 3, *n).map_err(|e| format!("{name}: {e}"))?;
        ensure(tree.depth() == 3 && tree.is_complete(2) && is_shattered(&tree, class.as_ref()), || {
            format!("{name}: separation tree not verified")
        })?;
        checked += 1;
    }
    // A class missing one member must be rejected by the extension check.
    let partial = HypothesisClass::from_table(&[vec![1, 1, 1], vec![0, 0, 0]], 3, 2).unwrap();
    ensure(!extends_monotone(&partial, 3), || "non-extending control class accepted".into())?;
    Ok(format!("10000 member patterns, max {worst} mistake; {checked} extending classes with verified depth-3 trees"))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("dimension equals stabilized minimax value", c01),
        ("SOA mistakes at most the dimension", c02),
        ("tree adversary forces exactly dim mistakes", c03),
        ("random-branch rounds cost at least 1/(k+1)", c04),
        ("perceptron mistake bound", c05),
        ("cover family size and coverage", c06),
        ("multiplicative weights regret", c07),
        ("agnostic fixed-horizon and anytime regret", c08),
        ("hybrid loss identity and negative regret", c09),
        ("corrupted-branch loss at least p", c10),
        ("square-root regret growth", c11),
        ("extremal classes P1 and P2", c12),
        ("monotone learner and separation trees", c13),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] criterion {:>2}: {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {:>2}: {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
