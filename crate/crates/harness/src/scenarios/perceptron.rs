//! List Perceptron on generated separable data.

use lol_core::datagen::{generate_separable, radius_of, verify_certificate};
use lol_core::learners::ListPerceptron;
use serde_json::Map;

use super::{aggregate, TrialOutcome};
use crate::accounting::RowBuilder;
use crate::config::ExperimentConfig;
use crate::error::{usage, Result};
use crate::parallel::run_trials;
use crate::report::Outcome;
use crate::streams::trial_rng;

pub(super) fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let (k, labels) = (config.k()?, config.labels);
    if k == 0 || k >= labels {
        return Err(usage(format!("--k must satisfy 1 <= k < {labels} labels")));
    }
    let scale = (k * (k + 1)) as f64;
    let trials = run_trials(config.trials, |trial| {
        let mut rng = trial_rng(config.seed, trial);
        let (data, cert) =
            generate_separable(config.features, labels, k, config.horizon, config.gamma, config.radius, &mut rng)?;
        let (valid, gamma) = verify_certificate(&data, &cert, k);
        let radius = radius_of(&data);
        let bound = scale * radius * radius / (gamma * gamma);
        let mut learner = ListPerceptron::new(config.features, labels, k)?;
        let mut rows = RowBuilder::new(trial);
        let mut potential_ok = true;
        for (x, y) in &data {
            let before = learner.potential();
            let norm2: f64 = x.iter().map(|v| v * v).sum();
            let mistake = learner.observe(x, *y)?;
            let growth = learner.potential() - before;
            potential_ok &= if mistake { growth <= scale * norm2 + 1e-9 } else { growth == 0.0 };
            rows.push(if mistake { 1.0 } else { 0.0 }, 0.0, bound);
        }
        let pass = valid && potential_ok && rows.cumulative_loss() <= bound;
        Ok(TrialOutcome::new(rows, pass)
            .stat("gamma_hat", gamma)
            .stat("radius", radius)
            .stat("certificate_valid", if valid { 1.0 } else { 0.0 })
            .stat("potential_ok", if potential_ok { 1.0 } else { 0.0 }))
    })?;
    Ok(aggregate(config, trials, Map::new()))
}
