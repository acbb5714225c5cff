use crate::error::{usage, HarnessError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdversaryKind {
    Tree,
    RandomBranch,
    CorruptedBranch,
    Symdiff,
    P1,
    P2,
    Monotone,
}

impl AdversaryKind {
    pub fn name(self) -> &'static str {
        match self {
            AdversaryKind::Tree => "tree",
            AdversaryKind::RandomBranch => "random-branch",
            AdversaryKind::CorruptedBranch => "corrupted-branch",
            AdversaryKind::Symdiff => "symdiff",
            AdversaryKind::P1 => "p1",
            AdversaryKind::P2 => "p2",
            AdversaryKind::Monotone => "monotone",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    Dim,
    Soa,
    Perceptron,
    Mw,
    Agnostic,
    Hybrid,
    Adversary(AdversaryKind),
    Cover,
}

impl Scenario {
    pub fn name(self) -> String {
        match self {
            Scenario::Dim => "dim".into(),
            Scenario::Soa => "soa".into(),
            Scenario::Perceptron => "perceptron".into(),
            Scenario::Mw => "mw".into(),
            Scenario::Agnostic => "agnostic".into(),
            Scenario::Hybrid => "hybrid".into(),
            Scenario::Adversary(k) => format!("adversary:{}", k.name()),
            Scenario::Cover => "cover".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StreamKind {
    #[default]
    Random,
    /// Each label minimizes the learner's marginal.
    Adversarial,
}

/// A nonnegative rational `num/den`, written `a/b` or as a finite decimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Parses `a/b` or a finite decimal.
pub fn parse_rational(s: &str) -> Result<Rational, HarnessError> {
    {
        let bad = || usage(format!("cannot parse rational {s:?}"));
        let (num, den) = if let Some((a, b)) = s.split_once('/') {
            (a.trim().parse::<u64>().map_err(|_| bad())?, b.trim().parse::<u64>().map_err(|_| bad())?)
        } else {
            let (int, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
            if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
            (int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?, den)
        };
        if den == 0 {
            return Err(bad());
        }
        Ok(Rational { num, den })
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub class: Option<String>,
    pub k: Option<usize>,
    pub horizon: usize,
    pub trials: usize,
    pub seed: u64,
    pub p: Option<Rational>,
    pub epsilon: f64,
    pub gamma: f64,
    pub radius: f64,
    pub dim_cap: Option<usize>,
    /// Feature dimension `D` for the perceptron.
    pub features: usize,
    /// Label count for scenarios without a class.
    pub labels: usize,
    pub experts: usize,
    pub noise: f64,
    pub anytime: bool,
    pub learner: Option<String>,
    pub stream: StreamKind,
    /// Upper limit on enumerated experts, sequences or hypotheses.
    pub budget: u128,
}

impl ExperimentConfig {
    pub fn new(scenario: Scenario) -> Self {
        ExperimentConfig {
            scenario,
            class: None,
            k: None,
            horizon: 100,
            trials: 1,
            seed: 0,
            p: None,
            epsilon: 0.5,
            gamma: 0.05,
            radius: 1.0,
            dim_cap: None,
            features: 2,
            labels: 3,
            experts: 8,
            noise: 0.2,
            anytime: false,
            learner: None,
            stream: StreamKind::Random,
            budget: lol_core::learners::agnostic::DEFAULT_EXPERT_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(usage("--trials must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.noise) {
            return Err(usage("--noise must lie in [0, 1]"));
        }
        if !(self.gamma > 0.0 && self.radius > 0.0 && self.epsilon > 0.0) {
            return Err(usage("--gamma, --radius and --epsilon must be positive"));
        }
        Ok(())
    }

    pub fn k(&self) -> Result<usize, HarnessError> {
        self.k.ok_or_else(|| usage(format!("scenario {} needs --k", self.scenario.name())))
    }
}
