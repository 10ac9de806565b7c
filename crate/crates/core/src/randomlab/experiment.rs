//! Monte Carlo estimation of events about optimal fundamental plans under
//! random costs.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::formula::prob_beta1;
use super::sampling::{sample_bernoulli, sample_uniform, BernoulliCostSpec, UniformCostSpec};
use crate::analysis::{count_reduced_minimizers, is_region_plan_reduced};
use crate::cost::CostMatrix;
use crate::error::{Error, Result};
use crate::matching::has_perfect_matching;
use crate::regions::Region;
use crate::solver::{solve_region, RegionSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventKind {
    /// Optimal cost equals the smallest cost value that can occur.
    CostIsBeta1,
    /// The optimal threshold plan contains a perfect matching.
    ContainsPm,
    /// The optimal threshold plan is reduced, i.e. it is the only optimal
    /// plan with entries in `{0, -∞}`.
    UniqueReduced,
    /// Exactly one reduced plan with entries in `{0, -∞}` is optimal. Weaker
    /// than [`EventKind::UniqueReduced`].
    UniqueReducedAmongAll,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::CostIsBeta1 => "beta1",
            EventKind::ContainsPm => "pm",
            EventKind::UniqueReduced => "unique",
            EventKind::UniqueReducedAmongAll => "unique-all",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EventKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "beta1" => EventKind::CostIsBeta1,
            "pm" => EventKind::ContainsPm,
            "unique" => EventKind::UniqueReduced,
            "unique-all" => EventKind::UniqueReducedAmongAll,
            _ => return Err(Error::InvalidSpec(format!("unknown event {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostModel {
    Bernoulli(BernoulliCostSpec),
    Uniform(UniformCostSpec),
}

impl CostModel {
    pub fn n(&self) -> usize {
        match self {
            CostModel::Bernoulli(s) => s.n,
            CostModel::Uniform(s) => s.n,
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            CostModel::Bernoulli(s) => s.seed,
            CostModel::Uniform(s) => s.seed,
        }
    }

    /// `p` for Bernoulli costs, `M` for uniform ones.
    pub fn param(&self) -> f64 {
        match self {
            CostModel::Bernoulli(s) => s.p,
            CostModel::Uniform(s) => s.upper,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CostModel::Bernoulli(s) => s.validate(),
            CostModel::Uniform(s) => s.validate(),
        }
    }

    pub fn sample(&self, trial: u64) -> CostMatrix<f64> {
        match self {
            CostModel::Bernoulli(s) => sample_bernoulli(s, trial),
            CostModel::Uniform(s) => sample_uniform(s, trial),
        }
    }

    /// Smallest value an entry can take.
    fn floor(&self) -> f64 {
        match self {
            CostModel::Bernoulli(s) => s.beta1,
            CostModel::Uniform(_) => 0.0,
        }
    }
}

/// Everything measured on one trial's fundamental instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub cost: f64,
    pub cost_is_floor: bool,
    pub contains_pm: bool,
    pub unique_reduced: bool,
    pub solution: RegionSolution<f64>,
}

pub fn evaluate_trial(model: &CostModel, trial: u64) -> Result<TrialOutcome> {
    let n = model.n();
    let c = model.sample(trial);
    // With all weights zero there is a single region covering the grid.
    let solution = solve_region(&Region::full(0.0, n, n), &c)?;
    Ok(TrialOutcome {
        cost: solution.region_cost,
        cost_is_floor: solution.region_cost == model.floor(),
        contains_pm: has_perfect_matching(n, &solution.support),
        unique_reduced: is_region_plan_reduced(&solution.region, &solution.support),
        solution,
    })
}

fn event_holds(kind: EventKind, model: &CostModel, trial: u64) -> Result<bool> {
    let out = evaluate_trial(model, trial)?;
    Ok(match kind {
        EventKind::CostIsBeta1 => out.cost_is_floor,
        EventKind::ContainsPm => out.contains_pm,
        EventKind::UniqueReduced => out.unique_reduced,
        EventKind::UniqueReducedAmongAll => count_reduced_minimizers(&out.solution, 2) == 1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub event: EventKind,
    pub model: &'static str,
    pub n: usize,
    /// `p` for Bernoulli costs, `M` for uniform ones.
    pub param: f64,
    pub trials: u64,
    pub seed: u64,
    pub hits: u64,
    pub frequency: f64,
    pub stderr: f64,
    pub exact: Option<f64>,
    pub wall_time_secs: f64,
}

impl SimulationReport {
    /// Whether `value` lies within `k` standard errors of the frequency.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.frequency - value).abs() <= k * self.stderr
    }
}

/// Runs `trials` independent trials, on `threads` workers if given (the
/// global rayon pool otherwise). The result does not depend on the thread
/// count: trial `t` always sees the same cost matrix.
pub fn run_experiment(
    kind: EventKind,
    model: &CostModel,
    trials: u64,
    threads: Option<usize>,
) -> Result<SimulationReport> {
    model.validate()?;
    if trials == 0 {
        return Err(Error::InvalidSpec("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let count = || -> Result<u64> {
        (0..trials)
            .into_par_iter()
            .map(|t| event_holds(kind, model, t).map(u64::from))
            .try_reduce(|| 0, |a, b| Ok(a + b))
    };
    let hits = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?
            .install(count)?,
        None => count()?,
    };
    let frequency = hits as f64 / trials as f64;
    let exact = match (kind, model) {
        (EventKind::CostIsBeta1, CostModel::Bernoulli(s)) => Some(prob_beta1(s.n, s.p)?),
        _ => None,
    };
    Ok(SimulationReport {
        event: kind,
        model: match model {
            CostModel::Bernoulli(_) => "bernoulli",
            CostModel::Uniform(_) => "uniform",
        },
        n: model.n(),
        param: model.param(),
        trials,
        seed: model.seed(),
        hits,
        frequency,
        stderr: (frequency * (1.0 - frequency) / trials as f64).sqrt(),
        exact,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}
