//! Random cost models, the exact probability that the optimal cost is the
//! smallest cost value, and Monte Carlo experiments.

mod experiment;
mod formula;
mod process;
mod sampling;

pub use experiment::{evaluate_trial, run_experiment, CostModel, EventKind, SimulationReport, TrialOutcome};
pub use formula::{prob_beta1, prob_beta1_exact, prob_beta_j, prob_beta_j_exact, PSchedule};
pub use process::{graph_process_tau, GraphProcess};
pub use sampling::{sample_bernoulli, sample_uniform, trial_rng, BernoulliCostSpec, UniformCostSpec};
