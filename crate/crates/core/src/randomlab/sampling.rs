//! Reproducible random cost matrices. Trial `t` of an experiment with seed
//! `s` always draws from ChaCha8 stream `t` of the generator keyed by `s`, so
//! a trial can be replayed alone and trials can run in any order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::CostMatrix;
use crate::error::{Error, Result};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Entries are `beta1` with probability `p` and `beta2` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernoulliCostSpec {
    pub n: usize,
    pub p: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub seed: u64,
}

impl BernoulliCostSpec {
    pub fn new(n: usize, p: f64, seed: u64) -> Self {
        Self { n, p, beta1: 0.0, beta2: 1.0, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidProbability(format!("p = {} is outside [0, 1]", self.p)));
        }
        if !(self.beta1 >= 0.0 && self.beta1 < self.beta2 && self.beta2.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "need 0 <= beta1 < beta2 < inf, got {} and {}",
                self.beta1, self.beta2
            )));
        }
        Ok(())
    }
}

/// Entries i.i.d. uniform on `[0, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformCostSpec {
    pub n: usize,
    pub upper: f64,
    pub seed: u64,
}

impl UniformCostSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if !(self.upper > 0.0 && self.upper.is_finite()) {
            return Err(Error::InvalidSpec(format!("M = {} must be positive and finite", self.upper)));
        }
        Ok(())
    }
}

pub fn sample_bernoulli(spec: &BernoulliCostSpec, trial: u64) -> CostMatrix<f64> {
    let mut rng = trial_rng(spec.seed, trial);
    CostMatrix::from_fn(spec.n, spec.n, |_, _| if rng.random_bool(spec.p) { spec.beta1 } else { spec.beta2 })
        .expect("validated spec yields nonnegative finite costs")
}

pub fn sample_uniform(spec: &UniformCostSpec, trial: u64) -> CostMatrix<f64> {
    let mut rng = trial_rng(spec.seed, trial);
    CostMatrix::from_fn(spec.n, spec.n, |_, _| rng.random::<f64>() * spec.upper)
        .expect("validated spec yields nonnegative finite costs")
}
