//! Closed-form probability that the optimal cost of a fundamental problem
//! with i.i.d. random costs equals the smallest cost value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(format!("{p} is outside [0, 1]")));
    }
    Ok(())
}

/// Neumaier-compensated sum.
fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// `𝔰(n; p)`: probability that an `n × n` matrix whose entries are
/// independently `β₁` with probability `p` has a `β₁` in every row and
/// column.
///
/// Evaluated as `Σ_j (-1)^(j+n) C(n,j) q^(n(n-j)) (1 - q^j)^n` with
/// `q = 1 - p`, which keeps every factor in `[0, 1]`.
pub fn prob_beta1(n: usize, p: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    check_p(p)?;
    if p == 1.0 {
        return Ok(1.0);
    }
    let q = 1.0 - p;
    let terms = (0..=n).map(|j| {
        let sign = if (j + n).is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * binomial(n, j) * q.powi((n * (n - j)) as i32) * (1.0 - q.powi(j as i32)).powi(n as i32)
    });
    Ok(compensated_sum(terms).clamp(0.0, 1.0))
}

/// Exact rational `𝔰(n; p)`, computed from the inclusion–exclusion form
/// `q^(n²) Σ_j (-1)^j C(n,j) (1 - q^(-j))^n`. Equals 1 at `p = 1`.
pub fn prob_beta1_exact(n: usize, p: &BigRational) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    if p.is_negative() || p > &BigRational::one() {
        return Err(Error::InvalidProbability(format!("{p} is outside [0, 1]")));
    }
    let q = BigRational::one() - p;
    if q.is_zero() {
        return Ok(BigRational::one());
    }
    let q_inv = q.recip();
    let mut sum = BigRational::zero();
    let mut binom = BigInt::one();
    for j in 0..=n {
        let inner = BigRational::one() - num_traits::pow(q_inv.clone(), j);
        let term = BigRational::from_integer(binom.clone()) * num_traits::pow(inner, n);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    Ok(num_traits::pow(q, n * n) * sum)
}

fn check_probs(probs: &[f64], j: usize) -> Result<()> {
    if probs.is_empty() || j == 0 || j > probs.len() {
        return Err(Error::InvalidProbability(format!("rank {j} out of 1..={}", probs.len())));
    }
    if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::InvalidProbability("entries must lie in [0, 1]".into()));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidProbability(format!("probabilities sum to {total}, not 1")));
    }
    Ok(())
}

/// Probability that the optimal fundamental cost equals the `j`-th smallest
/// of `s` cost values, where value `t` occurs with probability `probs[t-1]`:
/// `𝔰(n, P_j) - 𝔰(n, P_{j-1})` with `P_j` the cumulative probabilities.
pub fn prob_beta_j(n: usize, probs: &[f64], j: usize) -> Result<f64> {
    check_probs(probs, j)?;
    let upper: f64 = probs[..j].iter().sum::<f64>().min(1.0);
    let lower: f64 = probs[..j - 1].iter().sum::<f64>().min(1.0);
    let upper = if j == probs.len() { 1.0 } else { upper };
    Ok(prob_beta1(n, upper)? - prob_beta1(n, lower)?)
}

pub fn prob_beta_j_exact(n: usize, probs: &[BigRational], j: usize) -> Result<BigRational> {
    if probs.is_empty() || j == 0 || j > probs.len() {
        return Err(Error::InvalidProbability(format!("rank {j} out of 1..={}", probs.len())));
    }
    if probs.iter().any(|p| p.is_negative()) || probs.iter().sum::<BigRational>() != BigRational::one() {
        return Err(Error::InvalidProbability("probabilities must be nonnegative and sum to 1".into()));
    }
    let upper: BigRational = probs[..j].iter().sum();
    let lower: BigRational = probs[..j - 1].iter().sum();
    Ok(prob_beta1_exact(n, &upper)? - prob_beta1_exact(n, &lower)?)
}

/// Named `p_n` schedules for experiments where the Bernoulli parameter
/// depends on the matrix size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PSchedule {
    Constant(f64),
    /// `p_n = ln(n) / n`, the perfect-matching threshold.
    LogOverN,
    /// `p_n = n^(-γ)`.
    Power {
        gamma: f64,
    },
}

impl PSchedule {
    pub fn p_at(&self, n: usize) -> f64 {
        let nf = n as f64;
        let p = match *self {
            PSchedule::Constant(p) => p,
            PSchedule::LogOverN => nf.ln() / nf,
            PSchedule::Power { gamma } => nf.powf(-gamma),
        };
        p.clamp(0.0, 1.0)
    }
}

impl FromStr for PSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("unknown schedule {s:?} (expected log-n, n-pow:<gamma> or const:<p>)"));
        if s == "log-n" {
            return Ok(PSchedule::LogOverN);
        }
        if let Some(g) = s.strip_prefix("n-pow:") {
            return g.parse().map(|gamma| PSchedule::Power { gamma }).map_err(|_| bad());
        }
        if let Some(p) = s.strip_prefix("const:") {
            let p: f64 = p.parse().map_err(|_| bad())?;
            check_p(p)?;
            return Ok(PSchedule::Constant(p));
        }
        Err(bad())
    }
}

impl fmt::Display for PSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PSchedule::Constant(p) => write!(f, "const:{p}"),
            PSchedule::LogOverN => f.write_str("log-n"),
            PSchedule::Power { gamma } => write!(f, "n-pow:{gamma}"),
        }
    }
}
