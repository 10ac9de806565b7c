use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A discrete max-plus probability measure, stored as its finite weights in
/// non-increasing order with the leading weight equal to zero.
///
/// `order[s]` is the input position of the weight now at sorted position `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxPlusMeasure<T> {
    weights: Vec<T>,
    order: Vec<usize>,
}

impl<T: Scalar> MaxPlusMeasure<T> {
    /// Accepts weights that are already normalized; anything else is an error.
    pub fn new(weights: Vec<T>) -> Result<Self> {
        check_finite(&weights)?;
        if weights[0] != T::zero() {
            return Err(Error::NotNormalized("leading weight must be 0"));
        }
        if weights.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::NotNormalized("weights must be non-increasing"));
        }
        let order = (0..weights.len()).collect();
        Ok(Self { weights, order })
    }

    /// All weights zero: the fundamental case.
    pub fn fundamental(n: usize) -> Self {
        assert!(n > 0, "measure needs at least one point");
        Self { weights: vec![T::zero(); n], order: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> T {
        self.weights[i]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Distinct weights, largest first.
    pub fn distinct_weights(&self) -> Vec<T> {
        let mut out: Vec<T> = Vec::new();
        for &w in &self.weights {
            if out.last() != Some(&w) {
                out.push(w);
            }
        }
        out
    }

    pub fn is_fundamental(&self) -> bool {
        self.weights.iter().all(|&w| w == T::zero())
    }
}

/// Shifts raw weights so the maximum is zero and sorts them non-increasingly.
///
/// The sort is stable, so tied weights keep their input order; the
/// permutation is available through [`MaxPlusMeasure::order`].
pub fn normalize_measure<T: Scalar>(raw: &[T]) -> Result<MaxPlusMeasure<T>> {
    check_finite(raw)?;
    let max = raw.iter().copied().fold(raw[0], T::max_of);
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| raw[b].cmp_total(&raw[a]));
    let weights = order.iter().map(|&i| if raw[i] == max { T::zero() } else { raw[i] - max }).collect();
    Ok(MaxPlusMeasure { weights, order })
}

fn check_finite<T: Scalar>(weights: &[T]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::EmptyMeasure);
    }
    match weights.iter().position(|w| !w.is_finite() || w.partial_cmp(w) != Some(Ordering::Equal)) {
        Some(index) => Err(Error::NonFiniteWeight { index }),
        None => Ok(()),
    }
}
