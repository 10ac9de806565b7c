//! Brute-force reference implementations for small instances.
//!
//! Nothing here calls into the solver or the analysis code; these routines
//! enumerate plans, supports, permutations or whole cost matrices directly and
//! exist to cross-check the fast paths.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cost::CostMatrix;
use crate::error::{Error, Result};
use crate::measure::MaxPlusMeasure;
use crate::plan::{is_plan, objective, Plan};
use crate::regions::Region;
use crate::scalar::{ExtendedReal, Finite, NegInf, Scalar};
use crate::Cell;

pub const MAX_REGION_CELLS: usize = 25;
pub const MAX_GLOBAL_SIDE: usize = 4;
pub const MAX_GLOBAL_WEIGHTS: usize = 3;
pub const MAX_PM_SIDE: usize = 6;
pub const MAX_PROB_SIDE: usize = 4;

/// Optimal cost of a region and every support attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionOptimum<T> {
    pub cost: T,
    pub supports: Vec<Vec<Cell>>,
}

/// Minimizes `max (λ + c)` over every `{λ, -∞}` assignment on the region
/// whose support reaches all active rows and columns, by trying every subset.
pub fn brute_force_region_cost<T: Scalar>(region: &Region<T>, c: &CostMatrix<T>) -> Result<RegionOptimum<T>> {
    let cells = region.cells();
    if cells.len() > MAX_REGION_CELLS {
        return Err(Error::TooLarge(format!("{} region cells (limit {MAX_REGION_CELLS})", cells.len())));
    }
    let rows = region.active_rows();
    let cols = region.active_cols();
    // Bit k for active row k, bit rows.len() + k for active column k.
    let line_bits: Vec<u64> = cells
        .iter()
        .map(|&(i, j)| {
            let r = rows.iter().position(|&x| x == i).map_or(0, |k| 1u64 << k);
            let s = cols.iter().position(|&x| x == j).map_or(0, |k| 1u64 << (rows.len() + k));
            r | s
        })
        .collect();
    let full: u64 = if rows.len() + cols.len() == 64 { u64::MAX } else { (1u64 << (rows.len() + cols.len())) - 1 };

    let mut best: Option<T> = None;
    let mut supports = Vec::new();
    for mask in 1u64..(1u64 << cells.len()) {
        let mut lines = 0u64;
        let mut worst: Option<T> = None;
        for (k, &cell) in cells.iter().enumerate() {
            if mask >> k & 1 == 1 {
                lines |= line_bits[k];
                let v = c.get(cell);
                worst = Some(worst.map_or(v, |w: T| w.max_of(v)));
            }
        }
        if lines != full {
            continue;
        }
        let value = region.lambda + worst.expect("mask is nonempty");
        let support: Vec<Cell> = (0..cells.len()).filter(|k| mask >> k & 1 == 1).map(|k| cells[k]).collect();
        match best {
            Some(b) if value > b => {}
            Some(b) if value == b => supports.push(support),
            _ => {
                best = Some(value);
                supports = vec![support];
            }
        }
    }
    let cost = best.expect("the whole region is always feasible");
    Ok(RegionOptimum { cost, supports })
}

fn candidate_value<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>, (i, j): Cell) -> T {
    mu.weight(i).min_of(nu.weight(j))
}

fn check_global_caps<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>, c: &CostMatrix<T>) -> Result<()> {
    if c.dims() != (mu.len(), nu.len()) {
        return Err(Error::DimensionMismatch { expected: (mu.len(), nu.len()), found: c.dims() });
    }
    if mu.len() > MAX_GLOBAL_SIDE || nu.len() > MAX_GLOBAL_SIDE {
        return Err(Error::TooLarge(format!("{}x{} (limit {MAX_GLOBAL_SIDE}x{MAX_GLOBAL_SIDE})", mu.len(), nu.len())));
    }
    let mut lambdas = mu.distinct_weights();
    lambdas.extend(nu.distinct_weights());
    lambdas.sort_by(|a, b| a.cmp_total(b));
    lambdas.dedup();
    if lambdas.len() > MAX_GLOBAL_WEIGHTS {
        return Err(Error::TooLarge(format!("{} distinct weights (limit {MAX_GLOBAL_WEIGHTS})", lambdas.len())));
    }
    Ok(())
}

/// Every reduced plan, in subset order.
///
/// A finite entry of a reduced plan is the maximum of its row or column, so
/// it equals `k_i` or `l_j`; being at most both, it is `min(k_i, l_j)`. The
/// candidates are therefore the subsets of cells carrying that value; those
/// passing the marginal test and the strictness test are returned.
pub fn reduced_plans<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>) -> Result<Vec<Plan<T>>> {
    let (m, n) = (mu.len(), nu.len());
    if m * n > 16 {
        return Err(Error::TooLarge(format!("{m}x{n} grid (limit 16 cells)")));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << (m * n)) {
        let h = Plan::from_fn(m, n, |i, j| {
            if mask >> (i * n + j) & 1 == 1 {
                Finite(candidate_value(mu, nu, (i, j)))
            } else {
                NegInf
            }
        })?;
        if is_plan(&h, mu, nu)? && every_entry_strict(&h) {
            out.push(h);
        }
    }
    Ok(out)
}

fn every_entry_strict<T: Scalar>(h: &Plan<T>) -> bool {
    h.support().into_iter().all(|(i, j)| {
        let v = h.get((i, j));
        let row = (0..h.cols()).filter(|&k| k != j).all(|k| h.get((i, k)) < v);
        let col = (0..h.rows()).filter(|&k| k != i).all(|k| h.get((k, j)) < v);
        row || col
    })
}

/// Exact optimal cost by exhaustive search over plans whose finite entries
/// are `min(k_i, l_j)`; this family contains every reduced plan.
pub fn brute_force_global<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>, c: &CostMatrix<T>) -> Result<T> {
    check_global_caps(mu, nu, c)?;
    let (m, n) = (mu.len(), nu.len());
    let cells = m * n;
    // Cell k can serve row i (resp. column j) iff its value reaches k_i (l_j).
    let mut row_mask = vec![0u32; m];
    let mut col_mask = vec![0u32; n];
    let mut value = Vec::with_capacity(cells);
    for k in 0..cells {
        let (i, j) = (k / n, k % n);
        let v = candidate_value(mu, nu, (i, j));
        if v == mu.weight(i) {
            row_mask[i] |= 1 << k;
        }
        if v == nu.weight(j) {
            col_mask[j] |= 1 << k;
        }
        value.push(v + c.get((i, j)));
    }

    let mut best: Option<T> = None;
    for mask in 1u32..(1u32 << cells) {
        if row_mask.iter().any(|&r| r & mask == 0) || col_mask.iter().any(|&s| s & mask == 0) {
            continue;
        }
        let obj = (0..cells).filter(|k| mask >> k & 1 == 1).map(|k| value[k]).reduce(T::max_of).unwrap();
        if best.is_none_or(|b| obj < b) {
            best = Some(obj);
        }
    }
    Ok(best.expect("the product plan restricted to min-values is feasible"))
}

/// Exhaustive search over *all* plans with entries in `{-∞} ∪ Λ(μ) ∪ Λ(ν)`,
/// reduced or not, using the generic plan and objective checks. Limited to
/// nine cells.
pub fn brute_force_global_unreduced<T: Scalar>(
    mu: &MaxPlusMeasure<T>,
    nu: &MaxPlusMeasure<T>,
    c: &CostMatrix<T>,
) -> Result<T> {
    check_global_caps(mu, nu, c)?;
    let (m, n) = (mu.len(), nu.len());
    if m * n > 9 {
        return Err(Error::TooLarge(format!("{m}x{n} grid (limit 9 cells)")));
    }
    let mut values: Vec<ExtendedReal<T>> = vec![NegInf];
    values.extend(mu.weights().iter().chain(nu.weights()).map(|&w| Finite(w)));
    values.sort_by(|a, b| a.cmp_total(b));
    values.dedup();

    let mut best: Option<ExtendedReal<T>> = None;
    for choice in (0..m * n).map(|_| values.iter().copied()).multi_cartesian_product() {
        let Ok(h) = Plan::from_vec(m, n, choice) else { continue };
        if !is_plan(&h, mu, nu)? {
            continue;
        }
        let obj = objective(&h, c)?;
        if best.is_none_or(|b| obj < b) {
            best = Some(obj);
        }
    }
    match best {
        Some(Finite(v)) => Ok(v),
        _ => unreachable!("the product plan is feasible and finite"),
    }
}

/// True iff some permutation σ has `(i, σ(i))` in `support` for every `i`.
pub fn brute_force_pm(support: &[Cell], n: usize) -> Result<bool> {
    if n > MAX_PM_SIDE {
        return Err(Error::TooLarge(format!("n = {n} (limit {MAX_PM_SIDE})")));
    }
    Ok((0..n).permutations(n).any(|sigma| sigma.iter().enumerate().all(|(i, &s)| support.contains(&(i, s)))))
}

fn check_probability(p: &BigRational) -> Result<()> {
    if p < &BigRational::zero() || p > &BigRational::one() {
        return Err(Error::InvalidProbability(format!("{p} is outside [0, 1]")));
    }
    Ok(())
}

fn pow(base: &BigRational, exp: usize) -> BigRational {
    num_traits::pow(base.clone(), exp)
}

/// Probability that an `n × n` Bernoulli matrix (entry is `β₁` with
/// probability `p`) has a `β₁` in every row and every column, summed exactly
/// over all `2^(n²)` matrices.
pub fn enumerate_prob_beta1(n: usize, p: &BigRational) -> Result<BigRational> {
    if n == 0 || n > MAX_PROB_SIDE {
        return Err(Error::TooLarge(format!("n = {n} (allowed 1..={MAX_PROB_SIDE})")));
    }
    check_probability(p)?;
    let q = BigRational::one() - p;
    let cells = n * n;
    let full_lines = (1u32 << n) - 1;
    // Matrices counted by number of β₁ entries.
    let mut by_count = vec![0u64; cells + 1];
    for mask in 0u32..(1u32 << cells) {
        let mut rows = 0u32;
        let mut cols = 0u32;
        for k in 0..cells {
            if mask >> k & 1 == 1 {
                rows |= 1 << (k / n);
                cols |= 1 << (k % n);
            }
        }
        if rows == full_lines && cols == full_lines {
            by_count[mask.count_ones() as usize] += 1;
        }
    }
    Ok(by_count
        .iter()
        .enumerate()
        .filter(|(_, &cnt)| cnt > 0)
        .map(|(k, &cnt)| BigRational::from_integer(BigInt::from(cnt)) * pow(p, k) * pow(&q, cells - k))
        .fold(BigRational::zero(), |a, b| a + b))
}

/// Probability that the optimal cost of the fundamental `n × n` problem is
/// the `j`-th smallest cost value (1-based), when each entry independently
/// takes value `t` with probability `probs[t-1]`. Every one of the
/// `s^(n²)` cost matrices is solved with [`brute_force_global`].
pub fn enumerate_prob_beta_j(n: usize, probs: &[BigRational], j: usize) -> Result<BigRational> {
    let s = probs.len();
    if s == 0 || j == 0 || j > s {
        return Err(Error::InvalidProbability(format!("rank {j} out of 1..={s}")));
    }
    probs.iter().try_for_each(check_probability)?;
    let cells = n * n;
    if n == 0 || n > MAX_GLOBAL_SIDE || (s as f64).powi(cells as i32) > 1e6 {
        return Err(Error::TooLarge(format!("{s}^{cells} cost matrices")));
    }
    let mu = MaxPlusMeasure::<i64>::fundamental(n);
    let target = j as i64;
    let mut total = BigRational::zero();
    for entries in (0..cells).map(|_| 1..=s as i64).multi_cartesian_product() {
        let weight = entries.iter().map(|&v| probs[v as usize - 1].clone()).fold(BigRational::one(), |a, b| a * b);
        if weight.is_zero() {
            continue;
        }
        let c = CostMatrix::from_vec(n, n, entries)?;
        if brute_force_global(&mu, &mu, &c)? == target {
            total += weight;
        }
    }
    Ok(total)
}
