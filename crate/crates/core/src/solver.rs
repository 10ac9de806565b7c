//! Exact solver: each region is solved by a threshold sweep over its sorted
//! cost values, and the region plans are glued into a global optimal plan.

use crate::cost::CostMatrix;
use crate::error::{Error, Result};
use crate::measure::MaxPlusMeasure;
use crate::plan::Plan;
use crate::regions::{build_regions, thresholds, Region};
use crate::scalar::{ExtendedReal, Finite, NegInf, Scalar};
use crate::Cell;

/// Result of solving one region.
///
/// `betas` holds the distinct cost values on the region in increasing order.
/// `threshold` is the 1-based rank `m` of the smallest `betas[m-1]` for which
/// the cells costing at most that value reach every active row and column;
/// `support` is exactly that cell set, and the region plan puts λ on it and
/// `NegInf` elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSolution<T> {
    pub region: Region<T>,
    pub betas: Vec<T>,
    pub threshold: usize,
    pub support: Vec<Cell>,
    pub region_cost: T,
    /// Lexicographically smallest cell whose cost is the threshold value.
    pub witness: Cell,
}

impl<T: Scalar> RegionSolution<T> {
    pub fn lambda(&self) -> T {
        self.region.lambda
    }

    pub fn threshold_value(&self) -> T {
        self.betas[self.threshold - 1]
    }

    pub fn value_at(&self, cell: Cell) -> ExtendedReal<T> {
        if self.support.binary_search(&cell).is_ok() {
            Finite(self.region.lambda)
        } else {
            NegInf
        }
    }

    /// 1-based rank of `cell`'s cost among `betas`.
    pub fn rank(&self, cell: Cell, c: &CostMatrix<T>) -> usize {
        let v = c.get(cell);
        self.betas.partition_point(|&b| b < v) + 1
    }

    /// Support of the plan obtained by thresholding at rank `m` instead of at
    /// the optimal rank. Useful for checking minimality.
    pub fn support_at_rank(&self, m: usize, c: &CostMatrix<T>) -> Vec<Cell> {
        let cut = self.betas[m - 1];
        self.region.cells().iter().copied().filter(|&cell| c.get(cell) <= cut).collect()
    }
}

/// True iff `support` has a cell in every active row and active column.
pub fn covers_active_lines<T: Scalar>(region: &Region<T>, support: &[Cell]) -> bool {
    region.active_rows().iter().all(|&r| support.iter().any(|c| c.0 == r))
        && region.active_cols().iter().all(|&k| support.iter().any(|c| c.1 == k))
}

/// Solves a single region by sweeping cost thresholds in increasing order.
///
/// All cells sharing a cost value enter together, so ties share one rank.
pub fn solve_region<T: Scalar>(region: &Region<T>, c: &CostMatrix<T>) -> Result<RegionSolution<T>> {
    if region.is_empty() {
        return Err(Error::InvalidSpec("empty region".into()));
    }
    let (m, n) = c.dims();
    if let Some(&(i, j)) = region.cells().iter().find(|&&(i, j)| i >= m || j >= n) {
        return Err(Error::DimensionMismatch { expected: (m, n), found: (i + 1, j + 1) });
    }

    let mut order: Vec<Cell> = region.cells().to_vec();
    order.sort_by(|&a, &b| c.get(a).cmp_total(&c.get(b)).then(a.cmp(&b)));

    let mut betas: Vec<T> = Vec::new();
    for &cell in &order {
        let v = c.get(cell);
        if betas.last() != Some(&v) {
            betas.push(v);
        }
    }

    let mut row_needed = vec![false; m];
    let mut col_needed = vec![false; n];
    region.active_rows().iter().for_each(|&r| row_needed[r] = true);
    region.active_cols().iter().for_each(|&k| col_needed[k] = true);
    let mut missing = region.active_rows().len() + region.active_cols().len();

    let mut threshold = 0;
    let mut pos = 0;
    while threshold < betas.len() {
        let level = betas[threshold];
        threshold += 1;
        while pos < order.len() && c.get(order[pos]) == level {
            let (i, j) = order[pos];
            if std::mem::take(&mut row_needed[i]) {
                missing -= 1;
            }
            if std::mem::take(&mut col_needed[j]) {
                missing -= 1;
            }
            pos += 1;
        }
        if missing == 0 {
            break;
        }
    }
    debug_assert_eq!(missing, 0, "the full region always covers its active lines");

    let level = betas[threshold - 1];
    let mut support = order[..pos].to_vec();
    support.sort_unstable();
    let witness = *support.iter().find(|&&cell| c.get(cell) == level).expect("threshold value occurs");

    Ok(RegionSolution {
        region: region.clone(),
        betas,
        threshold,
        support,
        region_cost: region.lambda + level,
        witness,
    })
}

/// An optimal plan together with the optimal cost and per-region data.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    pub cost: T,
    pub plan: Plan<T>,
    pub regions: Vec<RegionSolution<T>>,
}

impl<T: Scalar> Solution<T> {
    /// The region attaining the optimal cost (the first one, in descending λ
    /// order, if several do).
    pub fn critical_region(&self) -> &RegionSolution<T> {
        self.regions.iter().find(|r| r.region_cost == self.cost).expect("some region attains the maximum")
    }
}

/// Solves the discrete max-plus transport problem exactly.
///
/// The cost is the largest region cost, and the plan agrees with each
/// region's threshold plan on that region.
pub fn solve<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>, c: &CostMatrix<T>) -> Result<Solution<T>> {
    if c.dims() != (mu.len(), nu.len()) {
        return Err(Error::DimensionMismatch { expected: (mu.len(), nu.len()), found: c.dims() });
    }
    let regions = build_regions(mu, nu).iter().map(|r| solve_region(r, c)).collect::<Result<Vec<_>>>()?;

    let mut plan = Plan::neg_inf(mu.len(), nu.len());
    for rs in &regions {
        for &cell in &rs.support {
            plan.set(cell, Finite(rs.region.lambda));
        }
    }
    let cost = regions.iter().map(|r| r.region_cost).fold(regions[0].region_cost, T::max_of);
    Ok(Solution { cost, plan, regions })
}

/// Closed form for measures whose weights are pairwise distinct apart from
/// the two leading zeros:
/// `max_i min_{j < p_i} (k_i + c_ij)  ∨  max_j min_{i < q_j} (l_j + c_ij)`.
pub fn closed_form_distinct<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>, c: &CostMatrix<T>) -> Result<T> {
    if c.dims() != (mu.len(), nu.len()) {
        return Err(Error::DimensionMismatch { expected: (mu.len(), nu.len()), found: c.dims() });
    }
    let mut tail: Vec<T> = mu.weights()[1..].iter().chain(&nu.weights()[1..]).copied().collect();
    tail.sort_by(|a, b| a.cmp_total(b));
    if tail.windows(2).any(|w| w[0] == w[1]) || tail.iter().any(|&w| w == T::zero()) {
        return Err(Error::WeightsNotDistinct);
    }

    let (p, q) = thresholds(mu, nu);
    let row_term = |i: usize| {
        let k = mu.weight(i);
        (0..p[i]).map(|j| k + c.get((i, j))).reduce(T::min_of).expect("p_i >= 1")
    };
    let col_term = |j: usize| {
        let l = nu.weight(j);
        (0..q[j]).map(|i| l + c.get((i, j))).reduce(T::min_of).expect("q_j >= 1")
    };
    let rows = (0..mu.len()).map(row_term);
    let cols = (0..nu.len()).map(col_term);
    Ok(rows.chain(cols).reduce(T::max_of).expect("nonempty"))
}
