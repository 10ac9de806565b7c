//! Partition of the index grid into λ-regions.
//!
//! Row `i` owns the segment `S_i = {(i, j) : j < p_i}` of columns whose weight
//! is at least `k_i`; column `j` owns `T_j = {(i, j) : i < q_j}`. The region of
//! a weight λ is the union of the segments owned by rows and columns carrying
//! weight λ. Distinct regions are disjoint and together cover the grid.

use std::collections::BTreeSet;

use crate::measure::MaxPlusMeasure;
use crate::scalar::Scalar;
use crate::Cell;

/// One λ-region.
///
/// `row_set`/`col_set` are the projections of `cells`. `active_rows` and
/// `active_cols` are the rows and columns whose weight equals λ: those are the
/// lines on which a plan of the region must attain λ. Every other line of the
/// region takes its maximum in a higher region.
#[derive(Debug, Clone, PartialEq)]
pub struct Region<T> {
    pub lambda: T,
    cells: Vec<Cell>,
    row_set: Vec<usize>,
    col_set: Vec<usize>,
    active_rows: Vec<usize>,
    active_cols: Vec<usize>,
}

impl<T: Scalar> Region<T> {
    /// Builds a region from explicit cells. Active lines are clipped to the
    /// projections of `cells`.
    pub fn new(lambda: T, cells: impl IntoIterator<Item = Cell>, active_rows: &[usize], active_cols: &[usize]) -> Self {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        let row_set: BTreeSet<usize> = cells.iter().map(|c| c.0).collect();
        let col_set: BTreeSet<usize> = cells.iter().map(|c| c.1).collect();
        let active_rows = active_rows.iter().copied().filter(|r| row_set.contains(r)).collect::<BTreeSet<_>>();
        let active_cols = active_cols.iter().copied().filter(|c| col_set.contains(c)).collect::<BTreeSet<_>>();
        Self {
            lambda,
            cells: cells.into_iter().collect(),
            row_set: row_set.into_iter().collect(),
            col_set: col_set.into_iter().collect(),
            active_rows: active_rows.into_iter().collect(),
            active_cols: active_cols.into_iter().collect(),
        }
    }

    /// A region in which every row and column of `cells` is active, as for a
    /// stand-alone square or rectangular block.
    pub fn with_all_active(lambda: T, cells: impl IntoIterator<Item = Cell>) -> Self {
        let cells: Vec<Cell> = cells.into_iter().collect();
        let rows: Vec<usize> = cells.iter().map(|c| c.0).collect();
        let cols: Vec<usize> = cells.iter().map(|c| c.1).collect();
        Self::new(lambda, cells, &rows, &cols)
    }

    /// The full `m × n` block with every line active.
    pub fn full(lambda: T, m: usize, n: usize) -> Self {
        Self::with_all_active(lambda, (0..m).flat_map(|i| (0..n).map(move |j| (i, j))))
    }

    /// Cells in lexicographic order.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn row_set(&self) -> &[usize] {
        &self.row_set
    }

    pub fn col_set(&self) -> &[usize] {
        &self.col_set
    }

    pub fn active_rows(&self) -> &[usize] {
        &self.active_rows
    }

    pub fn active_cols(&self) -> &[usize] {
        &self.active_cols
    }
}

/// `p[i]` is the number of columns with weight `≥ k_i`, and `q[j]` the number
/// of rows with weight `≥ l_j`. Because weights are sorted, these are also the
/// largest such 1-based indices. Both are at least 1 since `k_1 = l_1 = 0`.
pub fn thresholds<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>) -> (Vec<usize>, Vec<usize>) {
    let count_at_least = |ws: &[T], x: T| ws.partition_point(|&w| w >= x);
    let p = mu.weights().iter().map(|&k| count_at_least(nu.weights(), k)).collect();
    let q = nu.weights().iter().map(|&l| count_at_least(mu.weights(), l)).collect();
    (p, q)
}

/// One region per distinct weight of either measure, largest λ first.
pub fn build_regions<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>) -> Vec<Region<T>> {
    let (p, q) = thresholds(mu, nu);
    let mut lambdas: Vec<T> = mu.distinct_weights();
    lambdas.extend(nu.distinct_weights());
    lambdas.sort_by(|a, b| b.cmp_total(a));
    lambdas.dedup();

    lambdas
        .into_iter()
        .map(|lambda| {
            let rows: Vec<usize> = (0..mu.len()).filter(|&i| mu.weight(i) == lambda).collect();
            let cols: Vec<usize> = (0..nu.len()).filter(|&j| nu.weight(j) == lambda).collect();
            let row_segments = rows.iter().flat_map(|&i| (0..p[i]).map(move |j| (i, j)));
            let col_segments = cols.iter().flat_map(|&j| (0..q[j]).map(move |i| (i, j)));
            Region::new(lambda, row_segments.chain(col_segments), &rows, &cols)
        })
        .collect()
}
