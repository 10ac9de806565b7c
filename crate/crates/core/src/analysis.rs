//! Structure of plans: reduction, perfect matchings and uniqueness.

use crate::cost::CostMatrix;
use crate::error::{Error, Result};
use crate::matching::has_perfect_matching;
use crate::measure::MaxPlusMeasure;
use crate::plan::Plan;
use crate::regions::Region;
use crate::scalar::{NegInf, Scalar};
use crate::solver::{solve, RegionSolution};
use crate::Cell;

fn strict_in_row<T: Scalar>(h: &Plan<T>, (i, j): Cell) -> bool {
    let v = h.get((i, j));
    (0..h.cols()).all(|k| k == j || h.get((i, k)) < v)
}

fn strict_in_col<T: Scalar>(h: &Plan<T>, (i, j): Cell) -> bool {
    let v = h.get((i, j));
    (0..h.rows()).all(|k| k == i || h.get((k, j)) < v)
}

/// A plan is reduced when every finite entry is a strict maximum of its row
/// or of its column. An entry alone on its line counts as strict.
pub fn is_reduced<T: Scalar>(h: &Plan<T>) -> bool {
    h.support().into_iter().all(|cell| strict_in_row(h, cell) || strict_in_col(h, cell))
}

/// Reducedness of a `{λ, -∞}` region plan given by its support: every cell
/// must be the only support cell on some active row or active column.
pub fn is_region_plan_reduced<T: Scalar>(region: &Region<T>, support: &[Cell]) -> bool {
    support.iter().all(|&(i, j)| {
        let alone_in_row = region.active_rows().contains(&i) && support.iter().all(|c| c.0 != i || c.1 == j);
        let alone_in_col = region.active_cols().contains(&j) && support.iter().all(|c| c.1 != j || c.0 == i);
        alone_in_row || alone_in_col
    })
}

/// Removes entries that are strict maxima in neither their row nor their
/// column, one at a time in row-major order, re-checking after each removal.
///
/// Removing a non-strict entry never changes a row or column maximum, so a
/// plan stays a plan; and removals only make the surviving entries more
/// strict, so one pass reaches a reduced plan.
pub fn reduce<T: Scalar>(h: &Plan<T>) -> Plan<T> {
    let mut out = h.clone();
    for cell in h.support() {
        if !strict_in_row(&out, cell) && !strict_in_col(&out, cell) {
            out.set(cell, NegInf);
        }
    }
    out
}

/// True iff the support of the square plan `h` contains the graph of a
/// permutation.
pub fn contains_perfect_matching<T: Scalar>(h: &Plan<T>) -> Result<bool> {
    if h.rows() != h.cols() {
        return Err(Error::NotSquare(h.rows(), h.cols()));
    }
    Ok(has_perfect_matching(h.rows(), &h.support()))
}

/// Whether some plan is supported on the graph of a permutation: exactly when
/// the sorted weight vectors coincide. Necessity holds because such a plan
/// pairs each row with a column of the same weight; sufficiency because the
/// diagonal `h_ii = k_i` is then a plan. Whether it is also optimal depends
/// on the cost.
pub fn pm_feasible<T: Scalar>(mu: &MaxPlusMeasure<T>, nu: &MaxPlusMeasure<T>) -> bool {
    mu.weights() == nu.weights()
}

/// Per-region uniqueness flags.
///
/// A region's threshold plan is reduced exactly when it is the only
/// `{λ, -∞}`-valued minimizing plan of that region. This says nothing about
/// minimizers with other values, and a non-reduced threshold plan may still
/// sit above a single reduced minimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessCertificate<T> {
    pub per_region: Vec<(T, bool)>,
    /// Set only when the problem has a single region.
    pub overall_fundamental: Option<bool>,
}

impl<T: Scalar> UniquenessCertificate<T> {
    pub fn get(&self, lambda: T) -> Option<bool> {
        self.per_region.iter().find(|(l, _)| *l == lambda).map(|&(_, u)| u)
    }
}

pub fn uniqueness_certificate<T: Scalar>(
    mu: &MaxPlusMeasure<T>,
    nu: &MaxPlusMeasure<T>,
    c: &CostMatrix<T>,
) -> Result<UniquenessCertificate<T>> {
    let solution = solve(mu, nu, c)?;
    Ok(certificate_from_regions(&solution.regions))
}

pub fn certificate_from_regions<T: Scalar>(regions: &[RegionSolution<T>]) -> UniquenessCertificate<T> {
    let per_region: Vec<(T, bool)> =
        regions.iter().map(|rs| (rs.region.lambda, is_region_plan_reduced(&rs.region, &rs.support))).collect();
    let overall_fundamental = match per_region.as_slice() {
        [(_, unique)] => Some(*unique),
        _ => None,
    };
    UniquenessCertificate { per_region, overall_fundamental }
}

/// Counts reduced minimizing plans of a region, stopping at `cap`.
///
/// These are the subsets of the threshold support that reach every active
/// line and in which every cell is alone on one of its active lines. This is
/// a second, weaker notion of uniqueness than [`is_region_plan_reduced`].
pub fn count_reduced_minimizers<T: Scalar>(rs: &RegionSolution<T>, cap: usize) -> usize {
    let region = &rs.region;
    let rows = region.row_set().iter().max().map_or(0, |&r| r + 1);
    let cols = region.col_set().iter().max().map_or(0, |&c| c + 1);
    let mut active_row = vec![false; rows];
    let mut active_col = vec![false; cols];
    region.active_rows().iter().for_each(|&r| active_row[r] = true);
    region.active_cols().iter().for_each(|&c| active_col[c] = true);

    let cells = &rs.support;
    // Number of undecided-or-included cells remaining on each line.
    let mut row_avail = vec![0usize; rows];
    let mut col_avail = vec![0usize; cols];
    for &(i, j) in cells {
        row_avail[i] += 1;
        col_avail[j] += 1;
    }

    let mut search = CoverSearch {
        cells,
        active_row,
        active_col,
        row_avail,
        col_avail,
        row_in: vec![0; rows],
        col_in: vec![0; cols],
        chosen: Vec::new(),
        found: 0,
        cap,
    };
    search.run(0);
    search.found
}

struct CoverSearch<'a> {
    cells: &'a [Cell],
    active_row: Vec<bool>,
    active_col: Vec<bool>,
    row_avail: Vec<usize>,
    col_avail: Vec<usize>,
    row_in: Vec<usize>,
    col_in: Vec<usize>,
    chosen: Vec<Cell>,
    found: usize,
    cap: usize,
}

impl CoverSearch<'_> {
    fn sole(&self, (i, j): Cell) -> bool {
        (self.active_row[i] && self.row_in[i] == 1) || (self.active_col[j] && self.col_in[j] == 1)
    }

    fn run(&mut self, k: usize) {
        if self.found >= self.cap {
            return;
        }
        if k == self.cells.len() {
            // Exclusion pruning keeps every active line reachable, so reaching
            // the end with all chosen cells still sole means a minimal cover.
            if self.chosen.iter().all(|&c| self.sole(c)) {
                self.found += 1;
            }
            return;
        }
        let (i, j) = self.cells[k];

        // Exclude (i, j), if its active lines remain reachable.
        let row_ok = !self.active_row[i] || self.row_avail[i] > 1;
        let col_ok = !self.active_col[j] || self.col_avail[j] > 1;
        if row_ok && col_ok {
            self.row_avail[i] -= 1;
            self.col_avail[j] -= 1;
            self.run(k + 1);
            self.row_avail[i] += 1;
            self.col_avail[j] += 1;
        }

        // Include (i, j), if it can still be alone on some active line and
        // does not strip an earlier choice of its last such line.
        let can_be_sole = (self.active_row[i] && self.row_in[i] == 0) || (self.active_col[j] && self.col_in[j] == 0);
        if can_be_sole {
            self.row_in[i] += 1;
            self.col_in[j] += 1;
            self.chosen.push((i, j));
            let neighbours_ok = self.chosen.iter().filter(|&&(a, b)| (a == i) != (b == j)).all(|&c| self.sole(c));
            if neighbours_ok {
                self.run(k + 1);
            }
            self.chosen.pop();
            self.row_in[i] -= 1;
            self.col_in[j] -= 1;
        }
    }
}

/// Entry-wise view of the region plan as extended reals on the full grid.
pub fn region_plan_matrix<T: Scalar>(rs: &RegionSolution<T>, rows: usize, cols: usize) -> Plan<T> {
    Plan::from_fn(rows, cols, |i, j| if rs.region.contains((i, j)) { rs.value_at((i, j)) } else { NegInf })
        .expect("region values are nonpositive")
}
