//! JSON views and plain-text rendering. Every cell index printed by the CLI
//! is 1-based and refers to the normalized (sorted) order.

use serde::{Deserialize, Serialize};
use tropical_ot::analysis::{
    contains_perfect_matching, count_reduced_minimizers, is_reduced, is_region_plan_reduced, pm_feasible, reduce,
};
use tropical_ot::{Cell, ExtendedReal, Plan, Region, RegionSolution, Solution};

use crate::problem::{one_based, Problem};

/// Bumped whenever the JSON produced by `solve` changes shape.
pub const FORMAT_VERSION: u32 = 1;

/// Stop counting reduced minimizers past this many.
const MINIMIZER_CAP: usize = 64;

fn cell_out((i, j): Cell) -> [usize; 2] {
    [i + 1, j + 1]
}

fn cells_out(cells: &[Cell]) -> Vec<[usize; 2]> {
    cells.iter().copied().map(cell_out).collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RegionOut {
    pub lambda: f64,
    pub cells: Vec<[usize; 2]>,
    pub active_rows: Vec<usize>,
    pub active_cols: Vec<usize>,
}

impl RegionOut {
    pub fn new(r: &Region<f64>) -> Self {
        RegionOut {
            lambda: r.lambda,
            cells: cells_out(r.cells()),
            active_rows: one_based(r.active_rows()),
            active_cols: one_based(r.active_cols()),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RegionSolutionOut {
    pub lambda: f64,
    pub threshold_rank: usize,
    pub threshold_value: f64,
    pub region_cost: f64,
    pub witness: [usize; 2],
    pub support: Vec<[usize; 2]>,
}

impl RegionSolutionOut {
    fn new(rs: &RegionSolution<f64>) -> Self {
        RegionSolutionOut {
            lambda: rs.lambda(),
            threshold_rank: rs.threshold,
            threshold_value: rs.threshold_value(),
            region_cost: rs.region_cost,
            witness: cell_out(rs.witness),
            support: cells_out(&rs.support),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SolveOut {
    pub format_version: u32,
    pub cost: f64,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    /// `row_order[s]` is the 1-based input position of normalized row `s`.
    pub row_order: Vec<usize>,
    pub col_order: Vec<usize>,
    pub plan: Vec<Vec<ExtendedReal<f64>>>,
    pub support: Vec<[usize; 2]>,
    pub regions: Vec<RegionSolutionOut>,
}

impl SolveOut {
    pub fn new(problem: &Problem, s: &Solution<f64>) -> Self {
        SolveOut {
            format_version: FORMAT_VERSION,
            cost: s.cost,
            mu: problem.mu.weights().to_vec(),
            nu: problem.nu.weights().to_vec(),
            row_order: one_based(problem.mu.order()),
            col_order: one_based(problem.nu.order()),
            plan: s.plan.to_rows(),
            support: cells_out(&s.plan.support()),
            regions: s.regions.iter().map(RegionSolutionOut::new).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RegionAnalysisOut {
    pub lambda: f64,
    /// The threshold plan is the only `{λ, -∞}`-valued minimizer.
    pub unique: bool,
    /// Reduced `{λ, -∞}`-valued minimizers, counted up to `capped_at`.
    pub reduced_minimizers: usize,
    pub capped_at: usize,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeOut {
    pub format_version: u32,
    pub cost: f64,
    pub plan_reduced: bool,
    /// Reduction of the optimal plan, when it is not already reduced.
    pub reduced_plan: Option<Vec<Vec<ExtendedReal<f64>>>>,
    /// `null` for non-square problems.
    pub contains_perfect_matching: Option<bool>,
    /// Whether any plan with permutation support exists for these weights.
    pub perfect_matching_plan_exists: bool,
    pub regions: Vec<RegionAnalysisOut>,
    /// Set for single-region problems.
    pub unique: Option<bool>,
}

impl AnalyzeOut {
    pub fn new(problem: &Problem, s: &Solution<f64>) -> Self {
        let reduced = is_reduced(&s.plan);
        let regions: Vec<RegionAnalysisOut> = s
            .regions
            .iter()
            .map(|rs| RegionAnalysisOut {
                lambda: rs.lambda(),
                unique: is_region_plan_reduced(&rs.region, &rs.support),
                reduced_minimizers: count_reduced_minimizers(rs, MINIMIZER_CAP),
                capped_at: MINIMIZER_CAP,
            })
            .collect();
        AnalyzeOut {
            format_version: FORMAT_VERSION,
            cost: s.cost,
            plan_reduced: reduced,
            reduced_plan: (!reduced).then(|| reduce(&s.plan).to_rows()),
            contains_perfect_matching: contains_perfect_matching(&s.plan).ok(),
            perfect_matching_plan_exists: pm_feasible(&problem.mu, &problem.nu),
            unique: (regions.len() == 1).then(|| regions[0].unique),
            regions,
        }
    }
}

fn fmt_entry(v: ExtendedReal<f64>) -> String {
    v.to_string()
}

/// Right-aligned grid of strings.
pub fn grid(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| r.iter().map(|s| format!("{s:>width$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn plan_table(h: &Plan<f64>) -> String {
    let rows: Vec<Vec<String>> = h.to_rows().into_iter().map(|r| r.into_iter().map(fmt_entry).collect()).collect();
    grid(&rows)
}

fn fmt_cells(cells: &[Cell]) -> String {
    cells.iter().map(|&(i, j)| format!("({},{})", i + 1, j + 1)).collect::<Vec<_>>().join(" ")
}

pub fn solve_table(problem: &Problem, s: &Solution<f64>) -> String {
    let mut out = format!("cost: {}\n", s.cost);
    out += &format!("mu: {:?}\nnu: {:?}\n", problem.mu.weights(), problem.nu.weights());
    out += "plan:\n";
    out += &plan_table(&s.plan);
    out += "\nregions:\n";
    for rs in &s.regions {
        out += &format!(
            "  lambda {:>6}  rank {:>3}  threshold {:>6}  cost {:>6}  witness ({},{})  support {}\n",
            rs.lambda(),
            rs.threshold,
            rs.threshold_value(),
            rs.region_cost,
            rs.witness.0 + 1,
            rs.witness.1 + 1,
            fmt_cells(&rs.support)
        );
    }
    out
}

pub fn analyze_table(a: &AnalyzeOut) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!("cost: {}\n", a.cost);
    out += &format!("optimal plan reduced: {}\n", yn(a.plan_reduced));
    if let Some(rows) = &a.reduced_plan {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|&v| fmt_entry(v)).collect()).collect();
        out += &format!("reduction:\n{}\n", grid(&rows));
    }
    match a.contains_perfect_matching {
        Some(b) => out += &format!("contains perfect matching: {}\n", yn(b)),
        None => out += "contains perfect matching: n/a (not square)\n",
    }
    out += &format!("perfect-matching plan exists: {}\n", yn(a.perfect_matching_plan_exists));
    for r in &a.regions {
        let count = if r.reduced_minimizers >= r.capped_at {
            format!("{}+", r.capped_at)
        } else {
            r.reduced_minimizers.to_string()
        };
        out += &format!("  lambda {:>6}  unique {:<3}  reduced minimizers {count}\n", r.lambda, yn(r.unique));
    }
    if let Some(u) = a.unique {
        out += &format!("unique: {}\n", yn(u));
    }
    out
}

/// Grid labelling each cell with the 1-based index of its region.
pub fn regions_table(problem: &Problem, regions: &[Region<f64>], p: &[usize], q: &[usize]) -> String {
    let (m, n) = (problem.mu.len(), problem.nu.len());
    let mut labels = vec![vec![".".to_string(); n]; m];
    for (idx, r) in regions.iter().enumerate() {
        for &(i, j) in r.cells() {
            labels[i][j] = (idx + 1).to_string();
        }
    }
    let mut out = format!("mu: {:?}\nnu: {:?}\np: {:?}\nq: {:?}\n", problem.mu.weights(), problem.nu.weights(), p, q);
    for (idx, r) in regions.iter().enumerate() {
        out += &format!("region {} (lambda {}): {}\n", idx + 1, r.lambda, fmt_cells(r.cells()));
    }
    out += &grid(&labels);
    out.push('\n');
    out
}
