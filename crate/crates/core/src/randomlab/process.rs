use crate::cost::CostMatrix;
use crate::scalar::Scalar;
use crate::Cell;

/// Outcome of the increasing-cost bipartite graph process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphProcess {
    /// Number of edges added when every row and column first has an edge.
    pub tau: usize,
    /// Edges present at that moment, in row-major order.
    pub support: Vec<Cell>,
    /// Number of distinct cost values among those edges. Equals `tau` when
    /// costs are distinct; with ties it is the threshold rank instead.
    pub beta_rank: usize,
}

/// Adds cells one at a time in increasing cost order (ties broken by row,
/// then column) until every row and column is covered.
pub fn graph_process_tau<T: Scalar>(c: &CostMatrix<T>) -> GraphProcess {
    let (m, n) = c.dims();
    let mut order: Vec<Cell> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    order.sort_by(|&a, &b| c.get(a).cmp_total(&c.get(b)).then(a.cmp(&b)));

    let mut row_hit = vec![false; m];
    let mut col_hit = vec![false; n];
    let mut missing = m + n;
    let mut tau = 0;
    let mut beta_rank = 0;
    let mut last: Option<T> = None;
    for &(i, j) in &order {
        tau += 1;
        let v = c.get((i, j));
        if last != Some(v) {
            beta_rank += 1;
            last = Some(v);
        }
        if !std::mem::replace(&mut row_hit[i], true) {
            missing -= 1;
        }
        if !std::mem::replace(&mut col_hit[j], true) {
            missing -= 1;
        }
        if missing == 0 {
            break;
        }
    }
    let mut support = order[..tau].to_vec();
    support.sort_unstable();
    GraphProcess { tau, support, beta_rank }
}
