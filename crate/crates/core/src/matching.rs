//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

use crate::Cell;

const FREE: usize = usize::MAX;

/// Returns a maximum matching of the bipartite graph with `left` row
/// vertices, `right` column vertices and the given `(row, col)` edges.
pub fn maximum_matching(left: usize, right: usize, edges: &[Cell]) -> Vec<Cell> {
    let mut adj = vec![Vec::new(); left];
    for &(i, j) in edges {
        debug_assert!(i < left && j < right);
        adj[i].push(j);
    }
    let mut match_left = vec![FREE; left];
    let mut match_right = vec![FREE; right];
    let mut dist = vec![0usize; left];
    let mut queue = VecDeque::with_capacity(left);

    loop {
        // BFS layering from free left vertices.
        queue.clear();
        let mut found = false;
        for i in 0..left {
            if match_left[i] == FREE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let k = match_right[j];
                if k == FREE {
                    found = true;
                } else if dist[k] == usize::MAX {
                    dist[k] = dist[i] + 1;
                    queue.push_back(k);
                }
            }
        }
        if !found {
            break;
        }
        let mut augmented = false;
        for i in 0..left {
            if match_left[i] == FREE && augment(i, &adj, &mut match_left, &mut match_right, &mut dist) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }

    match_left.iter().enumerate().filter(|(_, &j)| j != FREE).map(|(i, &j)| (i, j)).collect()
}

fn augment(i: usize, adj: &[Vec<usize>], ml: &mut [usize], mr: &mut [usize], dist: &mut [usize]) -> bool {
    for &j in &adj[i] {
        let k = mr[j];
        if k == FREE || (dist[k] == dist[i] + 1 && augment(k, adj, ml, mr, dist)) {
            ml[i] = j;
            mr[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

/// True iff the `n × n` bipartite graph with these edges has a perfect matching.
pub fn has_perfect_matching(n: usize, edges: &[Cell]) -> bool {
    maximum_matching(n, n, edges).len() == n
}
