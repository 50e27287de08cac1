use std::collections::VecDeque;

use super::CsrMatrix;
use crate::Real;

/// Reverse Cuthill–McKee ordering of the symmetric sparsity pattern.
/// Returns `perm` with `perm[new] = old`.
pub fn reverse_cuthill_mckee<T: Real>(a: &CsrMatrix<T>) -> Vec<usize> {
    let n = a.nrows;
    let degree: Vec<usize> = (0..n).map(|i| a.indptr[i + 1] - a.indptr[i]).collect();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&i| (degree[i], i));
    let mut nbrs = Vec::new();
    for &start in &by_degree {
        if visited[start] {
            continue;
        }
        let root = pseudo_peripheral(a, start, &degree);
        visited[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            nbrs.clear();
            nbrs.extend(a.row(i).map(|(j, _)| j).filter(|&j| !visited[j]));
            nbrs.sort_by_key(|&j| (degree[j], j));
            for &j in &nbrs {
                visited[j] = true;
                queue.push_back(j);
            }
        }
    }
    order.reverse();
    order
}

/// Node far from `start` within its component (repeated BFS level search).
fn pseudo_peripheral<T: Real>(a: &CsrMatrix<T>, start: usize, degree: &[usize]) -> usize {
    let mut root = start;
    let mut depth = 0;
    for _ in 0..8 {
        let levels = bfs_levels(a, root);
        let far = levels.iter().copied().filter(|&l| l != usize::MAX).max().unwrap_or(0);
        if far <= depth {
            break;
        }
        depth = far;
        root = (0..a.nrows)
            .filter(|&i| levels[i] == far)
            .min_by_key(|&i| (degree[i], i))
            .unwrap_or(root);
    }
    root
}

fn bfs_levels<T: Real>(a: &CsrMatrix<T>, root: usize) -> Vec<usize> {
    let mut level = vec![usize::MAX; a.nrows];
    level[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(i) = queue.pop_front() {
        for (j, _) in a.row(i) {
            if level[j] == usize::MAX {
                level[j] = level[i] + 1;
                queue.push_back(j);
            }
        }
    }
    level
}
