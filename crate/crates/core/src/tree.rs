//! Helpers for unrooted trees given as adjacency lists.

/// Centroids of a tree: the one or two nodes whose removal leaves no
/// component with more than half of the remaining nodes. Sorted ascending.
pub fn centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let (order, parent) = bfs_order(adj, 0);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            size[p] += size[v];
        }
    }
    let mut result = Vec::new();
    for v in 0..n {
        let mut largest = n - size[v];
        for &w in &adj[v] {
            if parent[w] == Some(v) {
                largest = largest.max(size[w]);
            }
        }
        if 2 * largest <= n {
            result.push(v);
        }
    }
    result
}

/// Breadth-first order from `root` and the parent of every reached node.
pub fn bfs_order(adj: &[Vec<usize>], root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut parent = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut order = vec![root];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                order.push(w);
            }
        }
    }
    (order, parent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| {
                let mut nb = Vec::new();
                if i > 0 {
                    nb.push(i - 1);
                }
                if i + 1 < n {
                    nb.push(i + 1);
                }
                nb
            })
            .collect()
    }

    #[test]
    fn path_centroids() {
        assert_eq!(centroids(&path(1)), vec![0]);
        assert_eq!(centroids(&path(3)), vec![1]);
        assert_eq!(centroids(&path(4)), vec![1, 2]);
    }

    #[test]
    fn star_centroid() {
        let mut adj = vec![vec![1, 2, 3, 4]];
        adj.extend((0..4).map(|_| vec![0]));
        assert_eq!(centroids(&adj), vec![0]);
    }
}
