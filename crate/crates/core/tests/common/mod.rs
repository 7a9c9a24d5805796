//! Oracles shared by the integration tests. Nothing here uses the
//! library's planarity test or canonical codes.

#![allow(dead_code)]

use std::collections::HashMap;

use planar_canon::iso::find_isomorphism;
use planar_canon::Graph;

/// Whether `g` contains a subdivision of the graph with `h_edges` whose
/// branch nodes sit on `branch`, paths running through other nodes.
fn has_subdivision_on(g: &Graph, branch: &[usize], h_edges: &[(usize, usize)]) -> bool {
    let n = g.node_count();
    let mut blocked = vec![false; n];
    for &b in branch {
        blocked[b] = true;
    }
    route(g, branch, h_edges, 0, &mut blocked)
}

fn route(
    g: &Graph,
    branch: &[usize],
    h_edges: &[(usize, usize)],
    i: usize,
    blocked: &mut [bool],
) -> bool {
    if i == h_edges.len() {
        return true;
    }
    let (s, t) = (branch[h_edges[i].0], branch[h_edges[i].1]);
    let mut path = Vec::new();
    extend_path(g, branch, h_edges, i, s, t, blocked, &mut path)
}

/// Depth-first over simple paths from `at` to `t` through free nodes; each
/// complete path is followed by routing the remaining edges.
#[allow(clippy::too_many_arguments)]
fn extend_path(
    g: &Graph,
    branch: &[usize],
    h_edges: &[(usize, usize)],
    i: usize,
    at: usize,
    t: usize,
    blocked: &mut [bool],
    path: &mut Vec<usize>,
) -> bool {
    for &w in g.neighbors(at) {
        if w == t {
            if route(g, branch, h_edges, i + 1, blocked) {
                return true;
            }
            continue;
        }
        if blocked[w] {
            continue;
        }
        blocked[w] = true;
        path.push(w);
        let ok = extend_path(g, branch, h_edges, i, w, t, blocked, path);
        path.pop();
        blocked[w] = false;
        if ok {
            return true;
        }
    }
    false
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Planarity by Kuratowski's theorem: search for a subdivided K5 or K3,3.
pub fn kuratowski_planar(g: &Graph) -> bool {
    let n = g.node_count();
    let k5: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    for set in subsets(n, 5) {
        if set.iter().all(|&x| g.degree(x) >= 4) && has_subdivision_on(g, &set, &k5) {
            return false;
        }
    }
    let k33: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    for six in subsets(n, 6) {
        if six.iter().any(|&x| g.degree(x) < 3) {
            continue;
        }
        // split the six into two sides; fix six[0] on the left
        for rest in subsets(5, 2) {
            let left = [six[0], six[1 + rest[0]], six[1 + rest[1]]];
            let right: Vec<usize> = six.iter().copied().filter(|x| !left.contains(x)).collect();
            let branch = [left[0], left[1], left[2], right[0], right[1], right[2]];
            if has_subdivision_on(g, &branch, &k33) {
                return false;
            }
        }
    }
    true
}

pub fn connected(g: &Graph) -> bool {
    let n = g.node_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Edge count, sorted (degree, neighbor degrees) profile, triangle count.
type BucketKey = (usize, Vec<(usize, Vec<usize>)>, usize);

fn bucket_key(g: &Graph) -> BucketKey {
    let n = g.node_count();
    let mut profile: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|u| {
            let mut nd: Vec<usize> = g.neighbors(u).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(u), nd)
        })
        .collect();
    profile.sort();
    let mut triangles = 0;
    for &(u, v) in g.edges() {
        triangles += g.neighbors(u).iter().filter(|&&w| g.has_edge(v, w)).count();
    }
    (g.edge_count(), profile, triangles)
}

/// One isomorphism class: its representative and every labeled copy met
/// while enumerating.
pub struct Class {
    pub rep: Graph,
    pub copies: Vec<Graph>,
}

/// All simple graphs on `n` nodes up to isomorphism, by adding a node with
/// every possible neighborhood to each class on `n - 1` nodes. Classes are
/// separated by the backtracking oracle.
pub fn all_graphs(n: usize) -> Vec<Class> {
    let mut level: Vec<Class> = vec![Class {
        rep: Graph::empty(0),
        copies: Vec::new(),
    }];
    for k in 1..=n {
        let mut buckets: HashMap<BucketKey, Vec<usize>> = HashMap::new();
        let mut next: Vec<Class> = Vec::new();
        for class in &level {
            let base = &class.rep;
            for mask in 0u32..(1 << (k - 1)) {
                let mut edges: Vec<(usize, usize)> = base.edges().to_vec();
                for u in 0..k - 1 {
                    if mask & (1 << u) != 0 {
                        edges.push((u, k - 1));
                    }
                }
                let g = Graph::uncolored(k, edges).unwrap();
                let key = bucket_key(&g);
                let slot = buckets.entry(key).or_default();
                match slot
                    .iter()
                    .find(|&&c| find_isomorphism(&next[c].rep, &g).is_some())
                {
                    Some(&c) => next[c].copies.push(g),
                    None => {
                        slot.push(next.len());
                        next.push(Class {
                            rep: g,
                            copies: Vec::new(),
                        });
                    }
                }
            }
        }
        level = next;
    }
    level
}

/// Connected planar classes on exactly `n` nodes, planarity decided by the
/// Kuratowski oracle.
pub fn connected_planar(n: usize) -> Vec<Class> {
    all_graphs(n)
        .into_iter()
        .filter(|c| connected(&c.rep) && kuratowski_planar(&c.rep))
        .collect()
}
