//! Isomorphism decisions: canonical-code equality, a backtracking oracle,
//! and 1-WL color refinement for comparison.

use crate::canon::graph_code;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 10;

/// Whether two planar graphs are isomorphic, by comparing canonical codes.
pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count() {
        // still reject non-planar inputs
        graph_code(g1)?;
        graph_code(g2)?;
        return Ok(false);
    }
    Ok(graph_code(g1)? == graph_code(g2)?)
}

pub fn brute_force_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    brute_force_isomorphic_bounded(g1, g2, DEFAULT_BRUTE_FORCE_BOUND)
}

/// Searches for a color- and adjacency-preserving bijection. Inputs with
/// more than `bound` nodes are refused.
pub fn brute_force_isomorphic_bounded(g1: &Graph, g2: &Graph, bound: usize) -> Result<bool> {
    for n in [g1.node_count(), g2.node_count()] {
        if n > bound {
            return Err(Error::SizeBound { n, bound });
        }
    }
    Ok(find_isomorphism(g1, g2).is_some())
}

/// A bijection `f` with `f[u]` in `g2` for every `u` in `g1`, if any.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    let n = g1.node_count();
    if n != g2.node_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let profile = |g: &Graph| {
        let mut p: Vec<(usize, u64)> = (0..g.node_count())
            .map(|u| (g.degree(u), g.color(u)))
            .collect();
        p.sort_unstable();
        p
    };
    if profile(g1) != profile(g2) {
        return None;
    }
    // most constrained first: high degree, then neighbors of placed nodes
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&u| !placed[u])
            .max_by_key(|&u| {
                let linked = g1.neighbors(u).iter().filter(|&&w| placed[w]).count();
                (linked, g1.degree(u), std::cmp::Reverse(u))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g1, g2, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    g1: &Graph,
    g2: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for v in 0..g2.node_count() {
        if used[v] || g2.degree(v) != g1.degree(u) || g2.color(v) != g1.color(u) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| g1.has_edge(u, w) == g2.has_edge(v, map[w]));
        if !consistent {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if extend(g1, g2, order, depth + 1, map, used) {
            return true;
        }
        used[v] = false;
        map[u] = usize::MAX;
    }
    false
}

/// Stable 1-WL coloring. Colors are ranks in per-round signature tables,
/// so two colorings compare equal exactly when refinement cannot tell the
/// graphs apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WlColoring {
    /// Refinement rounds until the partition stopped splitting.
    pub rounds: usize,
    /// `(color, multiplicity)` sorted by color.
    pub histogram: Vec<(usize, usize)>,
    /// Initial colors, then the sorted signature table of every round.
    pub palette: Vec<Vec<(usize, Vec<usize>)>>,
    pub node_colors: Vec<usize>,
}

pub fn wl1_histogram(g: &Graph) -> WlColoring {
    let n = g.node_count();
    let mut initial: Vec<u64> = g.colors().to_vec();
    initial.sort_unstable();
    initial.dedup();
    let mut colors: Vec<usize> = (0..n)
        .map(|u| initial.binary_search(&g.color(u)).unwrap())
        .collect();
    let mut palette = vec![initial
        .iter()
        .map(|&c| (c as usize, Vec::new()))
        .collect::<Vec<_>>()];
    let mut classes = initial.len();
    let mut rounds = 0;
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|u| {
                let mut nb: Vec<usize> = g.neighbors(u).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[u], nb)
            })
            .collect();
        let mut table = signatures.clone();
        table.sort();
        table.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| table.binary_search(s).unwrap())
            .collect();
        rounds += 1;
        let split = table.len() > classes;
        classes = table.len();
        colors = next;
        palette.push(table);
        if !split {
            break;
        }
    }
    let mut histogram: Vec<(usize, usize)> = Vec::new();
    let mut sorted = colors.clone();
    sorted.sort_unstable();
    for c in sorted {
        match histogram.last_mut() {
            Some((x, k)) if *x == c => *k += 1,
            _ => histogram.push((c, 1)),
        }
    }
    WlColoring {
        rounds,
        histogram,
        palette,
        node_colors: colors,
    }
}
