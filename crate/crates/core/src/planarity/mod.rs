//! Planarity testing and combinatorial embeddings.

mod lr;
mod rotation;

pub use rotation::{mirror, Dart, DartId, RotationSystem};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest edge count for which `embed` spends quadratic time shrinking a
/// non-planar input down to a Kuratowski subdivision.
const WITNESS_EDGE_LIMIT: usize = 600;

fn edge_indexed_adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    adj
}

/// Cyclic neighbor orders of a planar embedding of the simple graph given by
/// `n` and `edges`, or `None` when it is not planar. Works on disconnected
/// graphs.
pub fn planar_neighbor_orders(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let adj = edge_indexed_adjacency(n, edges);
    lr::planar_rotations(&adj, edges.len())
}

pub fn is_planar(g: &Graph) -> bool {
    planar_neighbor_orders(g.node_count(), g.edges()).is_some()
}

/// Embeds a connected planar graph.
pub fn embed(g: &Graph) -> Result<RotationSystem> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    match planar_neighbor_orders(g.node_count(), g.edges()) {
        Some(orders) => RotationSystem::from_neighbor_orders(&orders),
        None => Err(Error::NotPlanar {
            witness: kuratowski_witness(g),
        }),
    }
}

/// Edges of an edge-minimal non-planar subgraph of `g`, found by greedy
/// deletion. Empty when `g` is planar or too large for the quadratic search.
pub fn kuratowski_witness(g: &Graph) -> Vec<(usize, usize)> {
    if g.edge_count() > WITNESS_EDGE_LIMIT {
        return Vec::new();
    }
    let n = g.node_count();
    let mut kept: Vec<(usize, usize)> = g.edges().to_vec();
    if planar_neighbor_orders(n, &kept).is_some() {
        return Vec::new();
    }
    let mut i = 0;
    while i < kept.len() {
        let removed = kept.remove(i);
        if planar_neighbor_orders(n, &kept).is_some() {
            kept.insert(i, removed);
            i += 1;
        }
    }
    kept
}
