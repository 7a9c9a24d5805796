//! Connected components, biconnected blocks and the block-cut tree.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree;

/// A maximal biconnected subgraph, a bridge, or a lone node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub id: usize,
    /// Sorted node ids of the original graph.
    pub nodes: Vec<usize>,
    /// Edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// A node of the block-cut tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeNode {
    Block(usize),
    Cut(usize),
}

#[derive(Clone, Debug)]
pub struct BlockCutTree {
    /// Sorted cut node ids.
    pub cut_nodes: Vec<usize>,
    pub blocks: Vec<Block>,
    /// `(cut node, block id)` incidences.
    pub tree_edges: Vec<(usize, usize)>,
    /// A centroid of the tree. With two centroids this is the first one;
    /// canonical coding picks between them by code.
    pub root: TreeNode,
}

impl BlockCutTree {
    pub fn tree_node_count(&self) -> usize {
        self.blocks.len() + self.cut_nodes.len()
    }

    /// Tree nodes indexed `0..blocks` for blocks, then one per cut node in
    /// `cut_nodes` order.
    pub fn tree_nodes(&self) -> Vec<TreeNode> {
        self.blocks
            .iter()
            .map(|b| TreeNode::Block(b.id))
            .chain(self.cut_nodes.iter().map(|&c| TreeNode::Cut(c)))
            .collect()
    }

    pub fn index_of(&self, node: TreeNode) -> usize {
        match node {
            TreeNode::Block(b) => b,
            TreeNode::Cut(c) => {
                self.blocks.len()
                    + self
                        .cut_nodes
                        .binary_search(&c)
                        .expect("cut node belongs to this tree")
            }
        }
    }

    /// Adjacency over `tree_nodes()` indices.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.tree_node_count()];
        for &(c, b) in &self.tree_edges {
            let ci = self.index_of(TreeNode::Cut(c));
            adj[ci].push(b);
            adj[b].push(ci);
        }
        adj
    }

    /// The one or two centroids of the tree.
    pub fn centroids(&self) -> Vec<TreeNode> {
        let nodes = self.tree_nodes();
        tree::centroids(&self.adjacency())
            .into_iter()
            .map(|i| nodes[i])
            .collect()
    }

    pub fn is_cut_node(&self, u: usize) -> bool {
        self.cut_nodes.binary_search(&u).is_ok()
    }

    /// Ids of the blocks containing `u`.
    pub fn blocks_of(&self, u: usize) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|b| b.nodes.binary_search(&u).is_ok())
            .map(|b| b.id)
            .collect()
    }
}

/// Decomposes a connected graph into its blocks and builds the block-cut
/// tree, rooted at a centroid.
pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::Validation("block-cut tree of an empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let blocks = biconnected_blocks(g);
    let mut membership = vec![0usize; n];
    for b in &blocks {
        for &u in &b.nodes {
            membership[u] += 1;
        }
    }
    let cut_nodes: Vec<usize> = (0..n).filter(|&u| membership[u] >= 2).collect();
    let mut tree_edges = Vec::new();
    for b in &blocks {
        for &u in &b.nodes {
            if membership[u] >= 2 {
                tree_edges.push((u, b.id));
            }
        }
    }
    tree_edges.sort_unstable();
    let mut bct = BlockCutTree {
        cut_nodes,
        blocks,
        tree_edges,
        root: TreeNode::Block(0),
    };
    bct.root = centroid_root(&bct);
    Ok(bct)
}

/// First centroid of the block-cut tree (blocks before cut nodes).
pub fn centroid_root(bct: &BlockCutTree) -> TreeNode {
    bct.centroids()[0]
}

fn biconnected_blocks(g: &Graph) -> Vec<Block> {
    const NONE: usize = usize::MAX;
    let n = g.node_count();
    if g.edge_count() == 0 {
        return (0..n)
            .map(|u| Block {
                id: u,
                nodes: vec![u],
                edges: Vec::new(),
            })
            .collect();
    }
    let mut disc = vec![NONE; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != NONE {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![(root, root)]);
            continue;
        }
        // (node, parent, next neighbor index)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, NONE, 0)];
        while let Some(frame) = frames.last_mut() {
            let (v, parent, i) = *frame;
            if i < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[i];
                if disc[w] == NONE {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if parent != NONE {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (parent, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
        .into_iter()
        .enumerate()
        .map(|(id, raw)| {
            if raw.len() == 1 && raw[0].0 == raw[0].1 {
                return Block {
                    id,
                    nodes: vec![raw[0].0],
                    edges: Vec::new(),
                };
            }
            let mut nodes = BTreeSet::new();
            let mut edges: Vec<(usize, usize)> = raw
                .into_iter()
                .map(|(u, v)| {
                    nodes.insert(u);
                    nodes.insert(v);
                    (u.min(v), u.max(v))
                })
                .collect();
            edges.sort_unstable();
            Block {
                id,
                nodes: nodes.into_iter().collect(),
                edges,
            }
        })
        .collect()
}

/// A connected component together with the map from its local node ids
/// back to the original graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    /// `original_ids[local] = original`.
    pub original_ids: Vec<usize>,
}

/// Connected components ordered by their smallest original node id.
pub fn components(g: &Graph) -> Vec<Component> {
    let n = g.node_count();
    let mut comp = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = members.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut nodes = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    stack.push(v);
                    nodes.push(v);
                }
            }
        }
        nodes.sort_unstable();
        members.push(nodes);
    }
    if members.len() == 1 {
        return vec![Component {
            graph: g.clone(),
            original_ids: (0..n).collect(),
        }];
    }
    let mut local = vec![0; n];
    for nodes in &members {
        for (i, &u) in nodes.iter().enumerate() {
            local[u] = i;
        }
    }
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); members.len()];
    for &(u, v) in g.edges() {
        edges[comp[u]].push((local[u], local[v]));
    }
    members
        .into_iter()
        .zip(edges)
        .map(|(nodes, edges)| {
            let colors = nodes.iter().map(|&u| g.color(u)).collect();
            Component {
                graph: Graph::new(nodes.len(), edges, colors).expect("component of a valid graph"),
                original_ids: nodes,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::uncolored(n, edges.to_vec()).unwrap()
    }

    fn is_articulation_by_deletion(g: &Graph, x: usize) -> bool {
        let keep: Vec<usize> = (0..g.node_count()).filter(|&u| u != x).collect();
        if keep.len() <= 1 {
            return false;
        }
        let mut seen = vec![false; g.node_count()];
        seen[x] = true;
        let mut stack = vec![keep[0]];
        seen[keep[0]] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count < keep.len()
    }

    #[test]
    fn triangle_is_one_block() {
        let t = block_cut_tree(&graph(3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
        assert_eq!(t.blocks.len(), 1);
        assert!(t.cut_nodes.is_empty());
        assert_eq!(t.root, TreeNode::Block(0));
    }

    #[test]
    fn path_has_middle_cut_node() {
        let t = block_cut_tree(&graph(3, &[(0, 1), (1, 2)])).unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert!(t.blocks.iter().all(|b| b.edges.len() == 1));
        assert_eq!(t.cut_nodes, vec![1]);
        assert_eq!(t.root, TreeNode::Cut(1));
    }

    #[test]
    fn star_k14() {
        let g = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let t = block_cut_tree(&g).unwrap();
        assert_eq!(t.blocks.len(), 4);
        assert_eq!(t.cut_nodes, vec![0]);
        assert_eq!(t.tree_node_count(), 5);
        let oracle: Vec<usize> = (0..5)
            .filter(|&x| is_articulation_by_deletion(&g, x))
            .collect();
        assert_eq!(oracle, t.cut_nodes);
    }

    #[test]
    fn single_node_block() {
        let t = block_cut_tree(&Graph::empty(1)).unwrap();
        assert_eq!(t.blocks.len(), 1);
        assert_eq!(t.blocks[0].nodes, vec![0]);
        assert!(t.cut_nodes.is_empty());
    }

    #[test]
    fn disconnected_rejected() {
        assert!(matches!(
            block_cut_tree(&graph(4, &[(0, 1), (2, 3)])),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn two_triangles_components() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let comps = components(&g);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.graph.node_count() == 3));
        assert_eq!(comps[1].original_ids, vec![3, 4, 5]);
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(
            components(&tri),
            vec![Component {
                graph: tri.clone(),
                original_ids: vec![0, 1, 2]
            }]
        );
    }

    #[test]
    fn bowtie_and_pendant() {
        // two triangles sharing node 2, plus a pendant edge at 4
        let g = graph(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]);
        let t = block_cut_tree(&g).unwrap();
        assert_eq!(t.blocks.len(), 3);
        assert_eq!(t.cut_nodes, vec![2, 4]);
        assert_eq!(t.blocks_of(2).len(), 2);
        let oracle: Vec<usize> = (0..6)
            .filter(|&x| is_articulation_by_deletion(&g, x))
            .collect();
        assert_eq!(oracle, t.cut_nodes);
        let total: usize = t.blocks.iter().map(|b| b.nodes.len()).sum();
        assert!(total <= 2 * 6 - 2);
    }
}
