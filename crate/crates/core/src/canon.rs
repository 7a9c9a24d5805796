//! Canonical codes of planar graphs.
//!
//! A component is decomposed into its block-cut tree and, per block, its
//! SPQR tree. Codes are built bottom-up from a centroid of each tree; when
//! a tree has two centroids both are tried and the smaller code wins.
//!
//! Inside a block every node is replaced by the rank of its label code in
//! the block's sorted label table, and the table is part of the block code.
//! A node's label is `(c)` for an ordinary node, `((c))` for the cut node
//! that attaches the block to its parent, and the subtree code of a child
//! cut node otherwise.
//!
//! Every skeleton edge traversed in a canonical order contributes a class:
//! 0 for a real edge, 1 for the edge towards the parent, and `2 + 3r + o`
//! for an edge towards a child whose code has rank `r` among the distinct
//! child codes. `o` records how the traversal direction relates to the
//! child's own preferred pole order: 0 same, 1 opposite, 2 the child reads
//! the same both ways.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::blockcut::{block_cut_tree, components, BlockCutTree, TreeNode};
use crate::code::{leaf_code, Code, CodeBuilder, LabelMap};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::{self, DartId};
use crate::spqr::{spqr_tree, EdgeKind, NodeKind, Skeleton, SpqrNode, SpqrTree};
use crate::tree;
use crate::weinberg::{
    all_candidates, embed_skeleton, minimize_walks, weinberg_walk_oriented, SkeletonEmbedding,
};

pub use crate::code::leaf_code as leaf;
pub use crate::weinberg::tri_code;

const NONE: usize = usize::MAX;

fn kind_token(kind: NodeKind) -> u64 {
    match kind {
        NodeKind::S => 0,
        NodeKind::P => 1,
        NodeKind::Q => 2,
        NodeKind::R => 3,
    }
}

/// Start index of the lexicographically least rotation of `s`.
fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        match s[(i + k) % n].cmp(&s[(j + k) % n]) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i == j {
                    i += 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if i == j {
                    j += 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// Steps `(tail, edge index, head)` around a cycle skeleton.
type CycleSteps = Vec<(usize, usize, usize)>;

/// Both traversal directions of a cycle, starting from `nodes[0]`.
fn cycle_directions(sk: &Skeleton) -> Result<(CycleSteps, CycleSteps)> {
    let (nodes, edges) = sk.cycle_order()?;
    let l = nodes.len();
    let forward = (0..l)
        .map(|i| (nodes[i], edges[i], nodes[(i + 1) % l]))
        .collect();
    let backward = (0..l)
        .map(|k| {
            let i = (l - k) % l;
            let j = (i + l - 1) % l;
            (nodes[i], edges[j], nodes[j])
        })
        .collect();
    Ok((forward, backward))
}

/// Smallest rotation over both directions of per-step symbols.
fn min_cycle_order<T: Ord + Clone>(
    forward: &CycleSteps,
    backward: &CycleSteps,
    symbol: impl Fn(&(usize, usize, usize)) -> T,
) -> (CycleSteps, Vec<T>) {
    let rotate = |steps: &CycleSteps| {
        let syms: Vec<T> = steps.iter().map(&symbol).collect();
        let r = least_rotation(&syms);
        let mut s = steps[r..].to_vec();
        s.extend_from_slice(&steps[..r]);
        let mut y = syms[r..].to_vec();
        y.extend_from_slice(&syms[..r]);
        (s, y)
    };
    let f = rotate(forward);
    let b = rotate(backward);
    if b.1 < f.1 {
        b
    } else {
        f
    }
}

/// `(stream)` from items pushed by `fill`.
fn framed(fill: impl FnOnce(&mut CodeBuilder)) -> Code {
    let mut b = CodeBuilder::new();
    b.open();
    fill(&mut b);
    b.close();
    b.finish()
}

fn virtual_flag(sk: &Skeleton, e: usize) -> u64 {
    u64::from(sk.edges[e].is_virtual())
}

/// Smallest ordering of a cycle over both directions and every rotation;
/// each step contributes the label of its tail and whether the edge is
/// virtual.
pub fn s_code(cycle: &Skeleton, labels: &LabelMap) -> Result<Code> {
    Ok(s_order(cycle, labels)?.0)
}

fn s_order(cycle: &Skeleton, labels: &LabelMap) -> Result<(Code, CycleSteps)> {
    let (forward, backward) = cycle_directions(cycle)?;
    for &x in &cycle.nodes {
        labels.get(x)?;
    }
    let (steps, syms) = min_cycle_order(&forward, &backward, |&(tail, e, _)| {
        (labels.get(tail).unwrap().clone(), virtual_flag(cycle, e))
    });
    let code = framed(|b| {
        for (label, flag) in &syms {
            b.code(label).int(*flag);
        }
    });
    Ok((code, steps))
}

/// Sorted endpoint labels, the number of parallel edges, and the sorted
/// virtual flags.
pub fn p_code(dipole: &Skeleton, labels: &LabelMap) -> Result<Code> {
    if !dipole.is_dipole(2) {
        return Err(Error::InvalidSkeleton("skeleton is not a dipole".into()));
    }
    let mut ends = [labels.get(dipole.nodes[0])?, labels.get(dipole.nodes[1])?];
    ends.sort();
    let mut flags: Vec<u64> = (0..dipole.edges.len())
        .map(|e| virtual_flag(dipole, e))
        .collect();
    flags.sort_unstable();
    Ok(framed(|b| {
        b.code(ends[0]).code(ends[1]).int(flags.len() as u64);
        b.open().ints(flags).close();
    }))
}

/// Sorted endpoint labels of a single edge.
pub fn q_code(edge: &Skeleton, labels: &LabelMap) -> Result<Code> {
    if edge.edges.len() != 1 || edge.nodes.len() != 2 {
        return Err(Error::InvalidSkeleton(
            "skeleton is not a single edge".into(),
        ));
    }
    let mut ends = [labels.get(edge.nodes[0])?, labels.get(edge.nodes[1])?];
    ends.sort();
    Ok(framed(|b| {
        b.code(ends[0]).code(ends[1]);
    }))
}

/// Where the virtual edge `edge` sits in the canonical order of `parent`:
/// its 1-based position in the smallest cycle ordering of an S node, the
/// walk step of its first traversal in the smallest walk of an R node, and
/// 0 for P and Q nodes.
pub fn theta(parent: &SpqrNode, labels: &LabelMap, edge: usize) -> Result<u64> {
    let sk = &parent.skeleton;
    if edge >= sk.edges.len() || !sk.edges[edge].is_virtual() {
        return Err(Error::Validation(format!(
            "edge {edge} is not a virtual edge of the node"
        )));
    }
    match parent.kind {
        NodeKind::P | NodeKind::Q => Ok(0),
        NodeKind::S => {
            let (_, steps) = s_order(sk, labels)?;
            let pos = steps.iter().position(|&(_, e, _)| e == edge).unwrap();
            Ok(pos as u64 + 1)
        }
        NodeKind::R => {
            let (_, walk) = tri_code(sk, labels)?;
            let emb = embed_skeleton(sk)?;
            let step = walk
                .darts
                .iter()
                .position(|&d| emb.dart_edge[d] == edge)
                .unwrap();
            Ok(step as u64 + 1)
        }
    }
}

/// Code of a block from its SPQR tree under `labels`: the sorted table of
/// distinct labels followed by the tree code in which nodes appear as
/// ranks in that table.
pub fn bi_code(tree: &SpqrTree, labels: &LabelMap) -> Result<Code> {
    let embeddings = embed_r_nodes(tree)?;
    let mut nodes: Vec<usize> = tree
        .nodes
        .iter()
        .flat_map(|n| n.skeleton.nodes.iter().copied())
        .collect();
    nodes.sort_unstable();
    nodes.dedup();
    let node_labels: Vec<(usize, Code)> = nodes
        .iter()
        .map(|&x| Ok((x, labels.get(x)?.clone())))
        .collect::<Result<_>>()?;
    Ok(block_code(tree, &embeddings, node_labels)?.0)
}

fn embed_r_nodes(tree: &SpqrTree) -> Result<Vec<Option<SkeletonEmbedding>>> {
    tree.nodes
        .iter()
        .map(|n| match n.kind {
            NodeKind::R => embed_skeleton(&n.skeleton).map(Some),
            _ => Ok(None),
        })
        .collect()
}

/// Where canonical coding put things inside one SPQR tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpqrTrace {
    pub root: usize,
    /// `(parent, child, θ)` for every tree edge.
    pub theta: Vec<(usize, usize, u64)>,
    /// Canonical node sequence of every S node (the cycle order) and R
    /// node (the walk ω).
    pub walks: Vec<(usize, Vec<usize>)>,
}

struct NodeResult {
    code: Code,
    /// Pole order of the parent edge that gives `code`.
    dir: (usize, usize),
    symmetric: bool,
    thetas: Vec<(usize, u64)>,
    walk: Option<Vec<usize>>,
}

struct Oriented {
    code: Code,
    thetas: Vec<(usize, u64)>,
    walk: Option<Vec<usize>>,
}

struct TreeCoder<'a> {
    tree: &'a SpqrTree,
    embeddings: &'a [Option<SkeletonEmbedding>],
    rank: &'a HashMap<usize, u64>,
    results: Vec<Option<NodeResult>>,
    /// Per node: index in its skeleton of the edge towards its parent.
    parent_edge: Vec<usize>,
}

impl TreeCoder<'_> {
    fn rank_of(&self, x: usize) -> u64 {
        self.rank[&x]
    }

    fn code_rooted(mut self, root: usize) -> Result<(Code, SpqrTrace)> {
        let n = self.tree.nodes.len();
        let mut order = vec![root];
        let mut parent = vec![NONE; n];
        parent[root] = root;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for e in &self.tree.nodes[x].skeleton.edges {
                if let EdgeKind::Virtual {
                    twin_node,
                    twin_edge,
                } = e.kind
                {
                    if parent[twin_node] == NONE {
                        parent[twin_node] = x;
                        self.parent_edge[twin_node] = twin_edge;
                        order.push(twin_node);
                    }
                }
            }
        }
        let mut trace = SpqrTrace {
            root,
            ..SpqrTrace::default()
        };
        for &x in order.iter().rev() {
            let result = self.code_node(x, x == root)?;
            for &(child, th) in &result.thetas {
                trace.theta.push((x, child, th));
            }
            if let Some(w) = &result.walk {
                trace.walks.push((x, w.clone()));
            }
            self.results[x] = Some(result);
        }
        trace.theta.sort_unstable();
        trace.walks.sort_unstable();
        let code = self.results[root].take().unwrap().code;
        Ok((code, trace))
    }

    /// Children of `x` as `(edge index, child node)`.
    fn children(&self, x: usize) -> Vec<(usize, usize)> {
        let pe = self.parent_edge[x];
        self.tree.nodes[x]
            .skeleton
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match e.kind {
                EdgeKind::Virtual { twin_node, .. } if i != pe => Some((i, twin_node)),
                _ => None,
            })
            .collect()
    }

    fn code_node(&mut self, x: usize, is_root: bool) -> Result<NodeResult> {
        let children = self.children(x);
        let mut distinct: Vec<&Code> = children
            .iter()
            .map(|&(_, c)| &self.results[c].as_ref().unwrap().code)
            .collect();
        distinct.sort();
        distinct.dedup();
        let mut child_rank = HashMap::with_capacity(children.len());
        for &(_, c) in &children {
            let code = &self.results[c].as_ref().unwrap().code;
            child_rank.insert(c, distinct.binary_search(&code).unwrap() as u64);
        }
        let sk = &self.tree.nodes[x].skeleton;
        let pe = self.parent_edge[x];
        let class = |e: usize, tail: usize, head: usize| -> u64 {
            match sk.edges[e].kind {
                EdgeKind::Real => 0,
                _ if e == pe => 1,
                EdgeKind::Virtual { twin_node, .. } => {
                    let child = self.results[twin_node].as_ref().unwrap();
                    let o = if child.symmetric {
                        2
                    } else if child.dir == (tail, head) {
                        0
                    } else {
                        1
                    };
                    2 + 3 * child_rank[&twin_node] + o
                }
            }
        };
        let result = if is_root {
            let o = self.oriented(x, None, &class)?;
            NodeResult {
                code: o.code,
                dir: (NONE, NONE),
                symmetric: true,
                thetas: o.thetas,
                walk: o.walk,
            }
        } else {
            let (s, t) = (sk.edges[pe].u, sk.edges[pe].v);
            let a = self.oriented(x, Some((s, t)), &class)?;
            let b = self.oriented(x, Some((t, s)), &class)?;
            let (symmetric, dir, win) = match a.code.cmp(&b.code) {
                Ordering::Less => (false, (s, t), a),
                Ordering::Greater => (false, (t, s), b),
                Ordering::Equal => (true, (s, t), a),
            };
            NodeResult {
                code: win.code,
                dir,
                symmetric,
                thetas: win.thetas,
                walk: win.walk,
            }
        };
        for &(_, c) in &children {
            self.results[c] = None;
        }
        Ok(result)
    }

    /// Node code with the parent edge traversed in direction `poles`, or
    /// minimized over all starts for the root.
    fn oriented(
        &self,
        x: usize,
        poles: Option<(usize, usize)>,
        class: &dyn Fn(usize, usize, usize) -> u64,
    ) -> Result<Oriented> {
        let node = &self.tree.nodes[x];
        let sk = &node.skeleton;
        let mut thetas: Vec<(usize, u64)> = Vec::new();
        let mut walk = None;
        let stream = match node.kind {
            NodeKind::Q => {
                let mut r = [self.rank_of(sk.nodes[0]), self.rank_of(sk.nodes[1])];
                r.sort_unstable();
                framed(|b| {
                    b.ints(r);
                })
            }
            NodeKind::P => {
                let (s, t) = match poles {
                    Some(p) => p,
                    None => {
                        let (u, v) = (sk.nodes[0], sk.nodes[1]);
                        let fwd = self.p_stream(sk, u, v, class);
                        let bwd = self.p_stream(sk, v, u, class);
                        if bwd < fwd {
                            (v, u)
                        } else {
                            (u, v)
                        }
                    }
                };
                for (e, edge) in sk.edges.iter().enumerate() {
                    if let EdgeKind::Virtual { twin_node, .. } = edge.kind {
                        if e != self.parent_edge[x] {
                            thetas.push((twin_node, 0));
                        }
                    }
                }
                self.p_stream(sk, s, t, class)
            }
            NodeKind::S => {
                let (forward, backward) = cycle_directions(sk)?;
                let steps = match poles {
                    Some((s, _)) => {
                        let pe = self.parent_edge[x];
                        let from = |dir: &CycleSteps| {
                            dir.iter().position(|&(tail, e, _)| e == pe && tail == s)
                        };
                        match from(&forward) {
                            Some(i) => [&forward[i..], &forward[..i]].concat(),
                            None => {
                                let i = from(&backward).unwrap();
                                [&backward[i..], &backward[..i]].concat()
                            }
                        }
                    }
                    None => {
                        min_cycle_order(&forward, &backward, |&(tail, e, head)| {
                            (self.rank_of(tail), class(e, tail, head))
                        })
                        .0
                    }
                };
                for (i, &(_, e, _)) in steps.iter().enumerate() {
                    if let EdgeKind::Virtual { twin_node, .. } = sk.edges[e].kind {
                        if e != self.parent_edge[x] {
                            thetas.push((twin_node, i as u64 + 1));
                        }
                    }
                }
                walk = Some(steps.iter().map(|s| s.0).collect());
                framed(|b| {
                    for &(tail, e, head) in &steps {
                        b.int(self.rank_of(tail)).int(class(e, tail, head));
                    }
                })
            }
            NodeKind::R => {
                let emb = self.embeddings[x].as_ref().expect("R node is embedded");
                let candidates: Vec<(DartId, bool)> = match poles {
                    Some((s, _)) => {
                        let pe = self.parent_edge[x];
                        let d = emb.edge_dart[pe];
                        let d = if sk.nodes[emb.rs.dart(d).tail] == s {
                            d
                        } else {
                            emb.rs.dart(d).reverse
                        };
                        vec![(d, false), (d, true)]
                    }
                    None => all_candidates(&emb.rs),
                };
                let node_tokens = |v: usize, b: &mut CodeBuilder| {
                    b.int(self.rank_of(sk.nodes[v]));
                };
                let dart_tokens = |d: DartId, b: &mut CodeBuilder| {
                    let dart = emb.rs.dart(d);
                    b.int(class(
                        emb.dart_edge[d],
                        sk.nodes[dart.tail],
                        sk.nodes[dart.head],
                    ));
                };
                let (stream, winner) =
                    minimize_walks(&emb.rs, &candidates, &node_tokens, &dart_tokens)?;
                let (start, mirrored) = candidates[winner];
                let w = weinberg_walk_oriented(&emb.rs, start, mirrored)?;
                let mut seen = vec![false; sk.edges.len()];
                for (i, &d) in w.darts.iter().enumerate() {
                    let e = emb.dart_edge[d];
                    if seen[e] {
                        continue;
                    }
                    seen[e] = true;
                    if let EdgeKind::Virtual { twin_node, .. } = sk.edges[e].kind {
                        if e != self.parent_edge[x] {
                            thetas.push((twin_node, i as u64 + 1));
                        }
                    }
                }
                walk = Some(w.omega.iter().map(|&v| sk.nodes[v]).collect());
                crate::weinberg::wrap(&stream)
            }
        };
        let mut kids: Vec<(&Code, u64)> = thetas
            .iter()
            .map(|&(c, th)| (&self.results[c].as_ref().unwrap().code, th))
            .collect();
        kids.sort();
        let mut b = CodeBuilder::new();
        b.open().int(kind_token(node.kind)).code(&stream).open();
        for (code, th) in kids {
            b.open().int(th).code(code).close();
        }
        b.close().close();
        Ok(Oriented {
            code: b.finish(),
            thetas,
            walk,
        })
    }

    fn p_stream(
        &self,
        sk: &Skeleton,
        s: usize,
        t: usize,
        class: &dyn Fn(usize, usize, usize) -> u64,
    ) -> Code {
        let mut classes: Vec<u64> = (0..sk.edges.len()).map(|e| class(e, s, t)).collect();
        classes.sort_unstable();
        framed(|b| {
            b.int(self.rank_of(s)).int(self.rank_of(t)).ints(classes);
        })
    }
}

/// Block code from per-node labels, minimized over the SPQR centroids.
fn block_code(
    tree: &SpqrTree,
    embeddings: &[Option<SkeletonEmbedding>],
    node_labels: Vec<(usize, Code)>,
) -> Result<(Code, SpqrTrace)> {
    let mut table: Vec<&Code> = node_labels.iter().map(|(_, c)| c).collect();
    table.sort();
    table.dedup();
    let rank: HashMap<usize, u64> = node_labels
        .iter()
        .map(|(x, c)| (*x, table.binary_search(&c).unwrap() as u64))
        .collect();
    let mut best: Option<(Code, SpqrTrace)> = None;
    for root in tree.centroids() {
        let coder = TreeCoder {
            tree,
            embeddings,
            rank: &rank,
            results: (0..tree.nodes.len()).map(|_| None).collect(),
            parent_edge: vec![NONE; tree.nodes.len()],
        };
        let (code, trace) = coder.code_rooted(root)?;
        if best.as_ref().is_none_or(|b| code < b.0) {
            best = Some((code, trace));
        }
    }
    let (spqr, trace) = best.expect("a tree has a centroid");
    let mut b = CodeBuilder::new();
    b.open().open();
    for c in table {
        b.code(c);
    }
    b.close().code(&spqr).close();
    Ok((b.finish(), trace))
}

/// One connected component with its decomposition trees.
#[derive(Clone, Debug)]
pub struct ComponentDecomposition {
    /// `original_ids[local] = node id in the input graph`.
    pub original_ids: Vec<usize>,
    pub graph: Graph,
    pub bct: BlockCutTree,
    /// SPQR tree of every block with at least one edge.
    pub spqr: Vec<Option<SpqrTree>>,
    embeddings: Vec<Vec<Option<SkeletonEmbedding>>>,
}

impl ComponentDecomposition {
    pub fn new(graph: Graph, original_ids: Vec<usize>) -> Result<ComponentDecomposition> {
        let bct = block_cut_tree(&graph)?;
        let mut spqr = Vec::with_capacity(bct.blocks.len());
        let mut embeddings = Vec::with_capacity(bct.blocks.len());
        for b in &bct.blocks {
            if b.edges.is_empty() {
                spqr.push(None);
                embeddings.push(Vec::new());
                continue;
            }
            let t = spqr_tree(b)?;
            embeddings.push(embed_r_nodes(&t)?);
            spqr.push(Some(t));
        }
        Ok(ComponentDecomposition {
            original_ids,
            graph,
            bct,
            spqr,
            embeddings,
        })
    }
}

/// Canonical code of one component and the choices that produced it.
#[derive(Clone, Debug)]
pub struct ComponentCanon {
    pub code: Code,
    pub bc_root: TreeNode,
    /// Subtree code of every cut node, by local node id.
    pub cut_codes: BTreeMap<usize, Code>,
    pub block_codes: Vec<Code>,
    pub spqr: Vec<Option<SpqrTrace>>,
}

/// Codes one component, trying every block-cut centroid as root.
pub fn canon_component(d: &ComponentDecomposition) -> Result<ComponentCanon> {
    if d.graph.node_count() == 1 {
        return Ok(ComponentCanon {
            code: leaf_code(d.graph.color(0)),
            bc_root: TreeNode::Block(0),
            cut_codes: BTreeMap::new(),
            block_codes: vec![leaf_code(d.graph.color(0))],
            spqr: vec![None],
        });
    }
    let mut best: Option<ComponentCanon> = None;
    for root in d.bct.centroids() {
        let c = canon_rooted(d, root)?;
        if best.as_ref().is_none_or(|b| c.code < b.code) {
            best = Some(c);
        }
    }
    Ok(best.expect("a tree has a centroid"))
}

fn canon_rooted(d: &ComponentDecomposition, root: TreeNode) -> Result<ComponentCanon> {
    let bct = &d.bct;
    let g = &d.graph;
    let tree_nodes = bct.tree_nodes();
    let adj = bct.adjacency();
    let (order, parent) = tree::bfs_order(&adj, bct.index_of(root));
    let nb = bct.blocks.len();
    let mut cut_codes: BTreeMap<usize, Code> = BTreeMap::new();
    let mut block_codes: Vec<Option<Code>> = vec![None; nb];
    let mut traces: Vec<Option<SpqrTrace>> = vec![None; nb];
    for &i in order.iter().rev() {
        match tree_nodes[i] {
            TreeNode::Block(b) => {
                let block = &bct.blocks[b];
                let parent_cut = parent[i].map(|p| match tree_nodes[p] {
                    TreeNode::Cut(c) => c,
                    TreeNode::Block(_) => unreachable!("block-cut tree is bipartite"),
                });
                let labels: Vec<(usize, Code)> = block
                    .nodes
                    .iter()
                    .map(|&x| {
                        let c = g.color(x);
                        let label = if Some(x) == parent_cut {
                            framed(|b| {
                                b.code(&leaf_code(c));
                            })
                        } else if let Some(code) = cut_codes.get(&x) {
                            code.clone()
                        } else {
                            leaf_code(c)
                        };
                        (x, label)
                    })
                    .collect();
                let tree = d.spqr[b]
                    .as_ref()
                    .expect("component with an edge has no lone-node block");
                let (code, trace) = block_code(tree, &d.embeddings[b], labels)?;
                block_codes[b] = Some(code);
                traces[b] = Some(trace);
            }
            TreeNode::Cut(u) => {
                let mut kids: Vec<&Code> = adj[i]
                    .iter()
                    .filter(|&&j| Some(j) != parent[i])
                    .map(|&j| block_codes[j].as_ref().unwrap())
                    .collect();
                kids.sort();
                let code = framed(|b| {
                    b.code(&leaf_code(g.color(u)));
                    for k in kids {
                        b.code(k);
                    }
                });
                cut_codes.insert(u, code);
            }
        }
    }
    let code = match root {
        TreeNode::Block(b) => block_codes[b].clone().unwrap(),
        TreeNode::Cut(u) => cut_codes[&u].clone(),
    };
    Ok(ComponentCanon {
        code,
        bc_root: root,
        cut_codes,
        block_codes: block_codes.into_iter().map(Option::unwrap).collect(),
        spqr: traces,
    })
}

/// Full canonical data of a graph, component by component in the order of
/// their smallest node id.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub code: Code,
    pub components: Vec<(ComponentDecomposition, ComponentCanon)>,
}

fn check_planar(g: &Graph) -> Result<()> {
    if planarity::is_planar(g) {
        Ok(())
    } else {
        Err(Error::NotPlanar {
            witness: planarity::kuratowski_witness(g),
        })
    }
}

pub fn canonicalize(g: &Graph) -> Result<Canonical> {
    code_components(decompose(g)?)
}

/// Planarity check and decomposition of every component.
pub fn decompose(g: &Graph) -> Result<Vec<ComponentDecomposition>> {
    check_planar(g)?;
    components(g)
        .into_iter()
        .map(|comp| ComponentDecomposition::new(comp.graph, comp.original_ids))
        .collect()
}

/// Codes decomposed components and joins their codes in sorted order.
pub fn code_components(parts: Vec<ComponentDecomposition>) -> Result<Canonical> {
    let parts: Vec<(ComponentDecomposition, ComponentCanon)> = parts
        .into_iter()
        .map(|d| {
            let c = canon_component(&d)?;
            Ok((d, c))
        })
        .collect::<Result<_>>()?;
    let mut codes: Vec<&Code> = parts.iter().map(|(_, c)| &c.code).collect();
    codes.sort();
    let mut b = CodeBuilder::new();
    for c in codes {
        b.code(c);
    }
    Ok(Canonical {
        code: b.finish(),
        components: parts,
    })
}

/// Canonical code: equal for two planar graphs exactly when they are
/// isomorphic (colors included).
pub fn graph_code(g: &Graph) -> Result<Code> {
    Ok(canonicalize(g)?.code)
}

/// Subtree code of every cut node of a connected planar graph, under the
/// rooting chosen by `graph_code`.
pub fn cut_subtree_codes(g: &Graph) -> Result<BTreeMap<usize, Code>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let c = canonicalize(g)?;
    Ok(c.components
        .into_iter()
        .next()
        .map(|(_, c)| c.cut_codes)
        .unwrap_or_default())
}
