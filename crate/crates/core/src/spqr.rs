//! SPQR trees of biconnected blocks.
//!
//! Construction repeatedly splits a working multigraph at separation pairs
//! until every piece is a bond, a simple cycle or a triconnected simple
//! graph, then merges adjacent bonds and adjacent cycles. Every vertex is
//! examined once: a piece produced by a split has no separation pair that
//! its parent piece did not already have, except the split pair itself,
//! and that pair is re-examined right away.

use crate::blockcut::Block;
use crate::error::{Error, Result};
use crate::tree;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    S,
    P,
    Q,
    R,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::S => "S",
            NodeKind::P => "P",
            NodeKind::Q => "Q",
            NodeKind::R => "R",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Real,
    /// Paired with edge `twin_edge` of tree node `twin_node`.
    Virtual {
        twin_node: usize,
        twin_edge: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeletonEdge {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

impl SkeletonEdge {
    pub fn is_virtual(&self) -> bool {
        matches!(self.kind, EdgeKind::Virtual { .. })
    }

    /// The endpoint opposite `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// A multigraph over original node ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    /// Sorted.
    pub nodes: Vec<usize>,
    pub edges: Vec<SkeletonEdge>,
}

impl Skeleton {
    pub fn new(nodes: Vec<usize>, edges: Vec<SkeletonEdge>) -> Skeleton {
        let mut nodes = nodes;
        nodes.sort_unstable();
        nodes.dedup();
        Skeleton { nodes, edges }
    }

    /// Skeleton made only of real edges.
    pub fn from_real_edges(edges: &[(usize, usize)]) -> Skeleton {
        let nodes = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let edges = edges
            .iter()
            .map(|&(u, v)| SkeletonEdge {
                u,
                v,
                kind: EdgeKind::Real,
            })
            .collect();
        Skeleton::new(nodes, edges)
    }

    pub fn index_of(&self, node: usize) -> Option<usize> {
        self.nodes.binary_search(&node).ok()
    }

    /// `adj[i]` lists `(neighbor index, edge index)` for `nodes[i]`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            let (iu, iv) = (self.local(edge.u), self.local(edge.v));
            adj[iu].push((iv, e));
            adj[iv].push((iu, e));
        }
        adj
    }

    fn local(&self, node: usize) -> usize {
        self.index_of(node)
            .expect("edge endpoint is a skeleton node")
    }

    /// Simple cycle of length at least three.
    pub fn is_cycle(&self) -> bool {
        let n = self.nodes.len();
        if n < 3 || self.edges.len() != n {
            return false;
        }
        let adj = self.adjacency();
        if adj.iter().any(|a| a.len() != 2) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// Two nodes joined by at least `min_edges` parallel edges.
    pub fn is_dipole(&self, min_edges: usize) -> bool {
        self.nodes.len() == 2 && self.edges.len() >= min_edges
    }

    pub fn is_simple(&self) -> bool {
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.len() == before && self.edges.iter().all(|e| e.u != e.v)
    }

    /// Cyclic node order of a cycle skeleton together with the edge leading
    /// from each node to the next.
    pub fn cycle_order(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        if !self.is_cycle() {
            return Err(Error::InvalidSkeleton("skeleton is not a cycle".into()));
        }
        let adj = self.adjacency();
        let n = self.nodes.len();
        let mut nodes = Vec::with_capacity(n);
        let mut edges = Vec::with_capacity(n);
        let mut cur = 0;
        let mut via = NONE;
        for _ in 0..n {
            nodes.push(self.nodes[cur]);
            let &(next, e) = adj[cur]
                .iter()
                .find(|&&(_, e)| e != via)
                .expect("cycle node has two edges");
            edges.push(e);
            via = e;
            cur = next;
        }
        Ok((nodes, edges))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpqrNode {
    pub id: usize,
    pub kind: NodeKind,
    pub skeleton: Skeleton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpqrTreeEdge {
    pub parent: usize,
    pub child: usize,
    /// Index of the shared virtual edge in the parent skeleton.
    pub parent_edge: usize,
    /// Index of its twin in the child skeleton.
    pub child_edge: usize,
}

#[derive(Clone, Debug)]
pub struct SpqrTree {
    pub block_id: usize,
    pub nodes: Vec<SpqrNode>,
    /// Oriented away from `root`.
    pub tree_edges: Vec<SpqrTreeEdge>,
    pub root: usize,
}

impl SpqrTree {
    /// Adjacency over tree node ids.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.nodes
            .iter()
            .map(|node| {
                node.skeleton
                    .edges
                    .iter()
                    .filter_map(|e| match e.kind {
                        EdgeKind::Virtual { twin_node, .. } => Some(twin_node),
                        EdgeKind::Real => None,
                    })
                    .collect()
            })
            .collect()
    }

    pub fn centroids(&self) -> Vec<usize> {
        tree::centroids(&self.adjacency())
    }

    /// Re-orients the tree edges away from `root`.
    pub fn reroot(&mut self, root: usize) {
        self.root = root;
        self.tree_edges.clear();
        let mut stack = vec![(root, NONE)];
        while let Some((x, parent)) = stack.pop() {
            for (i, e) in self.nodes[x].skeleton.edges.iter().enumerate() {
                if let EdgeKind::Virtual {
                    twin_node,
                    twin_edge,
                } = e.kind
                {
                    if twin_node == parent {
                        continue;
                    }
                    self.tree_edges.push(SpqrTreeEdge {
                        parent: x,
                        child: twin_node,
                        parent_edge: i,
                        child_edge: twin_edge,
                    });
                    stack.push((twin_node, x));
                }
            }
        }
        self.tree_edges
            .sort_unstable_by_key(|e| (e.parent, e.child, e.parent_edge));
    }

    /// Nodes whose skeleton contains `u`.
    pub fn nodes_containing(&self, u: usize) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| n.skeleton.index_of(u).is_some())
            .map(|n| n.id)
            .collect()
    }

    pub fn total_skeleton_nodes(&self) -> usize {
        self.nodes.iter().map(|n| n.skeleton.nodes.len()).sum()
    }
}

/// Builds the SPQR tree of a biconnected block or of a single-edge block,
/// rooted at its first centroid.
pub fn spqr_tree(b: &Block) -> Result<SpqrTree> {
    if b.edges.is_empty() {
        return Err(Error::Validation(
            "SPQR tree of a block without edges".into(),
        ));
    }
    let nodes = &b.nodes;
    let local = |x: usize| -> Result<usize> {
        nodes
            .binary_search(&x)
            .map_err(|_| Error::Validation(format!("edge endpoint {x} is not a block node")))
    };
    let mut builder = Builder::new(nodes.len());
    let mut initial = Vec::with_capacity(b.edges.len());
    for &(u, v) in &b.edges {
        initial.push(builder.new_edge(local(u)?, local(v)?, NONE));
    }
    let first = builder.add_piece(initial);
    if b.edges.len() > 1 {
        builder.load(first);
        if builder.verts[first].len() < 3
            || !is_connected_without(&builder.csr, NONE)
            || articulation_point(&builder.csr, NONE, &mut builder.scratch).is_some()
        {
            return Err(Error::NotBiconnected);
        }
        for a in 0..nodes.len() {
            // a split keeps the largest class under the old id, so the
            // same piece is checked again until it no longer splits at a
            let mut i = 0;
            while i < builder.pieces_of[a].len() {
                let p = builder.pieces_of[a][i];
                if builder.verts[p].binary_search(&a).is_err() || !builder.try_split(p, a) {
                    i += 1;
                }
            }
        }
    }
    let mut tree = builder.finish(nodes)?;
    tree.block_id = b.id;
    let root = tree.centroids()[0];
    tree.reroot(root);
    Ok(tree)
}

/// Reassembles the block by gluing every virtual edge to its twin.
pub fn glue(tree: &SpqrTree) -> Result<Block> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (x, node) in tree.nodes.iter().enumerate() {
        nodes.extend_from_slice(&node.skeleton.nodes);
        for (i, e) in node.skeleton.edges.iter().enumerate() {
            match e.kind {
                EdgeKind::Real => edges.push((e.u.min(e.v), e.u.max(e.v))),
                EdgeKind::Virtual {
                    twin_node,
                    twin_edge,
                } => {
                    let twin = tree
                        .nodes
                        .get(twin_node)
                        .and_then(|n| n.skeleton.edges.get(twin_edge))
                        .ok_or_else(|| {
                            Error::Integrity(format!("dangling virtual edge {i} in node {x}"))
                        })?;
                    let back = EdgeKind::Virtual {
                        twin_node: x,
                        twin_edge: i,
                    };
                    let same_pair =
                        (twin.u, twin.v) == (e.u, e.v) || (twin.u, twin.v) == (e.v, e.u);
                    if twin.kind != back || !same_pair || twin_node == x {
                        return Err(Error::Integrity(format!(
                            "virtual edge {i} in node {x} has no matching twin"
                        )));
                    }
                }
            }
        }
    }
    nodes.sort_unstable();
    nodes.dedup();
    edges.sort_unstable();
    let before = edges.len();
    edges.dedup();
    if edges.len() != before {
        return Err(Error::Integrity("real edge owned by two skeletons".into()));
    }
    Ok(Block {
        id: tree.block_id,
        nodes,
        edges,
    })
}

struct Builder {
    eu: Vec<usize>,
    ev: Vec<usize>,
    twin: Vec<usize>,
    owner: Vec<usize>,
    pieces: Vec<Vec<usize>>,
    verts: Vec<Vec<usize>>,
    /// Pieces that contained the node at some point; may be stale.
    pieces_of: Vec<Vec<usize>>,
    pos: Vec<usize>,
    /// Piece whose adjacency is in `csr`; `pos` is valid for its vertices.
    loaded: usize,
    csr: Csr,
    scratch: Scratch,
}

/// Multigraph adjacency in compressed rows of `(neighbor, edge id)`.
#[derive(Default)]
struct Csr {
    off: Vec<usize>,
    adj: Vec<(usize, usize)>,
}

impl Csr {
    fn len(&self) -> usize {
        self.off.len().saturating_sub(1)
    }

    fn row(&self, x: usize) -> &[(usize, usize)] {
        &self.adj[self.off[x]..self.off[x + 1]]
    }
}

#[derive(Default)]
struct Scratch {
    disc: Vec<usize>,
    low: Vec<usize>,
    frames: Vec<(usize, usize, usize)>,
}

impl Builder {
    fn new(n: usize) -> Builder {
        Builder {
            eu: Vec::new(),
            ev: Vec::new(),
            twin: Vec::new(),
            owner: Vec::new(),
            pieces: Vec::new(),
            verts: Vec::new(),
            pieces_of: vec![Vec::new(); n],
            pos: vec![NONE; n],
            loaded: NONE,
            csr: Csr::default(),
            scratch: Scratch::default(),
        }
    }

    fn new_edge(&mut self, u: usize, v: usize, twin: usize) -> usize {
        self.eu.push(u);
        self.ev.push(v);
        self.twin.push(twin);
        self.owner.push(NONE);
        self.eu.len() - 1
    }

    fn virtual_pair(&mut self, a: usize, b: usize) -> (usize, usize) {
        let x = self.new_edge(a, b, NONE);
        let y = self.new_edge(a, b, x);
        self.twin[x] = y;
        (x, y)
    }

    fn add_piece(&mut self, edges: Vec<usize>) -> usize {
        let id = self.pieces.len();
        self.pieces.push(Vec::new());
        self.verts.push(Vec::new());
        self.set_piece(id, edges);
        for i in 0..self.verts[id].len() {
            let v = self.verts[id][i];
            self.pieces_of[v].push(id);
        }
        id
    }

    /// Replaces the edges of piece `p`. Its node set may only shrink, so
    /// `pieces_of` needs no new entries.
    fn set_piece(&mut self, p: usize, edges: Vec<usize>) {
        let mut vs: Vec<usize> = edges
            .iter()
            .flat_map(|&e| [self.eu[e], self.ev[e]])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        for &e in &edges {
            self.owner[e] = p;
        }
        self.pieces[p] = edges;
        self.verts[p] = vs;
        if self.loaded == p {
            self.loaded = NONE;
        }
    }

    /// Loads the adjacency of piece `p` over indices into `verts[p]`, with
    /// arena edge ids, and points `pos` at those indices.
    fn load(&mut self, p: usize) {
        if self.loaded == p {
            return;
        }
        self.loaded = p;
        let nv = self.verts[p].len();
        for (i, &v) in self.verts[p].iter().enumerate() {
            self.pos[v] = i;
        }
        let off = &mut self.csr.off;
        off.clear();
        off.resize(nv + 1, 0);
        for &e in &self.pieces[p] {
            off[self.pos[self.eu[e]] + 1] += 1;
            off[self.pos[self.ev[e]] + 1] += 1;
        }
        for i in 0..nv {
            off[i + 1] += off[i];
        }
        let mut fill = off[..nv].to_vec();
        self.csr.adj.clear();
        self.csr.adj.resize(off[nv], (0, 0));
        for &e in &self.pieces[p] {
            let (iu, iv) = (self.pos[self.eu[e]], self.pos[self.ev[e]]);
            self.csr.adj[fill[iu]] = (iv, e);
            fill[iu] += 1;
            self.csr.adj[fill[iv]] = (iu, e);
            fill[iv] += 1;
        }
    }

    fn try_split(&mut self, p: usize, a: usize) -> bool {
        let nv = self.verts[p].len();
        if nv <= 2 || self.pieces[p].len() == nv {
            // bond or simple cycle
            return false;
        }
        self.load(p);
        let ia = self.pos[a];
        let mut nbrs: Vec<usize> = self.csr.row(ia).iter().map(|&(w, _)| w).collect();
        nbrs.sort_unstable();
        let partner = nbrs
            .windows(2)
            .find(|w| w[0] == w[1])
            .map(|w| w[0])
            .or_else(|| articulation_point(&self.csr, ia, &mut self.scratch));
        match partner {
            Some(ib) => {
                self.split(p, ia, ib);
                true
            }
            None => false,
        }
    }

    fn split(&mut self, p: usize, ia: usize, ib: usize) {
        let adj = &self.csr;
        let nv = adj.len();
        let mut comp = vec![NONE; nv];
        let mut k = 0;
        for s in 0..nv {
            if s == ia || s == ib || comp[s] != NONE {
                continue;
            }
            comp[s] = k;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in adj.row(x) {
                    if y != ia && y != ib && comp[y] == NONE {
                        comp[y] = k;
                        stack.push(y);
                    }
                }
            }
            k += 1;
        }
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut direct = Vec::new();
        for &e in &self.pieces[p] {
            let (iu, iv) = (self.pos[self.eu[e]], self.pos[self.ev[e]]);
            if comp[iu] != NONE {
                classes[comp[iu]].push(e);
            } else if comp[iv] != NONE {
                classes[comp[iv]].push(e);
            } else {
                direct.push(e);
            }
        }
        let (a, b) = (self.verts[p][ia], self.verts[p][ib]);
        // the largest class stays in piece p
        let big = (0..k)
            .max_by_key(|&c| classes[c].len())
            .expect("a split pair separates");
        if k == 2 && direct.is_empty() {
            let (x, y) = self.virtual_pair(a, b);
            let mut other = std::mem::take(&mut classes[1 - big]);
            let mut kept = std::mem::take(&mut classes[big]);
            kept.push(x);
            other.push(y);
            self.set_piece(p, kept);
            self.add_piece(other);
            return;
        }
        debug_assert!(k + direct.len() >= 3);
        let mut bond = direct;
        for (c, mut class) in classes.into_iter().enumerate() {
            let (x, y) = self.virtual_pair(a, b);
            class.push(x);
            bond.push(y);
            if c == big {
                self.set_piece(p, class);
            } else {
                self.add_piece(class);
            }
        }
        self.add_piece(bond);
    }

    fn finish(mut self, nodes: &[usize]) -> Result<SpqrTree> {
        let np = self.pieces.len();
        let kind: Vec<NodeKind> = (0..np)
            .map(|p| {
                let (nv, ne) = (self.verts[p].len(), self.pieces[p].len());
                if nv == 2 && ne == 1 {
                    NodeKind::Q
                } else if nv == 2 {
                    NodeKind::P
                } else if ne == nv {
                    NodeKind::S
                } else {
                    NodeKind::R
                }
            })
            .collect();
        let mut uf: Vec<usize> = (0..np).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut dropped = vec![false; self.eu.len()];
        for e in 0..self.eu.len() {
            let t = self.twin[e];
            if t == NONE || e > t {
                continue;
            }
            let (p, q) = (self.owner[e], self.owner[t]);
            if kind[p] == kind[q] && matches!(kind[p], NodeKind::S | NodeKind::P) {
                dropped[e] = true;
                dropped[t] = true;
                let (rp, rq) = (find(&mut uf, p), find(&mut uf, q));
                uf[rq] = rp;
            }
        }
        let mut group_of = vec![NONE; np];
        let mut groups: Vec<(NodeKind, Vec<usize>)> = Vec::new();
        for (p, &k) in kind.iter().enumerate() {
            let r = find(&mut uf, p);
            if group_of[r] == NONE {
                group_of[r] = groups.len();
                groups.push((k, Vec::new()));
            }
            let g = group_of[r];
            let edges = std::mem::take(&mut self.pieces[p]);
            groups[g]
                .1
                .extend(edges.into_iter().filter(|&e| !dropped[e]));
        }
        let mut slot = vec![(NONE, NONE); self.eu.len()];
        for (g, (_, edges)) in groups.iter().enumerate() {
            for (i, &e) in edges.iter().enumerate() {
                slot[e] = (g, i);
            }
        }
        let mut tree_nodes = Vec::with_capacity(groups.len());
        for (g, (kind, edges)) in groups.into_iter().enumerate() {
            let sk_edges: Vec<SkeletonEdge> = edges
                .iter()
                .map(|&e| {
                    let kind = if self.twin[e] == NONE {
                        EdgeKind::Real
                    } else {
                        let (twin_node, twin_edge) = slot[self.twin[e]];
                        EdgeKind::Virtual {
                            twin_node,
                            twin_edge,
                        }
                    };
                    SkeletonEdge {
                        u: nodes[self.eu[e]],
                        v: nodes[self.ev[e]],
                        kind,
                    }
                })
                .collect();
            let sk_nodes = sk_edges.iter().flat_map(|e| [e.u, e.v]).collect();
            let skeleton = Skeleton::new(sk_nodes, sk_edges);
            if kind == NodeKind::P && skeleton.edges.len() < 3 {
                return Err(Error::InvalidSkeleton(format!(
                    "P node with {} edges",
                    skeleton.edges.len()
                )));
            }
            tree_nodes.push(SpqrNode {
                id: g,
                kind,
                skeleton,
            });
        }
        Ok(SpqrTree {
            block_id: 0,
            nodes: tree_nodes,
            tree_edges: Vec::new(),
            root: 0,
        })
    }
}

fn is_connected_without(adj: &Csr, skip: usize) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|&x| x != skip) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &(y, _) in adj.row(x) {
            if y != skip && !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n - usize::from(skip != NONE)
}

/// Some articulation point of the multigraph `adj` with node `skip`
/// removed, assumed connected.
fn articulation_point(adj: &Csr, skip: usize, scratch: &mut Scratch) -> Option<usize> {
    let n = adj.len();
    let root = (0..n).find(|&x| x != skip)?;
    let Scratch { disc, low, frames } = scratch;
    disc.clear();
    disc.resize(n, NONE);
    low.clear();
    low.resize(n, 0);
    let mut time = 0;
    disc[root] = 0;
    time += 1;
    let mut root_children = 0;
    // (node, edge used to enter, next adjacency index)
    frames.clear();
    frames.push((root, NONE, 0usize));
    while let Some(frame) = frames.last_mut() {
        let (x, via, i) = *frame;
        let row = adj.row(x);
        if i < row.len() {
            frame.2 += 1;
            let (y, e) = row[i];
            if y == skip || e == via {
                continue;
            }
            if disc[y] == NONE {
                disc[y] = time;
                low[y] = time;
                time += 1;
                if x == root {
                    root_children += 1;
                }
                frames.push((y, e, 0));
            } else {
                low[x] = low[x].min(disc[y]);
            }
        } else {
            frames.pop();
            if let Some(&(p, _, _)) = frames.last() {
                low[p] = low[p].min(low[x]);
                if p != root && low[x] >= disc[p] {
                    return Some(p);
                }
            }
        }
    }
    if root_children >= 2 {
        Some(root)
    } else {
        None
    }
}
