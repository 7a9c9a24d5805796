//! Left-right planarity test with embedding extraction.
//!
//! Three DFS passes over an edge-indexed graph: orientation with lowpoints
//! and nesting depths, the constraint-stack test, and the embedding pass
//! that turns edge sides into cyclic neighbor orders. All passes run on
//! explicit stacks so deep graphs do not exhaust the call stack.

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'a> {
    adj: &'a [Vec<(usize, usize)>],
    src: Vec<usize>,
    dst: Vec<usize>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    out_adj: Vec<Vec<usize>>,
    roots: Vec<usize>,
    reference: Vec<usize>,
    side: Vec<i8>,
    lowpt_edge: Vec<usize>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

/// Runs the test on a graph given as `adj[v] = [(neighbor, edge id)]` with
/// `edge_count` undirected simple edges. Returns the clockwise neighbor
/// order of every node when the graph is planar.
pub(crate) fn planar_rotations(
    adj: &[Vec<(usize, usize)>],
    edge_count: usize,
) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    if n > 2 && edge_count > 3 * n - 6 {
        return None;
    }
    let mut st = LrState {
        adj,
        src: vec![NONE; edge_count],
        dst: vec![NONE; edge_count],
        height: vec![NONE; n],
        parent_edge: vec![NONE; n],
        lowpt: vec![0; edge_count],
        lowpt2: vec![0; edge_count],
        nesting_depth: vec![0; edge_count],
        out_adj: vec![Vec::new(); n],
        roots: Vec::new(),
        reference: vec![NONE; edge_count],
        side: vec![1; edge_count],
        lowpt_edge: vec![NONE; edge_count],
        stack_bottom: vec![0; edge_count],
        stack: Vec::new(),
    };
    st.orient();
    for v in 0..n {
        let depth = &st.nesting_depth;
        st.out_adj[v].sort_by_key(|&e| depth[e]);
    }
    let roots = st.roots.clone();
    for root in roots {
        if !st.test(root) {
            return None;
        }
    }
    for e in 0..edge_count {
        let s = st.sign(e) as i64;
        st.nesting_depth[e] *= s;
    }
    for v in 0..n {
        let depth = &st.nesting_depth;
        st.out_adj[v].sort_by_key(|&e| depth[e]);
    }
    Some(st.embed())
}

impl LrState<'_> {
    fn orient(&mut self) {
        let n = self.adj.len();
        let mut oriented = vec![false; self.src.len()];
        let mut frames: Vec<(usize, usize)> = Vec::new();
        for root in 0..n {
            if self.height[root] != NONE {
                continue;
            }
            self.height[root] = 0;
            self.roots.push(root);
            frames.push((root, 0));
            while let Some(&(v, i)) = frames.last() {
                if i < self.adj[v].len() {
                    let (w, e) = self.adj[v][i];
                    if oriented[e] {
                        frames.last_mut().unwrap().1 += 1;
                        continue;
                    }
                    oriented[e] = true;
                    self.src[e] = v;
                    self.dst[e] = w;
                    self.out_adj[v].push(e);
                    self.lowpt[e] = self.height[v];
                    self.lowpt2[e] = self.height[v];
                    if self.height[w] == NONE {
                        self.parent_edge[w] = e;
                        self.height[w] = self.height[v] + 1;
                        frames.push((w, 0));
                    } else {
                        self.lowpt[e] = self.height[w];
                        self.finish_edge(v, e);
                        frames.last_mut().unwrap().1 += 1;
                    }
                } else {
                    frames.pop();
                    if let Some(frame) = frames.last_mut() {
                        let e = self.parent_edge[v];
                        let p = frame.0;
                        frame.1 += 1;
                        self.finish_edge(p, e);
                    }
                }
            }
        }
    }

    /// Nesting depth of `vw` and lowpoint propagation into the parent edge
    /// of `v`.
    fn finish_edge(&mut self, v: usize, vw: usize) {
        self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
        if self.lowpt2[vw] < self.height[v] {
            self.nesting_depth[vw] += 1;
        }
        let e = self.parent_edge[v];
        if e == NONE {
            return;
        }
        if self.lowpt[vw] < self.lowpt[e] {
            self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
            self.lowpt[e] = self.lowpt[vw];
        } else if self.lowpt[vw] > self.lowpt[e] {
            self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
        } else {
            self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
        }
    }

    fn test(&mut self, root: usize) -> bool {
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&(v, i)) = frames.last() {
            if i < self.out_adj[v].len() {
                let ei = self.out_adj[v][i];
                let w = self.dst[ei];
                self.stack_bottom[ei] = self.stack.len();
                if ei == self.parent_edge[w] {
                    frames.push((w, 0));
                    continue;
                }
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::EMPTY,
                    right: Interval { low: ei, high: ei },
                });
                if !self.integrate(v, i, ei) {
                    return false;
                }
                frames.last_mut().unwrap().1 += 1;
            } else {
                let e = self.parent_edge[v];
                if e != NONE {
                    self.remove_back_edges(e);
                }
                frames.pop();
                if let Some(&(p, pi)) = frames.last() {
                    let ei = self.out_adj[p][pi];
                    if !self.integrate(p, pi, ei) {
                        return false;
                    }
                    frames.last_mut().unwrap().1 += 1;
                }
            }
        }
        true
    }

    fn integrate(&mut self, v: usize, i: usize, ei: usize) -> bool {
        if self.lowpt[ei] < self.height[v] {
            let e = self.parent_edge[v];
            if i == 0 {
                self.lowpt_edge[e] = self.lowpt_edge[ei];
            } else if !self.add_constraints(ei, e) {
                return false;
            }
        }
        true
    }

    fn conflicting(&self, interval: &Interval, b: usize) -> bool {
        !interval.is_empty() && self.lowpt[interval.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn set_ref(&mut self, e: usize, target: usize) {
        if e != NONE {
            self.reference[e] = target;
        }
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        // merge return edges of ei into p.right
        while let Some(mut q) = self.stack.pop() {
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.set_ref(q.right.low, self.lowpt_edge[e]);
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if p.left.low != NONE {
                self.side[p.left.low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.reference[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.reference[p.left.low] = p.right.low;
                self.side[p.left.low] = -1;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.reference[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.reference[p.right.low] = p.left.low;
                self.side[p.right.low] = -1;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                    self.reference[e] = hl;
                } else {
                    self.reference[e] = hr;
                }
            }
        }
    }

    /// Resolves the side of `e` along its reference chain.
    fn sign(&mut self, e: usize) -> i8 {
        let mut chain = vec![e];
        let mut cur = e;
        while self.reference[cur] != NONE {
            cur = self.reference[cur];
            chain.push(cur);
        }
        let mut s = self.side[cur];
        for &x in chain.iter().rev().skip(1) {
            self.side[x] *= s;
            self.reference[x] = NONE;
            s = self.side[x];
        }
        self.side[e]
    }

    fn embed(&mut self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let darts = 2 * self.src.len();
        let mut emb = DartRing {
            cw: vec![NONE; darts],
            ccw: vec![NONE; darts],
            first: vec![NONE; n],
        };
        // dart 2e runs src -> dst, dart 2e + 1 runs dst -> src
        for v in 0..n {
            let mut prev = NONE;
            for &e in &self.out_adj[v] {
                emb.insert_cw(v, 2 * e, prev);
                prev = 2 * e;
            }
        }
        let mut left_ref = vec![NONE; n];
        let mut right_ref = vec![NONE; n];
        let roots = self.roots.clone();
        for root in roots {
            let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&(v, i)) = frames.last() {
                if i >= self.out_adj[v].len() {
                    frames.pop();
                    continue;
                }
                frames.last_mut().unwrap().1 += 1;
                let ei = self.out_adj[v][i];
                let w = self.dst[ei];
                if ei == self.parent_edge[w] {
                    emb.insert_first(w, 2 * ei + 1);
                    left_ref[v] = 2 * ei;
                    right_ref[v] = 2 * ei;
                    frames.push((w, 0));
                } else if self.side[ei] == 1 {
                    emb.insert_cw(w, 2 * ei + 1, right_ref[w]);
                } else {
                    emb.insert_ccw(w, 2 * ei + 1, left_ref[w]);
                    left_ref[w] = 2 * ei + 1;
                }
            }
        }
        let head = |d: usize| -> usize {
            let e = d / 2;
            if d.is_multiple_of(2) {
                self.dst[e]
            } else {
                self.src[e]
            }
        };
        (0..n)
            .map(|v| {
                let mut order = Vec::new();
                let start = emb.first[v];
                if start == NONE {
                    return order;
                }
                let mut d = start;
                loop {
                    order.push(head(d));
                    d = emb.cw[d];
                    if d == start {
                        break;
                    }
                }
                order
            })
            .collect()
    }
}

/// Circular clockwise dart lists, one per node.
struct DartRing {
    cw: Vec<usize>,
    ccw: Vec<usize>,
    first: Vec<usize>,
}

impl DartRing {
    fn insert_cw(&mut self, v: usize, d: usize, reference: usize) {
        if reference == NONE {
            debug_assert_eq!(self.first[v], NONE);
            self.cw[d] = d;
            self.ccw[d] = d;
            self.first[v] = d;
            return;
        }
        let next = self.cw[reference];
        self.cw[reference] = d;
        self.cw[d] = next;
        self.ccw[next] = d;
        self.ccw[d] = reference;
    }

    fn insert_ccw(&mut self, v: usize, d: usize, reference: usize) {
        if reference == NONE {
            self.insert_cw(v, d, NONE);
            return;
        }
        let prev = self.ccw[reference];
        self.insert_cw(v, d, prev);
        if reference == self.first[v] {
            self.first[v] = d;
        }
    }

    fn insert_first(&mut self, v: usize, d: usize) {
        let reference = self.first[v];
        self.insert_ccw(v, d, reference);
    }
}
