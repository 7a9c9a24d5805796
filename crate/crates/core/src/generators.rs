//! Seeded graph generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::graph_code;
use crate::error::{Error, Result};
use crate::graph::{apply_permutation, Graph, Permutation};
use crate::iso::brute_force_isomorphic;
use crate::planarity::planar_neighbor_orders;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    P3r,
    RandomPlanar,
    RandomTree,
    Scramble,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    /// Target edge count, used by `RandomPlanar`.
    pub m: usize,
    pub seed: u64,
    pub count: usize,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 && self.kind != GenKind::P3r {
            return Err(Error::Spec("n must be at least 1".into()));
        }
        if self.kind == GenKind::RandomPlanar {
            let max = max_planar_edges(self.n);
            if self.m > max {
                return Err(Error::Spec(format!(
                    "m = {} exceeds {max}, the most edges a simple planar graph on {} nodes can have",
                    self.m, self.n
                )));
            }
            if self.m + 1 < self.n {
                return Err(Error::Spec(format!(
                    "m = {} is too small for a connected graph on {} nodes",
                    self.m, self.n
                )));
            }
        }
        Ok(())
    }
}

fn max_planar_edges(n: usize) -> usize {
    if n >= 3 {
        3 * n - 6
    } else {
        n.saturating_sub(1)
    }
}

/// Generator for graph `index` of a multi-graph request.
fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Runs the generator named by `spec`. `Scramble` needs an input graph and
/// is rejected here.
pub fn generate(spec: &GenSpec) -> Result<Vec<Graph>> {
    spec.validate()?;
    match spec.kind {
        GenKind::P3r => gen_p3r(),
        GenKind::RandomPlanar => gen_random_planar(spec),
        GenKind::RandomTree => Ok((0..spec.count)
            .map(|i| random_tree(spec.n, &mut rng_for(spec.seed, i)))
            .collect()),
        GenKind::Scramble => Err(Error::Spec("scramble takes an input graph".into())),
    }
}

/// All connected cubic planar graphs on 10 nodes, one per isomorphism
/// class, sorted by canonical code.
pub fn gen_p3r() -> Result<Vec<Graph>> {
    const N: usize = 10;
    let mut found: Vec<Graph> = Vec::new();
    let mut adj = vec![Vec::new(); N];
    // node 0 is adjacent to 1, 2, 3 in every class up to relabeling
    for v in 1..=3 {
        adj[0].push(v);
        adj[v].push(0);
    }
    cubic_search(&mut adj, &mut found);
    let mut coded: Vec<(crate::code::Code, Graph)> = found
        .into_iter()
        .map(|g| Ok((graph_code(&g)?, g)))
        .collect::<Result<_>>()?;
    coded.sort_by(|a, b| a.0.cmp(&b.0));
    let mut reps: Vec<(crate::code::Code, Graph)> = Vec::new();
    for (code, g) in coded {
        match reps.last() {
            Some((c, rep)) if *c == code => {
                if !brute_force_isomorphic(rep, &g)? {
                    return Err(Error::Integrity(
                        "equal codes on non-isomorphic cubic graphs".into(),
                    ));
                }
            }
            _ => reps.push((code, g)),
        }
    }
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if brute_force_isomorphic(&reps[i].1, &reps[j].1)? {
                return Err(Error::Integrity(
                    "distinct codes on isomorphic cubic graphs".into(),
                ));
            }
        }
    }
    Ok(reps.into_iter().map(|(_, g)| g).collect())
}

fn edges_of(adj: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (u, nb) in adj.iter().enumerate() {
        for &v in nb {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Saturates the lowest unsaturated node first. Untouched nodes are
/// interchangeable, so only the smallest one is tried as a new neighbor.
fn cubic_search(adj: &mut Vec<Vec<usize>>, found: &mut Vec<Graph>) {
    let n = adj.len();
    let Some(v) = (0..n).find(|&u| adj[u].len() < 3) else {
        let g = Graph::uncolored(n, edges_of(adj)).expect("simple by construction");
        if g.is_connected() && planar_neighbor_orders(n, g.edges()).is_some() {
            found.push(g);
        }
        return;
    };
    let mut fresh_tried = false;
    for w in v + 1..n {
        if adj[w].len() >= 3 || adj[v].contains(&w) {
            continue;
        }
        if adj[w].is_empty() {
            if fresh_tried {
                continue;
            }
            fresh_tried = true;
        }
        adj[v].push(w);
        adj[w].push(v);
        if planar_neighbor_orders(n, &edges_of(adj)).is_some() {
            cubic_search(adj, found);
        }
        adj[v].pop();
        adj[w].pop();
    }
}

/// Connected planar graphs: a random spanning tree plus edges drawn inside
/// faces of the current embedding, so every step stays planar.
pub fn gen_random_planar(spec: &GenSpec) -> Result<Vec<Graph>> {
    spec.validate()?;
    Ok((0..spec.count)
        .map(|i| random_planar(spec.n, spec.m, &mut rng_for(spec.seed, i)))
        .collect())
}

/// Planar embedding under construction: dart `2e` runs `u -> v` of edge
/// `e`, dart `2e + 1` the other way.
struct GrowingEmbedding {
    tail: Vec<usize>,
    succ: Vec<usize>,
    pred: Vec<usize>,
    first: Vec<usize>,
}

impl GrowingEmbedding {
    fn new(n: usize) -> GrowingEmbedding {
        GrowingEmbedding {
            tail: Vec::new(),
            succ: Vec::new(),
            pred: Vec::new(),
            first: vec![usize::MAX; n],
        }
    }

    /// Places the new dart `d` at `x` right after `after`, or alone.
    fn place(&mut self, d: usize, x: usize, after: Option<usize>) {
        match after {
            None => {
                self.succ[d] = d;
                self.pred[d] = d;
                self.first[x] = d;
            }
            Some(a) => {
                let b = self.succ[a];
                self.succ[a] = d;
                self.pred[d] = a;
                self.succ[d] = b;
                self.pred[b] = d;
            }
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, after_u: Option<usize>, after_v: Option<usize>) {
        let d = self.tail.len();
        self.tail.extend([u, v]);
        self.succ.extend([0, 0]);
        self.pred.extend([0, 0]);
        self.place(d, u, after_u);
        self.place(d + 1, v, after_v);
    }

    fn around(&self, x: usize) -> Option<usize> {
        let f = self.first[x];
        (f != usize::MAX).then_some(f)
    }

    fn face_next(&self, d: usize) -> usize {
        self.succ[d ^ 1]
    }
}

fn random_planar(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut emb = GrowingEmbedding::new(n);
    let mut present: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (after_j, after_i) = (emb.around(j), emb.around(i));
        emb.add_edge(j, i, after_j, after_i);
        present.insert((j, i));
        edges.push((j, i));
    }
    let budget = 10 * m;
    let mut attempts = 0;
    while edges.len() < m && attempts < budget {
        attempts += 1;
        let d1 = rng.gen_range(0..emb.tail.len());
        let steps = rng.gen_range(2..=8);
        let mut d2 = d1;
        for _ in 0..steps {
            d2 = emb.face_next(d2);
        }
        let (u, v) = (emb.tail[d1], emb.tail[d2]);
        let key = (u.min(v), u.max(v));
        if u == v || present.contains(&key) {
            continue;
        }
        let (a1, a2) = (emb.pred[d1], emb.pred[d2]);
        emb.add_edge(u, v, Some(a1), Some(a2));
        present.insert(key);
        edges.push(key);
    }
    let g = Graph::uncolored(n, edges).expect("simple by construction");
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    apply_permutation(&g, &Permutation::new(p).expect("shuffle is a bijection"))
        .expect("lengths match")
}

/// A random recursive tree, relabeled uniformly.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Spec("n must be at least 1".into()));
    }
    Ok(random_tree(n, &mut rng_for(seed, 0)))
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    let edges = (1..n)
        .map(|i| {
            let j = rng.gen_range(0..i);
            (p[i].min(p[j]), p[i].max(p[j]))
        })
        .collect();
    Graph::uncolored(n, edges).expect("tree edges are simple")
}

/// Applies a seeded uniform permutation and returns it with the result.
pub fn scramble(g: &Graph, seed: u64) -> (Graph, Permutation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..g.node_count()).collect();
    p.shuffle(&mut rng);
    let p = Permutation::new(p).expect("shuffle is a bijection");
    let h = apply_permutation(g, &p).expect("lengths match");
    (h, p)
}
