//! Weinberg's walk over an embedded triconnected skeleton, the first-visit
//! sequence κ, and TriCode.

use crate::code::{Code, CodeBuilder, LabelMap};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::{self, DartId, RotationSystem};
use crate::spqr::Skeleton;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    /// Visited nodes, `2|E| + 1` of them.
    pub omega: Vec<usize>,
    pub kappa: Vec<usize>,
    /// Darts in traversal order; `darts[i]` leaves `omega[i]`.
    pub darts: Vec<DartId>,
    pub start_dart: DartId,
    pub mirrored: bool,
}

/// First-visit numbering, starting at 1.
pub fn kappa_of(omega: &[usize]) -> Vec<usize> {
    let mut first: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    omega
        .iter()
        .map(|&x| {
            let next = first.len() + 1;
            *first.entry(x).or_insert(next)
        })
        .collect()
}

pub fn weinberg_walk(rs: &RotationSystem, start: DartId) -> Result<Walk> {
    weinberg_walk_oriented(rs, start, false)
}

/// Walk from `start`; `mirrored` turns through rotations in reverse, which
/// is the same walk on the mirror embedding.
pub fn weinberg_walk_oriented(rs: &RotationSystem, start: DartId, mirrored: bool) -> Result<Walk> {
    if start >= rs.dart_count() {
        return Err(Error::Validation(format!("dart {start} out of range")));
    }
    let mut state = WalkState::new(rs);
    let mut omega = Vec::with_capacity(rs.dart_count() + 1);
    let mut kappa = Vec::with_capacity(rs.dart_count() + 1);
    let mut darts = Vec::with_capacity(rs.dart_count());
    state.run(rs, start, mirrored, |node, k, dart| {
        omega.push(node);
        kappa.push(k as usize);
        darts.extend(dart);
        true
    })?;
    Ok(Walk {
        omega,
        kappa,
        darts,
        start_dart: start,
        mirrored,
    })
}

/// Scratch space reused across candidate walks on one rotation system.
pub(crate) struct WalkState {
    used: Vec<bool>,
    kappa: Vec<u64>,
    touched_darts: Vec<DartId>,
    touched_nodes: Vec<usize>,
}

impl WalkState {
    pub(crate) fn new(rs: &RotationSystem) -> WalkState {
        WalkState {
            used: vec![false; rs.dart_count()],
            kappa: vec![0; rs.node_count()],
            touched_darts: Vec::new(),
            touched_nodes: Vec::new(),
        }
    }

    fn reset(&mut self) {
        for d in self.touched_darts.drain(..) {
            self.used[d] = false;
        }
        for x in self.touched_nodes.drain(..) {
            self.kappa[x] = 0;
        }
    }

    /// Calls `visit(node, κ, leaving dart)` for every walk position, with
    /// `None` as the dart of the final position. Returns `Ok(false)` when
    /// `visit` asks to stop early.
    pub(crate) fn run(
        &mut self,
        rs: &RotationSystem,
        start: DartId,
        mirrored: bool,
        mut visit: impl FnMut(usize, u64, Option<DartId>) -> bool,
    ) -> Result<bool> {
        self.reset();
        let total = rs.dart_count();
        let turn = |d: DartId| if mirrored { rs.pred(d) } else { rs.succ(d) };
        let mut next_kappa = 1;
        let mut v = rs.dart(start).tail;
        self.kappa[v] = next_kappa;
        next_kappa += 1;
        self.touched_nodes.push(v);
        let mut d = start;
        for step in 0..total {
            if !visit(v, self.kappa[v], Some(d)) {
                return Ok(false);
            }
            self.used[d] = true;
            self.touched_darts.push(d);
            let dart = rs.dart(d);
            let w = dart.head;
            let back = dart.reverse;
            let fresh = self.kappa[w] == 0;
            if fresh {
                self.kappa[w] = next_kappa;
                next_kappa += 1;
                self.touched_nodes.push(w);
            }
            v = w;
            if step + 1 == total {
                break;
            }
            d = if fresh {
                turn(back)
            } else if !self.used[back] {
                back
            } else {
                let mut c = turn(back);
                while self.used[c] && c != back {
                    c = turn(c);
                }
                if self.used[c] {
                    return Err(Error::WalkStalled {
                        used: step + 1,
                        total,
                    });
                }
                c
            };
        }
        Ok(visit(v, self.kappa[v], None))
    }
}

/// Lexicographically smallest token stream over `candidates`, where each
/// walk position contributes `κ, node tokens, dart tokens` (the last one
/// `κ, node tokens`), comma separated. Ties keep the earliest candidate.
/// Returns the stream and the index of the winning candidate.
pub(crate) fn minimize_walks(
    rs: &RotationSystem,
    candidates: &[(DartId, bool)],
    node_tokens: &dyn Fn(usize, &mut CodeBuilder),
    dart_tokens: &dyn Fn(DartId, &mut CodeBuilder),
) -> Result<(Code, usize)> {
    let mut state = WalkState::new(rs);
    let mut best: Option<(Code, usize)> = None;
    let mut builder = CodeBuilder::new();
    for (ci, &(start, mirrored)) in candidates.iter().enumerate() {
        builder.finish();
        let mut cmp = std::cmp::Ordering::Equal;
        let mut checked = 0;
        let best_raw: &[u64] = best.as_ref().map_or(&[], |b| b.0.raw());
        let completed = state.run(rs, start, mirrored, |node, k, dart| {
            builder.int(k);
            node_tokens(node, &mut builder);
            if let Some(d) = dart {
                dart_tokens(d, &mut builder);
            }
            if best_raw.is_empty() || cmp != std::cmp::Ordering::Equal {
                return true;
            }
            let cur = builder.peek();
            let end = cur.len().min(best_raw.len());
            if let Some(i) = (checked..end).find(|&i| cur[i] != best_raw[i]) {
                cmp = cur[i].cmp(&best_raw[i]);
            }
            checked = end;
            cmp != std::cmp::Ordering::Greater
        })?;
        if !completed {
            continue;
        }
        let code = builder.finish();
        let better = match &best {
            None => true,
            Some((b, _)) => code < *b,
        };
        if better {
            best = Some((code, ci));
        }
    }
    best.ok_or_else(|| Error::Validation("no candidate walks".into()))
}

/// Every dart as a start, each in both orientations, in tie-break order.
pub fn all_candidates(rs: &RotationSystem) -> Vec<(DartId, bool)> {
    (0..rs.dart_count())
        .flat_map(|d| [(d, false), (d, true)])
        .collect()
}

/// Embedding of a simple triconnected skeleton over local node indices,
/// with `edge_dart[e]` the dart running `edges[e].u -> edges[e].v`.
#[derive(Clone, Debug)]
pub(crate) struct SkeletonEmbedding {
    pub rs: RotationSystem,
    pub edge_dart: Vec<DartId>,
    /// Skeleton edge index of every dart.
    pub dart_edge: Vec<usize>,
}

pub(crate) fn embed_skeleton(sk: &Skeleton) -> Result<SkeletonEmbedding> {
    let n = sk.nodes.len();
    let local: Vec<(usize, usize)> = sk
        .edges
        .iter()
        .map(|e| (sk.index_of(e.u).unwrap(), sk.index_of(e.v).unwrap()))
        .collect();
    let g = Graph::uncolored(n, local.clone())
        .map_err(|_| Error::InvalidSkeleton("skeleton is not simple".into()))?;
    let rs = planarity::embed(&g)?;
    let mut by_pair = std::collections::HashMap::with_capacity(rs.dart_count());
    for d in rs.darts() {
        by_pair.insert((d.tail, d.head), d.id);
    }
    let mut dart_edge = vec![0; rs.dart_count()];
    let mut edge_dart = Vec::with_capacity(local.len());
    for (e, &(u, v)) in local.iter().enumerate() {
        let d = by_pair[&(u, v)];
        edge_dart.push(d);
        dart_edge[d] = e;
        dart_edge[rs.dart(d).reverse] = e;
    }
    Ok(SkeletonEmbedding {
        rs,
        edge_dart,
        dart_edge,
    })
}

/// Simple, at least four nodes, and no vertex pair whose removal
/// disconnects it.
pub fn is_triconnected(sk: &Skeleton) -> bool {
    let n = sk.nodes.len();
    if n < 4 || !sk.is_simple() {
        return false;
    }
    let adj = sk.adjacency();
    let connected_without = |x: usize, y: usize| {
        let start = (0..n).find(|&z| z != x && z != y).unwrap();
        let mut seen = vec![false; n];
        seen[x] = true;
        seen[y] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(a) = stack.pop() {
            for &(b, _) in &adj[a] {
                if !seen[b] {
                    seen[b] = true;
                    count += 1;
                    stack.push(b);
                }
            }
        }
        count == n - 2
    };
    (0..n).all(|x| (x + 1..n).all(|y| connected_without(x, y)))
}

/// TriCode of an R skeleton: the smallest walk code over every start dart
/// and both embeddings. Each position contributes its κ value, its node
/// label and, except for the last, whether the leaving edge is virtual.
pub fn tri_code(skeleton: &Skeleton, labels: &LabelMap) -> Result<(Code, Walk)> {
    if !is_triconnected(skeleton) {
        return Err(Error::InvalidSkeleton(
            "skeleton is not triconnected".into(),
        ));
    }
    let emb = embed_skeleton(skeleton)?;
    let label_codes: Vec<&Code> = skeleton
        .nodes
        .iter()
        .map(|&x| labels.get(x))
        .collect::<Result<_>>()?;
    let candidates = all_candidates(&emb.rs);
    let node_tokens = |x: usize, b: &mut CodeBuilder| {
        b.code(label_codes[x]);
    };
    let dart_tokens = |d: DartId, b: &mut CodeBuilder| {
        b.int(u64::from(skeleton.edges[emb.dart_edge[d]].is_virtual()));
    };
    let (stream, winner) = minimize_walks(&emb.rs, &candidates, &node_tokens, &dart_tokens)?;
    let (start, mirrored) = candidates[winner];
    let mut walk = weinberg_walk_oriented(&emb.rs, start, mirrored)?;
    for x in &mut walk.omega {
        *x = skeleton.nodes[*x];
    }
    Ok((wrap(&stream), walk))
}

/// Frames a flat comma-separated stream as one parenthesized item.
pub(crate) fn wrap(stream: &Code) -> Code {
    let mut b = CodeBuilder::new();
    b.open().raw(stream.raw()).close();
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spqr::{EdgeKind, SkeletonEdge};

    fn complete(n: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        e
    }

    fn rs_of(n: usize, edges: &[(usize, usize)]) -> RotationSystem {
        planarity::embed(&Graph::uncolored(n, edges.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn kappa_fixture() {
        assert_eq!(kappa_of(&[1, 3, 2, 3, 1]), vec![1, 2, 3, 2, 1]);
        assert_eq!(kappa_of(&[9]), vec![1]);
        assert_eq!(kappa_of(&[4, 5, 6, 7]), vec![1, 2, 3, 4]);
    }

    fn check_walk(rs: &RotationSystem, w: &Walk) {
        assert_eq!(w.omega.len(), rs.dart_count() + 1);
        assert_eq!(w.kappa, kappa_of(&w.omega));
        let mut darts = w.darts.clone();
        darts.sort_unstable();
        assert_eq!(darts, (0..rs.dart_count()).collect::<Vec<_>>());
        for (i, &d) in w.darts.iter().enumerate() {
            assert_eq!(rs.dart(d).tail, w.omega[i]);
            assert_eq!(rs.dart(d).head, w.omega[i + 1]);
        }
        let bound = 4 * (rs.node_count() + rs.edge_count() + 1);
        assert!(w.omega.len() <= bound);
    }

    #[test]
    fn k4_walks_cover_every_dart() {
        let rs = rs_of(4, &complete(4));
        for d in 0..rs.dart_count() {
            for mirrored in [false, true] {
                let w = weinberg_walk_oriented(&rs, d, mirrored).unwrap();
                assert_eq!(w.omega.len(), 13);
                check_walk(&rs, &w);
            }
        }
        let m = rs.mirror();
        let a = weinberg_walk(&m, 0).unwrap();
        let mut da = a.darts.clone();
        da.sort_unstable();
        assert_eq!(da.len(), 12);
    }

    #[test]
    fn octahedron_and_icosahedron_like_walks() {
        let mut oct = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                if v != u + 3 {
                    oct.push((u, v));
                }
            }
        }
        let rs = rs_of(6, &oct);
        for d in 0..rs.dart_count() {
            check_walk(&rs, &weinberg_walk_oriented(&rs, d, d % 2 == 1).unwrap());
        }
    }

    fn skeleton(edges: &[(usize, usize)], virtual_edges: &[usize]) -> Skeleton {
        let mut sk = Skeleton::from_real_edges(edges);
        for &i in virtual_edges {
            sk.edges[i].kind = EdgeKind::Virtual {
                twin_node: 1,
                twin_edge: 0,
            };
        }
        sk
    }

    #[test]
    fn k4_uniform_code_is_the_same_from_every_start() {
        let sk = skeleton(&complete(4), &[]);
        let labels = LabelMap::uniform(&sk.nodes, 0);
        let emb = embed_skeleton(&sk).unwrap();
        let codes: Vec<Code> = all_candidates(&emb.rs)
            .into_iter()
            .map(|c| {
                let (code, _) = minimize_walks(
                    &emb.rs,
                    &[c],
                    &|x, b: &mut CodeBuilder| {
                        b.code(labels.get(sk.nodes[x]).unwrap());
                    },
                    &|_, b: &mut CodeBuilder| {
                        b.int(0);
                    },
                )
                .unwrap();
                code
            })
            .collect();
        assert_eq!(codes.len(), 24);
        assert!(codes.iter().all(|c| *c == codes[0]));
        let (code, walk) = tri_code(&sk, &labels).unwrap();
        assert_eq!(code, wrap(&codes[0]));
        assert_eq!((walk.start_dart, walk.mirrored), (0, false));
        assert!(code.is_well_formed());
    }

    #[test]
    fn k4_label_and_virtual_sensitivity() {
        let sk = skeleton(&complete(4), &[]);
        let uniform = LabelMap::uniform(&sk.nodes, 0);
        let mut marked = uniform.clone();
        marked.insert(2, Code::parse("(5)").unwrap());
        let a = tri_code(&sk, &uniform).unwrap().0;
        let b = tri_code(&sk, &marked).unwrap().0;
        assert_ne!(a, b);
        let v = skeleton(&complete(4), &[3]);
        assert_ne!(tri_code(&v, &uniform).unwrap().0, a);
    }

    #[test]
    fn tri_code_invariant_under_relabeling() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        // wheel W6 and the triangular prism with one virtual edge
        let mut wheel: Vec<(usize, usize)> = (1..=6).map(|i| (0, i)).collect();
        wheel.extend((1..=6).map(|i| (i, i % 6 + 1)));
        let prism = vec![
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ];
        for (edges, n) in [(wheel, 7), (prism, 6)] {
            let base = skeleton(&edges, &[1]);
            let mut labels = LabelMap::uniform(&base.nodes, 0);
            labels.insert(1, Code::parse("(1)").unwrap());
            let want = tri_code(&base, &labels).unwrap().0;
            for _ in 0..10 {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                let moved = Skeleton::new(
                    base.nodes.iter().map(|&x| p[x]).collect(),
                    base.edges
                        .iter()
                        .map(|e| SkeletonEdge {
                            u: p[e.u],
                            v: p[e.v],
                            kind: e.kind,
                        })
                        .collect(),
                );
                let mut moved_labels = LabelMap::uniform(&moved.nodes, 0);
                moved_labels.insert(p[1], Code::parse("(1)").unwrap());
                assert_eq!(tri_code(&moved, &moved_labels).unwrap().0, want);
            }
        }
    }

    #[test]
    fn non_triconnected_rejected() {
        let c4 = skeleton(&[(0, 1), (1, 2), (2, 3), (0, 3)], &[]);
        let labels = LabelMap::uniform(&c4.nodes, 0);
        assert!(matches!(
            tri_code(&c4, &labels),
            Err(Error::InvalidSkeleton(_))
        ));
    }
}
