//! Decomposition export: block-cut tree, SPQR trees, walks and θ numbers
//! of a planar graph as one JSON object, plus the inverse reconstruction.
//!
//! Node ids are those of the input graph. Block ids are global across
//! components. SPQR node ids are local to their block, so references to
//! them are `[block, node]` pairs.

use serde::{Deserialize, Serialize};

use crate::blockcut::TreeNode;
use crate::canon::canonicalize;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spqr::{glue, EdgeKind, NodeKind, Skeleton, SkeletonEdge, SpqrNode, SpqrTree};
use crate::weinberg::kappa_of;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionRecord {
    pub schema_version: u32,
    pub graph: GraphRecord,
    pub cut_nodes: Vec<usize>,
    pub blocks: Vec<BlockRecord>,
    pub block_cut_tree: BlockCutRecord,
    pub spqr: Vec<SpqrRecord>,
    /// One entry per node, in node order.
    pub membership: Vec<MembershipRecord>,
    pub code: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub colors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockRecord {
    pub id: usize,
    pub component: usize,
    pub nodes: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum BcNode {
    Block(usize),
    Cut(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockCutRecord {
    /// `[cut node, block id]` incidences.
    pub edges: Vec<[usize; 2]>,
    /// Canonical root of every component's tree, by component.
    pub roots: Vec<BcNode>,
    pub cut_codes: Vec<CutCodeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutCodeRecord {
    pub node: usize,
    pub code: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpqrRecord {
    pub block: usize,
    pub root: usize,
    pub nodes: Vec<SpqrNodeRecord>,
    pub tree_edges: Vec<SpqrEdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpqrNodeRecord {
    pub id: usize,
    /// One of "S", "P", "Q", "R".
    pub kind: String,
    pub skeleton_nodes: Vec<usize>,
    pub skeleton_edges: Vec<SkeletonEdgeRecord>,
    /// Canonical walk of S and R nodes. For S nodes ω is the cycle order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walk: Option<WalkRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkeletonEdgeRecord {
    pub u: usize,
    pub v: usize,
    #[serde(rename = "virtual")]
    pub is_virtual: bool,
    /// `[node, edge]` of the twin, for virtual edges.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twin: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkRecord {
    pub omega: Vec<usize>,
    pub kappa: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpqrEdgeRecord {
    pub parent: usize,
    pub child: usize,
    pub theta: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipRecord {
    pub node: usize,
    /// `[block, spqr node]` of every skeleton containing the node.
    pub sigma: Vec<[usize; 2]>,
    /// Blocks containing the node.
    pub pi: Vec<usize>,
}

impl DecompositionRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// Strict parse: unknown fields and other schema versions are errors.
    pub fn from_json_line(line: &str) -> Result<DecompositionRecord> {
        let record: DecompositionRecord = serde_json::from_str(line)?;
        if record.schema_version != SCHEMA_VERSION {
            return Err(Error::Validation(format!(
                "unsupported schema_version {}",
                record.schema_version
            )));
        }
        Ok(record)
    }
}

fn parse_kind(s: &str) -> Result<NodeKind> {
    match s {
        "S" => Ok(NodeKind::S),
        "P" => Ok(NodeKind::P),
        "Q" => Ok(NodeKind::Q),
        "R" => Ok(NodeKind::R),
        other => Err(Error::Integrity(format!(
            "unknown SPQR node kind {other:?}"
        ))),
    }
}

pub fn export_decomposition(g: &Graph) -> Result<DecompositionRecord> {
    let canonical = canonicalize(g)?;
    let n = g.node_count();
    let mut cut_nodes = Vec::new();
    let mut blocks = Vec::new();
    let mut bc_edges = Vec::new();
    let mut roots = Vec::new();
    let mut cut_codes = Vec::new();
    let mut spqr = Vec::new();
    let mut membership: Vec<MembershipRecord> = (0..n)
        .map(|node| MembershipRecord {
            node,
            sigma: Vec::new(),
            pi: Vec::new(),
        })
        .collect();
    for (ci, (d, c)) in canonical.components.iter().enumerate() {
        let ids = &d.original_ids;
        let offset = blocks.len();
        cut_nodes.extend(d.bct.cut_nodes.iter().map(|&u| ids[u]));
        for b in &d.bct.blocks {
            let gid = offset + b.id;
            for &u in &b.nodes {
                membership[ids[u]].pi.push(gid);
            }
            blocks.push(BlockRecord {
                id: gid,
                component: ci,
                nodes: b.nodes.iter().map(|&u| ids[u]).collect(),
                edges: b
                    .edges
                    .iter()
                    .map(|&(u, v)| sorted_pair(ids[u], ids[v]))
                    .collect(),
            });
        }
        bc_edges.extend(d.bct.tree_edges.iter().map(|&(u, b)| [ids[u], offset + b]));
        roots.push(match c.bc_root {
            TreeNode::Block(b) => BcNode::Block(offset + b),
            TreeNode::Cut(u) => BcNode::Cut(ids[u]),
        });
        cut_codes.extend(c.cut_codes.iter().map(|(&u, code)| CutCodeRecord {
            node: ids[u],
            code: code.to_string(),
        }));
        for (b, tree) in d.spqr.iter().enumerate() {
            let (Some(tree), Some(trace)) = (tree, &c.spqr[b]) else {
                continue;
            };
            let gid = offset + b;
            let mut walks = vec![None; tree.nodes.len()];
            for (x, w) in &trace.walks {
                walks[*x] = Some(w);
            }
            let nodes = tree
                .nodes
                .iter()
                .map(|node| {
                    for &u in &node.skeleton.nodes {
                        membership[ids[u]].sigma.push([gid, node.id]);
                    }
                    SpqrNodeRecord {
                        id: node.id,
                        kind: node.kind.as_str().to_string(),
                        skeleton_nodes: node.skeleton.nodes.iter().map(|&u| ids[u]).collect(),
                        skeleton_edges: node
                            .skeleton
                            .edges
                            .iter()
                            .map(|e| SkeletonEdgeRecord {
                                u: ids[e.u],
                                v: ids[e.v],
                                is_virtual: e.is_virtual(),
                                twin: match e.kind {
                                    EdgeKind::Real => None,
                                    EdgeKind::Virtual {
                                        twin_node,
                                        twin_edge,
                                    } => Some([twin_node, twin_edge]),
                                },
                            })
                            .collect(),
                        walk: walks[node.id].map(|w| {
                            let omega: Vec<usize> = w.iter().map(|&u| ids[u]).collect();
                            WalkRecord {
                                kappa: kappa_of(&omega),
                                omega,
                            }
                        }),
                    }
                })
                .collect();
            spqr.push(SpqrRecord {
                block: gid,
                root: trace.root,
                nodes,
                tree_edges: trace
                    .theta
                    .iter()
                    .map(|&(parent, child, theta)| SpqrEdgeRecord {
                        parent,
                        child,
                        theta,
                    })
                    .collect(),
            });
        }
    }
    cut_nodes.sort_unstable();
    bc_edges.sort_unstable();
    cut_codes.sort_by_key(|c| c.node);
    for m in &mut membership {
        m.sigma.sort_unstable();
        m.pi.sort_unstable();
    }
    Ok(DecompositionRecord {
        schema_version: SCHEMA_VERSION,
        graph: GraphRecord {
            n,
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            colors: g.colors().to_vec(),
        },
        cut_nodes,
        blocks,
        block_cut_tree: BlockCutRecord {
            edges: bc_edges,
            roots,
            cut_codes,
        },
        spqr,
        membership,
        code: canonical.code.to_string(),
    })
}

fn sorted_pair(u: usize, v: usize) -> [usize; 2] {
    [u.min(v), u.max(v)]
}

/// Rebuilds the graph from the SPQR skeletons alone: every tree is glued
/// back into its block and the blocks are united. Each glued block must
/// match its block entry.
pub fn reconstruct(record: &DecompositionRecord) -> Result<Graph> {
    let mut glued: Vec<Option<Vec<[usize; 2]>>> = vec![None; record.blocks.len()];
    for s in &record.spqr {
        let nodes = s
            .nodes
            .iter()
            .enumerate()
            .map(|(i, node)| {
                if node.id != i {
                    return Err(Error::Integrity(format!(
                        "SPQR node {} listed at {i}",
                        node.id
                    )));
                }
                let edges = node
                    .skeleton_edges
                    .iter()
                    .map(|e| {
                        let kind = match (e.is_virtual, e.twin) {
                            (false, None) => EdgeKind::Real,
                            (true, Some([twin_node, twin_edge])) => EdgeKind::Virtual {
                                twin_node,
                                twin_edge,
                            },
                            _ => {
                                return Err(Error::Integrity(
                                    "virtual flag disagrees with twin".into(),
                                ))
                            }
                        };
                        Ok(SkeletonEdge {
                            u: e.u,
                            v: e.v,
                            kind,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SpqrNode {
                    id: i,
                    kind: parse_kind(&node.kind)?,
                    skeleton: Skeleton::new(node.skeleton_nodes.clone(), edges),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let tree = SpqrTree {
            block_id: s.block,
            nodes,
            tree_edges: Vec::new(),
            root: s.root,
        };
        let block = glue(&tree)?;
        let slot = glued
            .get_mut(s.block)
            .ok_or_else(|| Error::Integrity(format!("SPQR tree of unknown block {}", s.block)))?;
        if slot.is_some() {
            return Err(Error::Integrity(format!(
                "block {} has two SPQR trees",
                s.block
            )));
        }
        *slot = Some(block.edges.iter().map(|&(u, v)| [u, v]).collect());
    }
    let mut edges = Vec::new();
    for (i, b) in record.blocks.iter().enumerate() {
        if b.id != i {
            return Err(Error::Integrity(format!("block {} listed at {i}", b.id)));
        }
        let got = glued[i].take().unwrap_or_default();
        if got != b.edges {
            return Err(Error::Integrity(format!(
                "glued block {i} differs from its edge list"
            )));
        }
        edges.extend(got.into_iter().map(|[u, v]| (u, v)));
    }
    edges.sort_unstable();
    Graph::new(record.graph.n, edges, record.graph.colors.clone())
}
