//! Simple undirected node-colored graphs, permutations, and the two text
//! formats the tools read and write: graph6 and edge-list JSON.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on the dense node set `0..n` with an integer
/// color per node.
///
/// Edges are stored normalized (`u < v`) and sorted; neighbor lists are
/// sorted. Values are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    colors: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges, out-of-range
    /// endpoints and a color array of the wrong length.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, colors: Vec<u64>) -> Result<Self> {
        if colors.len() != n {
            return Err(Error::Validation(format!(
                "colors has length {} but the graph has {} nodes",
                colors.len(),
                n
            )));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(Error::Validation(format!("self-loop at node {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            colors,
            adj,
        })
    }

    /// Builds a graph with every node colored 0.
    pub fn uncolored(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(n, edges, vec![0; n])
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            colors: vec![0; n],
            adj: vec![Vec::new(); n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn colors(&self) -> &[u64] {
        &self.colors
    }

    pub fn color(&self, u: usize) -> u64 {
        self.colors[u]
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Same structure, new colors.
    pub fn with_colors(&self, colors: Vec<u64>) -> Result<Self> {
        Self::new(self.n, self.edges.clone(), colors)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        degrees.sort_unstable();
        degrees
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Parses one graph6 line. An optional `>>graph6<<` header and a trailing
    /// line terminator are accepted; colors default to 0.
    pub fn from_graph6(text: &str) -> Result<Self> {
        parse_graph6(text)
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(self)
    }

    /// Parses the edge-list JSON object `{"n", "edges", "colors"?}`.
    pub fn from_json(text: &str) -> Result<Self> {
        parse_edge_list(text)
    }

    pub fn to_json(&self) -> String {
        let record = EdgeListJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            colors: Some(self.colors.clone()),
        };
        serde_json::to_string(&record).expect("edge list serializes")
    }
}

/// Edge-list JSON wire format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<u64>>,
}

impl TryFrom<EdgeListJson> for Graph {
    type Error = Error;

    fn try_from(value: EdgeListJson) -> Result<Self> {
        let colors = value.colors.unwrap_or_else(|| vec![0; value.n]);
        Graph::new(
            value.n,
            value.edges.into_iter().map(|[u, v]| (u, v)).collect(),
            colors,
        )
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let raw: EdgeListJson = serde_json::from_str(text)
        .map_err(|e| Error::Validation(format!("edge-list JSON: {e}")))?;
    Graph::try_from(raw)
}

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let bytes = line.as_bytes();
    let mut pos = if line.starts_with(GRAPH6_HEADER) {
        GRAPH6_HEADER.len()
    } else {
        0
    };

    let sextet = |pos: usize| -> Result<u64> {
        match bytes.get(pos) {
            None => Err(Error::Parse {
                offset: pos,
                message: "unexpected end of input".into(),
            }),
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
            Some(&b) => Err(Error::Parse {
                offset: pos,
                message: format!("byte 0x{b:02x} is outside the graph6 range 63..=126"),
            }),
        }
    };

    let n = match bytes.get(pos) {
        None => {
            return Err(Error::Parse {
                offset: pos,
                message: "empty graph6 string".into(),
            })
        }
        Some(126) if bytes.get(pos + 1) == Some(&126) => {
            let mut n = 0u64;
            for k in 0..6 {
                n = (n << 6) | sextet(pos + 2 + k)?;
            }
            pos += 8;
            n
        }
        Some(126) => {
            let mut n = 0u64;
            for k in 0..3 {
                n = (n << 6) | sextet(pos + 1 + k)?;
            }
            pos += 4;
            n
        }
        Some(_) => {
            let n = sextet(pos)?;
            pos += 1;
            n
        }
    };
    let n = usize::try_from(n).map_err(|_| Error::Parse {
        offset: 0,
        message: "node count does not fit in memory".into(),
    })?;

    let bit_count = n * n.saturating_sub(1) / 2;
    let byte_count = bit_count.div_ceil(6);
    let body_start = pos;
    let mut body = Vec::with_capacity(byte_count);
    for k in 0..byte_count {
        body.push(sextet(body_start + k)?);
    }
    let end = body_start + byte_count;
    if end < bytes.len() {
        return Err(Error::Parse {
            offset: end,
            message: "trailing bytes after graph6 data".into(),
        });
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let word = body[bit / 6];
            if (word >> (5 - bit % 6)) & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::uncolored(n, edges)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.node_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for k in (0..3).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for k in (0..6).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    }
    let mut word = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            word = (word << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// A bijection on `0..n`; node `u` is sent to `mapping[u]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &x in &mapping {
            if x >= mapping.len() || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{mapping:?} is not a bijection on 0..{}",
                    mapping.len()
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, u: usize) -> usize {
        self.0[u]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (u, &v) in self.0.iter().enumerate() {
            inv[v] = u;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidPermutation(
                "composed permutations differ in length".into(),
            ));
        }
        Ok(Permutation(other.0.iter().map(|&u| self.0[u]).collect()))
    }
}

/// Relabels node `u` as `p(u)`, carrying its color along.
pub fn apply_permutation(g: &Graph, p: &Permutation) -> Result<Graph> {
    if p.len() != g.node_count() {
        return Err(Error::PermutationLength {
            expected: g.node_count(),
            got: p.len(),
        });
    }
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (p.apply(u), p.apply(v)))
        .collect();
    let mut colors = vec![0; g.node_count()];
    for u in 0..g.node_count() {
        colors[p.apply(u)] = g.color(u);
    }
    Graph::new(g.node_count(), edges, colors)
}
