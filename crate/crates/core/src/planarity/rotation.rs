use std::collections::HashMap;

use crate::error::{Error, Result};

pub type DartId = usize;

/// A directed half-edge. Every undirected edge contributes two darts that
/// are each other's `reverse`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub id: DartId,
    pub tail: usize,
    pub head: usize,
    pub reverse: DartId,
}

/// Combinatorial embedding: the cyclic order of outgoing darts around each
/// node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    darts: Vec<Dart>,
    rotations: Vec<Vec<DartId>>,
    position: Vec<usize>,
}

impl RotationSystem {
    /// Builds a rotation system from the cyclic neighbor order of each node
    /// of a simple graph. Dart ids are assigned node by node in rotation
    /// order.
    pub fn from_neighbor_orders(orders: &[Vec<usize>]) -> Result<Self> {
        let n = orders.len();
        let mut darts = Vec::new();
        let mut rotations = Vec::with_capacity(n);
        let mut index = HashMap::new();
        for (u, order) in orders.iter().enumerate() {
            let mut rot = Vec::with_capacity(order.len());
            for &v in order {
                if v >= n || v == u {
                    return Err(Error::Validation(format!(
                        "rotation at node {u} lists invalid neighbor {v}"
                    )));
                }
                let id = darts.len();
                if index.insert((u, v), id).is_some() {
                    return Err(Error::Validation(format!(
                        "rotation at node {u} lists neighbor {v} twice"
                    )));
                }
                darts.push(Dart {
                    id,
                    tail: u,
                    head: v,
                    reverse: usize::MAX,
                });
                rot.push(id);
            }
            rotations.push(rot);
        }
        for dart in darts.iter_mut() {
            let Dart { tail, head, .. } = *dart;
            dart.reverse = *index
                .get(&(head, tail))
                .ok_or_else(|| Error::Validation(format!("dart {tail}->{head} has no reverse")))?;
        }
        Ok(Self::assemble(darts, rotations))
    }

    fn assemble(darts: Vec<Dart>, rotations: Vec<Vec<DartId>>) -> Self {
        let mut position = vec![0; darts.len()];
        for rot in &rotations {
            for (i, &d) in rot.iter().enumerate() {
                position[d] = i;
            }
        }
        RotationSystem {
            darts,
            rotations,
            position,
        }
    }

    pub fn node_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, d: DartId) -> &Dart {
        &self.darts[d]
    }

    pub fn rotation(&self, u: usize) -> &[DartId] {
        &self.rotations[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rotations[u].len()
    }

    /// Next dart around the tail of `d`.
    pub fn succ(&self, d: DartId) -> DartId {
        let rot = &self.rotations[self.darts[d].tail];
        rot[(self.position[d] + 1) % rot.len()]
    }

    /// Previous dart around the tail of `d`.
    pub fn pred(&self, d: DartId) -> DartId {
        let rot = &self.rotations[self.darts[d].tail];
        rot[(self.position[d] + rot.len() - 1) % rot.len()]
    }

    /// The dart following `d` along its face.
    pub fn face_next(&self, d: DartId) -> DartId {
        self.succ(self.darts[d].reverse)
    }

    /// Faces as dart cycles.
    pub fn faces(&self) -> Vec<Vec<DartId>> {
        let mut seen = vec![false; self.darts.len()];
        let mut faces = Vec::new();
        for start in 0..self.darts.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.face_next(d);
            }
            faces.push(face);
        }
        faces
    }

    /// Number of faces; an isolated node counts as one face of its own.
    pub fn face_count(&self) -> usize {
        let isolated = self.rotations.iter().filter(|r| r.is_empty()).count();
        self.faces().len() + isolated
    }

    /// `V - E + F`; equals 2 for a planar embedding of a connected graph.
    pub fn euler_characteristic(&self) -> i64 {
        self.node_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Every rotation reversed; darts keep their ids.
    pub fn mirror(&self) -> Self {
        let rotations = self
            .rotations
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Self::assemble(self.darts.clone(), rotations)
    }

    /// Cyclic neighbor order of each node.
    pub fn neighbor_orders(&self) -> Vec<Vec<usize>> {
        self.rotations
            .iter()
            .map(|r| r.iter().map(|&d| self.darts[d].head).collect())
            .collect()
    }

    /// Checks dart bookkeeping: reverse is an involution with swapped ends
    /// and every dart sits in exactly one rotation, that of its tail.
    pub fn validate(&self) -> Result<()> {
        let mut seen = vec![false; self.darts.len()];
        for (u, rot) in self.rotations.iter().enumerate() {
            for &d in rot {
                if seen[d] || self.darts[d].tail != u {
                    return Err(Error::Validation(format!("dart {d} misplaced")));
                }
                seen[d] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Validation("dart missing from rotations".into()));
        }
        for d in &self.darts {
            let r = &self.darts[d.reverse];
            if r.reverse != d.id || r.tail != d.head || r.head != d.tail {
                return Err(Error::Validation(format!(
                    "dart {} has a bad reverse",
                    d.id
                )));
            }
        }
        Ok(())
    }
}

/// Reverses every rotation of `rs`.
pub fn mirror(rs: &RotationSystem) -> RotationSystem {
    rs.mirror()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_reverses_rotation() {
        let rs = RotationSystem::from_neighbor_orders(&[vec![1, 2, 3], vec![0], vec![0], vec![0]])
            .unwrap();
        let m = rs.mirror();
        assert_eq!(m.neighbor_orders()[0], vec![3, 2, 1]);
        assert_eq!(m.mirror(), rs);
    }

    #[test]
    fn single_edge_faces() {
        let rs = RotationSystem::from_neighbor_orders(&[vec![1], vec![0]]).unwrap();
        assert_eq!(rs.dart_count(), 2);
        assert_eq!(rs.face_count(), 1);
        assert_eq!(rs.euler_characteristic(), 2);
    }

    #[test]
    fn triangle_faces() {
        let rs =
            RotationSystem::from_neighbor_orders(&[vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        rs.validate().unwrap();
        assert_eq!(rs.face_count(), 2);
    }

    #[test]
    fn missing_reverse_rejected() {
        assert!(RotationSystem::from_neighbor_orders(&[vec![1], vec![]]).is_err());
    }
}
