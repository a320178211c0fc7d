use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{edge_key, GraphView, VertexId};

/// A set of vertex-disjoint edges with a per-vertex partner index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    mate: Vec<Option<VertexId>>,
    size: usize,
}

impl Matching {
    pub fn new(n: usize) -> Self {
        Self { mate: vec![None; n], size: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut m = Self::new(n);
        for &(u, v) in edges {
            m.add(u, v)?;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.mate[v]
    }

    #[inline]
    pub fn is_matched(&self, v: VertexId) -> bool {
        self.mate[v].is_some()
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        u < self.mate.len() && self.mate[u] == Some(v)
    }

    /// Adds `{u, v}`; both endpoints must be free.
    pub fn add(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u >= self.mate.len() || v >= self.mate.len() || u == v {
            return Err(invalid(format!("bad matching edge ({u}, {v})")));
        }
        if self.mate[u].is_some() || self.mate[v].is_some() {
            return Err(invalid(format!("edge ({u}, {v}) shares an endpoint with the matching")));
        }
        self.mate[u] = Some(v);
        self.mate[v] = Some(u);
        self.size += 1;
        Ok(())
    }

    /// Removes `{u, v}` if present.
    pub fn remove(&mut self, u: VertexId, v: VertexId) -> bool {
        if !self.contains(u, v) {
            return false;
        }
        self.mate[u] = None;
        self.mate[v] = None;
        self.size -= 1;
        true
    }

    /// Sorted edge list with `u < v`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = (0..self.mate.len())
            .filter_map(|u| self.mate[u].filter(|&v| u < v).map(|v| edge_key(u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn matched_vertices(&self) -> Vec<VertexId> {
        (0..self.mate.len()).filter(|&v| self.mate[v].is_some()).collect()
    }

    pub fn unmatched_vertices(&self) -> Vec<VertexId> {
        (0..self.mate.len()).filter(|&v| self.mate[v].is_none()).collect()
    }

    /// Checks symmetry of the partner index and that every edge lies in `view`.
    pub fn is_valid_in<V: GraphView + ?Sized>(&self, view: &V) -> bool {
        let mut count = 0;
        for u in 0..self.mate.len() {
            if let Some(v) = self.mate[u] {
                if v >= self.mate.len() || self.mate[v] != Some(u) || !view.has_edge(u, v) {
                    return false;
                }
                count += 1;
            }
        }
        count == 2 * self.size
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DynamicGraph;

    #[test]
    fn add_and_remove() {
        let mut m = Matching::new(4);
        m.add(0, 1).unwrap();
        assert!(m.add(1, 2).is_err());
        m.add(3, 2).unwrap();
        assert_eq!(m.edges(), vec![(0, 1), (2, 3)]);
        assert!(m.remove(1, 0));
        assert!(!m.remove(1, 0));
        assert_eq!(m.len(), 1);
        assert_eq!(m.unmatched_vertices(), vec![0, 1]);
    }

    #[test]
    fn validity_against_graph() {
        let g = DynamicGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let m = Matching::from_edges(4, &[(0, 1)]).unwrap();
        assert!(m.is_valid_in(&g));
        let bad = Matching::from_edges(4, &[(1, 2)]).unwrap();
        assert!(!bad.is_valid_in(&g));
    }
}
