//! A matching kept maximal in lockstep with a dynamic graph.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{DynamicGraph, EventKind, UpdateEvent, VertexId};
use crate::oracles::Matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchingMode {
    /// Matches fresh free pairs and rematches endpoints of deleted edges.
    Maximal,
    /// Matches fresh free pairs but never rematches; leaves maximality gaps.
    Lazy,
}

#[derive(Debug, Clone)]
pub struct MaintainedMatching {
    matching: Matching,
    mode: MatchingMode,
}

impl MaintainedMatching {
    pub fn new(n: usize, mode: MatchingMode) -> Self {
        Self { matching: Matching::new(n), mode }
    }

    /// Greedy maximal matching of an existing graph in sorted edge order.
    pub fn from_graph(g: &DynamicGraph, mode: MatchingMode) -> Self {
        let mut mm = Self::new(g.n(), mode);
        for (u, v) in g.edges() {
            mm.try_match(u, v);
        }
        mm
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn mode(&self) -> MatchingMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.matching.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matching.is_empty()
    }

    pub fn is_unmatched(&self, v: VertexId) -> bool {
        !self.matching.is_matched(v)
    }

    /// `U = V \ V(M)` in increasing order.
    pub fn unmatched(&self) -> Vec<VertexId> {
        self.matching.unmatched_vertices()
    }

    fn try_match(&mut self, u: VertexId, v: VertexId) -> bool {
        if self.matching.is_matched(u) || self.matching.is_matched(v) {
            return false;
        }
        self.matching.add(u, v).is_ok()
    }

    /// Call after `{u, v}` was inserted into `g`.
    pub fn on_insert(&mut self, _g: &DynamicGraph, u: VertexId, v: VertexId) {
        self.try_match(u, v);
    }

    /// Call after `{u, v}` was deleted from `g`.
    pub fn on_delete(&mut self, g: &DynamicGraph, u: VertexId, v: VertexId) {
        if !self.matching.remove(u, v) || self.mode == MatchingMode::Lazy {
            return;
        }
        for x in [u, v] {
            if self.matching.is_matched(x) {
                continue;
            }
            if let Some(w) = g.neighbors(x).filter(|&w| !self.matching.is_matched(w)).min() {
                self.try_match(x, w);
            }
        }
    }

    /// Applies `ev` to `g` and updates the matching.
    pub fn apply(&mut self, g: &mut DynamicGraph, ev: &UpdateEvent) -> Result<()> {
        g.apply(ev)?;
        match ev.kind {
            EventKind::Insert => self.on_insert(g, ev.u, ev.v),
            EventKind::Delete => self.on_delete(g, ev.u, ev.v),
        }
        Ok(())
    }

    /// True iff no edge of `g` has both endpoints unmatched.
    pub fn audit_maximality(&self, g: &DynamicGraph) -> bool {
        g.edges().iter().all(|&(u, v)| self.matching.is_matched(u) || self.matching.is_matched(v))
    }

    /// No free edge at `u` or `v`; after an update on `{u, v}` this is the
    /// only place a maximality gap can appear.
    pub fn audit_maximality_near(&self, g: &DynamicGraph, u: VertexId, v: VertexId) -> bool {
        [u, v].into_iter().all(|x| self.matching.is_matched(x) || g.neighbors(x).all(|w| self.matching.is_matched(w)))
    }

    /// Matching edges are graph edges and the mate table is consistent.
    pub fn audit_consistency(&self, g: &DynamicGraph) -> bool {
        self.matching.is_valid_in(g)
    }

    /// Test hook: forces a matching edge out without rematching.
    pub fn drop_edge_unchecked(&mut self, u: VertexId, v: VertexId) -> bool {
        self.matching.remove(u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::max_matching_general;
    use crate::rng;
    use proptest::prelude::*;
    use rand::Rng as _;

    fn run(n: usize, evs: &[UpdateEvent]) -> (DynamicGraph, MaintainedMatching) {
        let mut g = DynamicGraph::new(n);
        let mut mm = MaintainedMatching::new(n, MatchingMode::Maximal);
        for ev in evs {
            mm.apply(&mut g, ev).unwrap();
            assert!(mm.audit_maximality(&g));
        }
        (g, mm)
    }

    #[test]
    fn insert_into_empty() {
        let (_, mm) = run(4, &[UpdateEvent::insert(0, 1)]);
        assert_eq!(mm.matching().edges(), vec![(0, 1)]);
    }

    #[test]
    fn insert_at_matched_vertex() {
        let (_, mm) = run(4, &[UpdateEvent::insert(0, 1), UpdateEvent::insert(0, 2)]);
        assert_eq!(mm.matching().edges(), vec![(0, 1)]);
    }

    #[test]
    fn insert_disjoint() {
        let (_, mm) = run(4, &[UpdateEvent::insert(0, 1), UpdateEvent::insert(2, 3)]);
        assert_eq!(mm.matching().edges(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn delete_rematches() {
        let (_, mm) = run(3, &[UpdateEvent::insert(0, 1), UpdateEvent::insert(1, 2), UpdateEvent::delete(0, 1)]);
        assert_eq!(mm.matching().edges(), vec![(1, 2)]);
    }

    #[test]
    fn delete_unmatched_edge() {
        let (_, mm) = run(3, &[UpdateEvent::insert(0, 1), UpdateEvent::insert(1, 2), UpdateEvent::delete(1, 2)]);
        assert_eq!(mm.matching().edges(), vec![(0, 1)]);
    }

    #[test]
    fn delete_last_edge() {
        let (_, mm) = run(3, &[UpdateEvent::insert(0, 1), UpdateEvent::delete(0, 1)]);
        assert!(mm.is_empty());
        assert_eq!(mm.unmatched(), vec![0, 1, 2]);
    }

    #[test]
    fn rematch_prefers_lowest_index() {
        let (_, mm) = run(
            5,
            &[UpdateEvent::insert(0, 1), UpdateEvent::insert(0, 4), UpdateEvent::insert(0, 3), UpdateEvent::delete(0, 1)],
        );
        assert_eq!(mm.matching().edges(), vec![(0, 3)]);
    }

    #[test]
    fn planted_violation_detected() {
        let (g, mut mm) = run(2, &[UpdateEvent::insert(0, 1)]);
        assert!(mm.drop_edge_unchecked(0, 1));
        assert!(!mm.audit_maximality(&g));
    }

    #[test]
    fn lazy_mode_leaves_gaps() {
        let mut g = DynamicGraph::new(3);
        let mut mm = MaintainedMatching::new(3, MatchingMode::Lazy);
        for ev in [UpdateEvent::insert(0, 1), UpdateEvent::insert(1, 2), UpdateEvent::delete(0, 1)] {
            mm.apply(&mut g, &ev).unwrap();
        }
        assert!(mm.is_empty());
        assert!(!mm.audit_maximality(&g));
    }

    #[test]
    fn from_graph_is_maximal() {
        let g = DynamicGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mm = MaintainedMatching::from_graph(&g, MatchingMode::Maximal);
        assert!(mm.audit_maximality(&g));
        assert_eq!(mm.len(), 2);
    }

    #[test]
    fn long_fuzz_keeps_maximality_and_half_bound() {
        let n = 1000;
        let mut r = rng::from_seed(77);
        let mut g = DynamicGraph::new(n);
        let mut mm = MaintainedMatching::new(n, MatchingMode::Maximal);
        let mut present: Vec<(usize, usize)> = Vec::new();
        for step in 0..100_000u32 {
            let ev = if present.len() > 3000 || (!present.is_empty() && r.gen_bool(0.4)) {
                let i = r.gen_range(0..present.len());
                let (u, v) = present.swap_remove(i);
                UpdateEvent::delete(u, v)
            } else {
                let u = r.gen_range(0..n);
                let v = r.gen_range(0..n);
                if u == v || g.has_edge(u, v) {
                    continue;
                }
                present.push((u, v));
                UpdateEvent::insert(u, v)
            };
            mm.apply(&mut g, &ev).unwrap();
            for x in [ev.u, ev.v] {
                if mm.is_unmatched(x) {
                    assert!(g.neighbors(x).all(|w| !mm.is_unmatched(w)));
                }
            }
            if step % 10_000 == 0 {
                assert!(mm.audit_maximality(&g));
                assert!(mm.audit_consistency(&g));
                assert!(2 * mm.len() >= max_matching_general(&g));
            }
        }
        assert!(mm.audit_maximality(&g));
    }

    proptest! {
        #[test]
        fn maximal_after_every_event(ops in prop::collection::vec((any::<bool>(), 0usize..25, 0usize..25), 0..300)) {
            let n = 25;
            let mut g = DynamicGraph::new(n);
            let mut mm = MaintainedMatching::new(n, MatchingMode::Maximal);
            for (ins, u, v) in ops {
                if u == v { continue; }
                let ev = if ins { UpdateEvent::insert(u, v) } else { UpdateEvent::delete(u, v) };
                if g.clone().apply(&ev).is_err() { continue; }
                mm.apply(&mut g, &ev).unwrap();
                prop_assert!(mm.audit_maximality(&g));
                prop_assert!(mm.audit_consistency(&g));
                let u_set = mm.unmatched();
                for (i, &a) in u_set.iter().enumerate() {
                    for &b in &u_set[i + 1..] {
                        prop_assert!(!g.has_edge(a, b));
                    }
                }
                prop_assert!(2 * mm.len() >= max_matching_general(&g));
            }
        }
    }
}
