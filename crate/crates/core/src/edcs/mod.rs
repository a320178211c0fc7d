//! Edge-degree constrained subgraphs.
//!
//! A `(beta, beta_minus)`-EDCS `H` of `G` satisfies: every `H`-edge has
//! `deg_H(u) + deg_H(v) <= beta`, and every edge of `G` outside `H` has
//! `deg_H(u) + deg_H(v) >= beta_minus`, where `beta_minus = ceil((1 - eps) beta)`.

mod analyzer;
mod tight;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub use analyzer::{analyze_tightness, evaluate_tightness, Check, CheckStatus, Relation, TightnessReport};
pub use tight::{gen_tight_instance, TightInstance, TightInstanceInfo};

use crate::error::{invalid, Error, Result};
use crate::graph::{edge_key, induced_view, Bipartition, DynamicGraph, EventKind, GraphView, InducedBipartiteView, UpdateEvent, VertexId};
use crate::oracles::{max_matching_bipartite, phase_cap_for, Matching};

/// `ceil((1 - eps) * beta)` with a small guard against rounding up exact
/// integers.
pub fn lower_threshold(beta: usize, eps: f64) -> usize {
    ((1.0 - eps) * beta as f64 - 1e-9).ceil().max(0.0) as usize
}

#[derive(Debug, Clone)]
pub struct Edcs {
    beta: usize,
    eps: f64,
    beta_minus: usize,
    h: DynamicGraph,
}

/// A violated EDCS condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// An `H`-edge whose degree sum exceeds `beta`.
    Upper { u: VertexId, v: VertexId, sum: usize },
    /// A `G`-edge outside `H` whose degree sum is below `beta_minus`.
    Lower { u: VertexId, v: VertexId, sum: usize },
    /// An `H`-edge that is not in `G`.
    Stray { u: VertexId, v: VertexId },
}

impl Edcs {
    /// An empty EDCS over `n` vertices; valid for the empty graph.
    pub fn new(n: usize, beta: usize, eps: f64) -> Result<Self> {
        if beta < 2 {
            return Err(invalid(format!("beta must be at least 2, got {beta}")));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(invalid(format!("epsilon must lie in (0, 1), got {eps}")));
        }
        Ok(Self { beta, eps, beta_minus: lower_threshold(beta, eps), h: DynamicGraph::new(n) })
    }

    /// Builds an EDCS of `g` by running the fix-up from every vertex.
    pub fn build(g: &DynamicGraph, beta: usize, eps: f64) -> Result<Self> {
        let mut e = Self::new(g.n(), beta, eps)?;
        e.fix_up(g, (0..g.n()).collect())?;
        Ok(e)
    }

    /// Wraps a given edge set without repairing it; check with [`audit`](Self::audit).
    pub fn from_parts(n: usize, beta: usize, eps: f64, h_edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut e = Self::new(n, beta, eps)?;
        for &(u, v) in h_edges {
            e.h.insert_edge(u, v)?;
        }
        Ok(e)
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn beta_minus(&self) -> usize {
        self.beta_minus
    }

    /// The subgraph `H` itself.
    pub fn h(&self) -> &DynamicGraph {
        &self.h
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.h.degree(v)
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.h.has_edge(u, v)
    }

    fn sum(&self, u: VertexId, v: VertexId) -> usize {
        self.h.degree(u) + self.h.degree(v)
    }

    /// Restores both conditions after `ev` has been applied to `g`; returns
    /// the number of edges added to or removed from `H`.
    pub fn apply_update(&mut self, g: &DynamicGraph, ev: &UpdateEvent) -> Result<usize> {
        let mut steps = 0;
        if ev.kind == EventKind::Delete && self.h.delete_edge(ev.u, ev.v)? {
            steps += 1;
        }
        Ok(steps + self.fix_up(g, vec![ev.u, ev.v])?)
    }

    /// Breadth-first repair from `seeds`. Every degree change re-enqueues
    /// both endpoints, so on exit every edge at a touched vertex satisfies
    /// both conditions.
    fn fix_up(&mut self, g: &DynamicGraph, seeds: Vec<VertexId>) -> Result<usize> {
        let cap = 10u64.saturating_mul((self.beta * self.beta) as u64).saturating_mul(g.n().max(1) as u64);
        let mut queued = vec![false; g.n()];
        let mut queue = VecDeque::new();
        for v in seeds {
            if !queued[v] {
                queued[v] = true;
                queue.push_back(v);
            }
        }
        let mut steps = 0u64;
        let mut nbrs = Vec::new();
        while let Some(x) = queue.pop_front() {
            queued[x] = false;
            nbrs.clear();
            nbrs.extend(g.neighbors(x));
            for &y in &nbrs {
                let in_h = self.h.has_edge(x, y);
                let changed = if in_h && self.sum(x, y) > self.beta {
                    self.h.delete_edge(x, y)?
                } else if !in_h && self.sum(x, y) < self.beta_minus {
                    self.h.insert_edge(x, y)?
                } else {
                    false
                };
                if changed {
                    steps += 1;
                    if steps > cap {
                        return Err(Error::Internal(format!(
                            "EDCS repair exceeded {cap} steps (beta = {}, beta_minus = {})",
                            self.beta, self.beta_minus
                        )));
                    }
                    for z in [x, y] {
                        if !queued[z] {
                            queued[z] = true;
                            queue.push_back(z);
                        }
                    }
                }
            }
        }
        Ok(steps as usize)
    }

    /// All violations of the EDCS conditions with respect to `g`.
    pub fn violations(&self, g: &DynamicGraph) -> Vec<Violation> {
        let mut out = Vec::new();
        for (u, v) in self.h.edges() {
            if !g.has_edge(u, v) {
                out.push(Violation::Stray { u, v });
            } else if self.sum(u, v) > self.beta {
                out.push(Violation::Upper { u, v, sum: self.sum(u, v) });
            }
        }
        for (u, v) in g.edges() {
            if !self.h.has_edge(u, v) && self.sum(u, v) < self.beta_minus {
                out.push(Violation::Lower { u, v, sum: self.sum(u, v) });
            }
        }
        out
    }

    /// Full audit of both conditions plus `H ⊆ G` and degree bookkeeping.
    pub fn audit(&self, g: &DynamicGraph) -> bool {
        self.h.audit() && self.violations(g).is_empty()
    }

    /// Vertices with `deg_H` in `[.4 beta, .6 beta]` and in `[0, .2 beta]`.
    pub fn classify(&self) -> MidLowClassification {
        let b = self.beta;
        let mut v_mid = Vec::new();
        let mut v_low = Vec::new();
        for v in 0..self.h.n() {
            let d10 = 10 * self.h.degree(v);
            if d10 >= 4 * b && d10 <= 6 * b {
                v_mid.push(v);
            } else if d10 <= 2 * b {
                v_low.push(v);
            }
        }
        MidLowClassification { v_mid, v_low }
    }

    /// `H' = H[V_low, V_mid]`.
    pub fn h_prime<'a>(&'a self, cls: &MidLowClassification) -> InducedBipartiteView<'a> {
        induced_view(&self.h, &cls.v_low, &cls.v_mid).expect("classes are disjoint and in range")
    }

    /// A `(1 - eps)`-approximate maximum matching of `H`.
    pub fn approx_matching(&self, sides: &Bipartition, eps: f64) -> Result<Matching> {
        approx_matching_of(&self.h, sides, eps)
    }
}

/// Phase-capped Hopcroft–Karp on a bipartite view; a non-crossing edge is
/// reported as unsupported input.
pub fn approx_matching_of<V: GraphView + ?Sized>(view: &V, sides: &Bipartition, eps: f64) -> Result<Matching> {
    let cap = phase_cap_for(eps)?;
    max_matching_bipartite(view, sides, Some(cap)).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::Unsupported(msg),
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MidLowClassification {
    pub v_mid: Vec<VertexId>,
    pub v_low: Vec<VertexId>,
}

impl MidLowClassification {
    pub fn is_mid(&self, v: VertexId) -> bool {
        self.v_mid.binary_search(&v).is_ok()
    }

    pub fn is_low(&self, v: VertexId) -> bool {
        self.v_low.binary_search(&v).is_ok()
    }
}

/// The edge set of `H` in canonical form, for comparisons in tests.
pub fn canonical_edges(e: &Edcs) -> Vec<(VertexId, VertexId)> {
    e.h.edges().into_iter().map(|(u, v)| edge_key(u, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{max_matching_bipartite, max_matching_general};
    use crate::rng;
    use proptest::prelude::*;
    use rand::Rng as _;

    fn insert(g: &mut DynamicGraph, e: &mut Edcs, u: usize, v: usize) -> usize {
        let ev = UpdateEvent::insert(u, v);
        g.apply(&ev).unwrap();
        e.apply_update(g, &ev).unwrap()
    }

    #[test]
    fn thresholds() {
        assert_eq!(lower_threshold(4, 0.25), 3);
        assert_eq!(lower_threshold(16, 1.0 / 16.0), 15);
        assert_eq!(lower_threshold(32, 1.0 / 8.0), 28);
        assert_eq!(lower_threshold(8, 1.0 / 16.0), 8);
    }

    #[test]
    fn bad_parameters_rejected() {
        assert!(Edcs::new(4, 1, 0.1).is_err());
        assert!(Edcs::new(4, 4, 0.0).is_err());
        assert!(Edcs::new(4, 4, 1.0).is_err());
    }

    #[test]
    fn single_edge_enters_h() {
        let mut g = DynamicGraph::new(2);
        let mut e = Edcs::new(2, 4, 0.25).unwrap();
        assert_eq!(insert(&mut g, &mut e, 0, 1), 1);
        assert!(e.contains(0, 1));
        assert!(e.audit(&g));
    }

    #[test]
    fn deleting_h_edge_keeps_audit() {
        let mut g = DynamicGraph::new(4);
        let mut e = Edcs::new(4, 4, 0.25).unwrap();
        for (u, v) in [(0, 1), (1, 2), (2, 3)] {
            insert(&mut g, &mut e, u, v);
        }
        let ev = UpdateEvent::delete(1, 2);
        g.apply(&ev).unwrap();
        e.apply_update(&g, &ev).unwrap();
        assert!(e.audit(&g));
        assert!(!e.contains(1, 2));
    }

    #[test]
    fn star_center_degree_capped() {
        let beta = 4;
        let mut g = DynamicGraph::new(beta + 1);
        let mut e = Edcs::new(beta + 1, beta, 0.25).unwrap();
        for leaf in 1..=beta {
            insert(&mut g, &mut e, 0, leaf);
            assert!(e.audit(&g));
            assert!(e.degree(0) <= beta - 1);
        }
        // Independent check: leaves have degree at most one, so center degree
        // d needs d + 1 <= 4 for H-edges and d >= 3 for missing edges.
        assert_eq!(e.degree(0), 3);
        assert_eq!((1..=beta).filter(|&l| !e.contains(0, l)).count(), 1);
    }

    #[test]
    fn oscillating_parameters_hit_the_step_cap() {
        // beta_minus = beta: a star with beta + 1 leaves admits no valid H.
        let beta = 8;
        let n = beta + 2;
        let mut g = DynamicGraph::new(n);
        let mut e = Edcs::new(n, beta, 1.0 / 16.0).unwrap();
        let mut result = Ok(0);
        for leaf in 1..=beta + 1 {
            let ev = UpdateEvent::insert(0, leaf);
            g.apply(&ev).unwrap();
            result = e.apply_update(&g, &ev);
            if result.is_err() {
                break;
            }
        }
        assert!(matches!(result, Err(Error::Internal(_))) || !e.audit(&g));
    }

    #[test]
    fn classification_thresholds() {
        // beta = 10: mid is [4, 6], low is [0, 2].
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((0, 10 + i));
        }
        for i in 0..3 {
            edges.push((1, 20 + i));
        }
        let e = Edcs::from_parts(30, 10, 0.1, &edges).unwrap();
        let cls = e.classify();
        assert!(cls.is_mid(0));
        assert!(!cls.is_mid(1) && !cls.is_low(1));
        assert!(cls.is_low(29));
        assert!(cls.is_low(10));
    }

    #[test]
    fn h_prime_filters() {
        let edges = [(0, 10), (0, 11), (0, 12), (0, 13), (0, 14), (1, 2)];
        let e = Edcs::from_parts(20, 10, 0.1, &edges).unwrap();
        let cls = e.classify();
        let hp = e.h_prime(&cls);
        assert!(hp.has_edge(0, 10));
        assert!(!hp.has_edge(1, 2));
        assert_eq!(hp.edge_list().len(), 5);
    }

    #[test]
    fn approx_matching_examples() {
        let pm = Edcs::from_parts(4, 4, 0.1, &[(0, 2), (1, 3)]).unwrap();
        let sides = Bipartition::split_at(4, 2);
        assert_eq!(pm.approx_matching(&sides, 0.1).unwrap().edges(), vec![(0, 2), (1, 3)]);
        let c4 = Edcs::from_parts(4, 4, 0.1, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(c4.approx_matching(&sides, 0.1).unwrap().len(), 2);
        let bad = Edcs::from_parts(4, 4, 0.1, &[(0, 1)]).unwrap();
        assert!(matches!(bad.approx_matching(&sides, 0.1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn built_edcs_holds_two_thirds_on_random_bipartite() {
        let mut r = rng::from_seed(5);
        for _ in 0..5 {
            let mut g = DynamicGraph::new(120);
            for _ in 0..900 {
                let u = r.gen_range(0..60);
                let v = r.gen_range(60..120);
                g.insert_edge(u, v).unwrap();
            }
            let e = Edcs::build(&g, 16, 1.0 / 16.0).unwrap();
            assert!(e.audit(&g));
            let sides = Bipartition::split_at(120, 60);
            let mu_h = max_matching_bipartite(e.h(), &sides, None).unwrap().len() as f64;
            let mu_g = max_matching_bipartite(&g, &sides, None).unwrap().len() as f64;
            assert!(mu_h >= (2.0 / 3.0 - 3.0 / 16.0) * mu_g);
        }
    }

    proptest! {
        #[test]
        fn audit_after_every_update(
            ops in prop::collection::vec((any::<bool>(), 0usize..30, 0usize..30), 0..250),
            beta_idx in 0usize..3,
            eps_idx in 0usize..2,
        ) {
            let beta = [8usize, 16, 32][beta_idx];
            let eps = [1.0 / 8.0, 1.0 / 16.0][eps_idx];
            prop_assume!(lower_threshold(beta, eps) < beta);
            let n = 30;
            let mut g = DynamicGraph::new(n);
            let mut e = Edcs::new(n, beta, eps).unwrap();
            for (ins, u, v) in ops {
                if u == v { continue; }
                let ev = if ins { UpdateEvent::insert(u, v) } else { UpdateEvent::delete(u, v) };
                if g.apply(&ev).is_err() { continue; }
                e.apply_update(&g, &ev).unwrap();
                prop_assert!(e.audit(&g), "violations: {:?}", e.violations(&g));
                for v in 0..n { prop_assert!(e.degree(v) <= beta); }
            }
            let rebuilt = Edcs::build(&g, beta, eps).unwrap();
            prop_assert!(rebuilt.audit(&g));
            prop_assert!(max_matching_general(e.h()) <= max_matching_general(&g));
        }
    }
}
