//! Bipartite instances whose EDCS holds exactly two thirds of the maximum
//! matching.

use serde::{Deserialize, Serialize};

use crate::edcs::Edcs;
use crate::error::{invalid, Result};
use crate::graph::{Bipartition, DynamicGraph, VertexId};

/// Generated graph, its EDCS and the bipartition.
///
/// Layout with blocks of `k` vertices: left side `S1, T_L, W_L`, right side
/// `S2, T_R, W_R`. `G` has the dashed matching `S1[i] - S2[i]`, which `H`
/// omits. `H` joins each `S1` vertex to `d` consecutive `T_R` vertices, each
/// `S2` vertex to `d` consecutive `T_L` vertices, and pairs `T_R - W_L` and
/// `T_L - W_R` one to one, where `d = min(beta / 2 - 1, k)`.
#[derive(Debug, Clone)]
pub struct TightInstance {
    pub k: usize,
    pub beta: usize,
    /// Smallest-denominator slack for which `H` is an EDCS: `1 - 2d / beta`.
    pub eps: f64,
    /// `H`-degree of the dashed-edge endpoints.
    pub core_degree: usize,
    pub graph: DynamicGraph,
    pub edcs: Edcs,
    pub sides: Bipartition,
    pub dashed: Vec<(VertexId, VertexId)>,
}

pub fn gen_tight_instance(k: usize, beta: usize) -> Result<TightInstance> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    if beta < 4 || beta % 2 != 0 {
        return Err(invalid(format!("beta must be an even integer >= 4, got {beta}")));
    }
    let d = (beta / 2 - 1).min(k);
    let eps = 1.0 - (2 * d) as f64 / beta as f64;
    let (s1, tl, wl, s2, tr, wr) = (0, k, 2 * k, 3 * k, 4 * k, 5 * k);
    let n = 6 * k;

    let mut h_edges = Vec::with_capacity(2 * k * d + 2 * k);
    for i in 0..k {
        for j in 0..d {
            h_edges.push((s1 + i, tr + (i + j) % k));
            h_edges.push((s2 + i, tl + (i + j) % k));
        }
        h_edges.push((wl + i, tr + i));
        h_edges.push((tl + i, wr + i));
    }
    let dashed: Vec<_> = (0..k).map(|i| (s1 + i, s2 + i)).collect();
    let mut all = h_edges.clone();
    all.extend_from_slice(&dashed);
    let graph = DynamicGraph::from_edges(n, &all)?;
    let edcs = Edcs::from_parts(n, beta, eps, &h_edges)?;
    Ok(TightInstance {
        k,
        beta,
        eps,
        core_degree: d,
        graph,
        edcs,
        sides: Bipartition::split_at(n, 3 * k),
        dashed,
    })
}

/// Serializable summary of a generated instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightInstanceInfo {
    pub k: usize,
    pub beta: usize,
    pub eps: f64,
    pub core_degree: usize,
    pub n: usize,
    pub m: usize,
    pub h_edges: usize,
}

impl TightInstance {
    pub fn info(&self) -> TightInstanceInfo {
        TightInstanceInfo {
            k: self.k,
            beta: self.beta,
            eps: self.eps,
            core_degree: self.core_degree,
            n: self.graph.n(),
            m: self.graph.m(),
            h_edges: self.edcs.h().m(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{max_matching_bipartite, max_matching_exhaustive};

    #[test]
    fn smallest_instance() {
        let t = gen_tight_instance(1, 4).unwrap();
        assert!(t.edcs.audit(&t.graph));
        assert!(t.sides.validate(&t.graph).is_ok());
        assert_eq!(max_matching_exhaustive(&t.graph).unwrap(), 3);
        assert_eq!(max_matching_exhaustive(t.edcs.h()).unwrap(), 2);
    }

    #[test]
    fn family_is_exactly_two_thirds() {
        for beta in [4, 8, 16, 32] {
            for k in [1, 2, 5, 20, 50] {
                let t = gen_tight_instance(k, beta).unwrap();
                assert!(t.edcs.audit(&t.graph), "k={k} beta={beta}");
                assert!(t.sides.validate(&t.graph).is_ok());
                let mu_g = max_matching_bipartite(&t.graph, &t.sides, None).unwrap().len();
                let mu_h = max_matching_bipartite(t.edcs.h(), &t.sides, None).unwrap().len();
                assert_eq!(mu_g, 3 * k);
                assert_eq!(mu_h, 2 * k);
                assert!(t.edcs.beta_minus() < beta);
            }
        }
    }

    #[test]
    fn dashed_endpoints_in_mid_for_beta_16() {
        for k in [7, 20, 50] {
            let t = gen_tight_instance(k, 16).unwrap();
            let cls = t.edcs.classify();
            for &(u, v) in &t.dashed {
                assert!(cls.is_mid(u) && cls.is_mid(v));
                assert!(!t.edcs.contains(u, v));
            }
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(gen_tight_instance(0, 8).is_err());
        assert!(gen_tight_instance(3, 7).is_err());
        assert!(gen_tight_instance(3, 2).is_err());
    }
}
