//! Random static instances and a sequential greedy reference.

use rand::seq::SliceRandom;
use rand::Rng as _;

use dynmatch::graph::GraphView;
use dynmatch::rng;
use dynmatch::{Bipartition, DynamicGraph, VertexId};

/// Bipartite graph on `split_at(n, n/2)` with a planted matching of
/// `planted` cross edges plus each other cross pair with probability `p`.
pub fn random_bipartite(n: usize, planted: usize, p: f64, seed: u64) -> (DynamicGraph, Bipartition) {
    let half = n / 2;
    let mut r = rng::from_seed(seed);
    let mut g = DynamicGraph::new(n);
    let mut right: Vec<VertexId> = (half..n).collect();
    right.shuffle(&mut r);
    let mut left: Vec<VertexId> = (0..half).collect();
    left.shuffle(&mut r);
    for (&u, &v) in left.iter().zip(&right).take(planted) {
        g.insert_edge(u, v).expect("distinct vertices");
    }
    for u in 0..half {
        for v in half..n {
            if r.gen_bool(p) {
                g.insert_edge(u, v).expect("distinct vertices");
            }
        }
    }
    (g, Bipartition::split_at(n, half))
}

/// Erdos-Renyi graph with edge probability `p`.
pub fn random_general(n: usize, p: f64, seed: u64) -> DynamicGraph {
    let mut r = rng::from_seed(seed);
    let mut g = DynamicGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.insert_edge(u, v).expect("distinct vertices");
            }
        }
    }
    g
}

/// Graph on `n` vertices with exactly `m` distinct random edges.
pub fn random_with_edges(n: usize, m: usize, bipartite: bool, seed: u64) -> DynamicGraph {
    let mut r = rng::from_seed(seed);
    let mut pairs: Vec<(VertexId, VertexId)> = if bipartite {
        (0..n / 2).flat_map(|u| (n / 2..n).map(move |v| (u, v))).collect()
    } else {
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
    };
    pairs.shuffle(&mut r);
    pairs.truncate(m);
    DynamicGraph::from_edges(n, &pairs).expect("distinct pairs")
}

/// Greedy maximal matching of `view` scanning edges by uniform random ranks.
/// Returns the mate table over the view's universe.
pub fn sequential_greedy<V: GraphView + ?Sized>(view: &V, seed: u64) -> Vec<Option<VertexId>> {
    let mut r = rng::from_seed(seed);
    let mut edges = view.edge_list();
    edges.shuffle(&mut r);
    let mut mate = vec![None; view.universe()];
    for (u, v) in edges {
        if mate[u].is_none() && mate[v].is_none() {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
    }
    mate
}

pub fn greedy_size(mate: &[Option<VertexId>]) -> usize {
    mate.iter().filter(|m| m.is_some()).count() / 2
}

/// Sample mean and standard error.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynmatch::oracles::{max_matching_bipartite, max_matching_general};

    #[test]
    fn planted_matching_bounds_mu() {
        let (g, sides) = random_bipartite(200, 50, 0.005, 1);
        assert!(sides.validate(&g).is_ok());
        assert!(max_matching_bipartite(&g, &sides, None).unwrap().len() >= 50);
    }

    #[test]
    fn greedy_is_maximal_and_half_approximate() {
        let g = random_general(40, 0.1, 2);
        for s in 0..20 {
            let mate = sequential_greedy(&g, s);
            for (u, v) in g.edges() {
                assert!(mate[u].is_some() || mate[v].is_some());
            }
            assert!(2 * greedy_size(&mate) >= max_matching_general(&g));
        }
    }

    #[test]
    fn exact_edge_count() {
        let g = random_with_edges(10, 8, true, 3);
        assert_eq!(g.m(), 8);
        assert!(Bipartition::split_at(10, 5).validate(&g).is_ok());
    }

    #[test]
    fn mean_se_known_values() {
        let (m, se) = mean_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - (5.0f64 / 12.0).sqrt()).abs() < 1e-12);
    }
}
