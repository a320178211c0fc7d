use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{GraphView, VertexId};

/// Largest edge count accepted by the exact greedy oracle.
pub const MAX_EXACT_EDGES: usize = 9;

/// Exact statistics of greedy maximal matching under a uniformly random edge
/// order: the expected matching size and each vertex's match probability.
///
/// Uses the recursion "the first edge is uniform; remove it with its
/// neighbours and recurse", memoized over edge subsets.
#[derive(Debug, Clone)]
pub struct ExactGmm {
    vertices: Vec<VertexId>,
    probs: Vec<Ratio<i64>>,
}

impl ExactGmm {
    pub fn new<V: GraphView + ?Sized>(view: &V) -> Result<Self> {
        Self::from_edges(&view.edge_list())
    }

    pub fn from_edges(edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let m = edges.len();
        if m > MAX_EXACT_EDGES {
            return Err(Error::TooLarge(format!("{m} edges exceed the exact limit of {MAX_EXACT_EDGES}")));
        }
        let mut vertices: Vec<VertexId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let local = |x: VertexId| vertices.binary_search(&x).expect("endpoint listed");
        let ends: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (local(u), local(v))).collect();
        let conflict: Vec<u32> = ends
            .iter()
            .map(|&(a, b)| {
                ends.iter()
                    .enumerate()
                    .filter(|(_, &(c, d))| a == c || a == d || b == c || b == d)
                    .fold(0u32, |acc, (j, _)| acc | (1 << j))
            })
            .collect();
        let mut memo: Vec<Option<Vec<Ratio<i64>>>> = vec![None; 1usize << m];
        let full = ((1u64 << m) - 1) as u32;
        let probs = solve(full, &ends, &conflict, vertices.len(), &mut memo);
        Ok(Self { vertices, probs })
    }

    pub fn expected_size(&self) -> Ratio<i64> {
        self.probs.iter().fold(Ratio::from_integer(0), |acc, p| acc + p) / 2
    }

    /// Probability that `v` ends up matched; zero for isolated vertices.
    pub fn match_probability(&self, v: VertexId) -> Ratio<i64> {
        match self.vertices.binary_search(&v) {
            Ok(i) => self.probs[i],
            Err(_) => Ratio::from_integer(0),
        }
    }
}

fn solve(
    mask: u32,
    ends: &[(usize, usize)],
    conflict: &[u32],
    k: usize,
    memo: &mut Vec<Option<Vec<Ratio<i64>>>>,
) -> Vec<Ratio<i64>> {
    if let Some(p) = &memo[mask as usize] {
        return p.clone();
    }
    let mut acc = vec![Ratio::from_integer(0i64); k];
    if mask != 0 {
        let count = mask.count_ones() as i64;
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let sub = solve(mask & !conflict[e], ends, conflict, k, memo);
            let (a, b) = ends[e];
            for (v, slot) in acc.iter_mut().enumerate() {
                *slot += if v == a || v == b { Ratio::from_integer(1) } else { sub[v] };
            }
        }
        for slot in &mut acc {
            *slot /= count;
        }
    }
    memo[mask as usize] = Some(acc.clone());
    acc
}

/// `E_pi |GMM(G, pi)|` as an exact rational. Refuses more than nine edges.
pub fn expected_gmm_exact<V: GraphView + ?Sized>(view: &V) -> Result<Ratio<i64>> {
    Ok(ExactGmm::new(view)?.expected_size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DynamicGraph;
    use crate::oracles::max_matching_general;
    use proptest::prelude::*;

    fn r(a: i64, b: i64) -> Ratio<i64> {
        Ratio::new(a, b)
    }

    /// Independent oracle: enumerate all m! orders and run the greedy scan.
    fn brute_force(edges: &[(usize, usize)], n: usize) -> Ratio<i64> {
        fn permute(idx: &mut Vec<usize>, k: usize, edges: &[(usize, usize)], n: usize, total: &mut i64, count: &mut i64) {
            if k == idx.len() {
                let mut used = vec![false; n];
                let mut size = 0;
                for &i in idx.iter() {
                    let (u, v) = edges[i];
                    if !used[u] && !used[v] {
                        used[u] = true;
                        used[v] = true;
                        size += 1;
                    }
                }
                *total += size;
                *count += 1;
                return;
            }
            for j in k..idx.len() {
                idx.swap(k, j);
                permute(idx, k + 1, edges, n, total, count);
                idx.swap(k, j);
            }
        }
        let mut idx: Vec<usize> = (0..edges.len()).collect();
        let (mut total, mut count) = (0, 0);
        permute(&mut idx, 0, edges, n, &mut total, &mut count);
        Ratio::new(total, count.max(1))
    }

    #[test]
    fn single_edge() {
        let g = DynamicGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(expected_gmm_exact(&g).unwrap(), r(1, 1));
    }

    #[test]
    fn path_of_three_edges() {
        let edges = [(0, 1), (1, 2), (2, 3)];
        let g = DynamicGraph::from_edges(4, &edges).unwrap();
        let exact = expected_gmm_exact(&g).unwrap();
        assert_eq!(exact, brute_force(&edges, 4));
        assert_eq!(exact, r(5, 3));
    }

    #[test]
    fn triangle() {
        let g = DynamicGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(expected_gmm_exact(&g).unwrap(), r(1, 1));
    }

    #[test]
    fn empty_is_zero() {
        let g = DynamicGraph::new(3);
        assert_eq!(expected_gmm_exact(&g).unwrap(), r(0, 1));
    }

    #[test]
    fn endpoint_of_two_edge_path_is_half() {
        let g = DynamicGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let ex = ExactGmm::new(&g).unwrap();
        assert_eq!(ex.match_probability(0), r(1, 2));
        assert_eq!(ex.match_probability(1), r(1, 1));
    }

    #[test]
    fn refuses_ten_edges() {
        let edges: Vec<_> = (0..10).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = DynamicGraph::from_edges(20, &edges).unwrap();
        assert!(matches!(expected_gmm_exact(&g), Err(Error::TooLarge(_))));
    }

    proptest! {
        #[test]
        fn matches_enumeration_and_bounds(edges in prop::collection::vec((0usize..7, 0usize..7), 0..8)) {
            let mut g = DynamicGraph::new(7);
            for (u, v) in edges { if u != v { g.insert_edge(u, v).unwrap(); } }
            let list = g.edges();
            let exact = expected_gmm_exact(&g).unwrap();
            prop_assert_eq!(exact, brute_force(&list, 7));
            let mu = max_matching_general(&g) as i64;
            prop_assert!(exact * 2 >= Ratio::from_integer(mu));
            prop_assert!(exact <= Ratio::from_integer(mu));
        }
    }
}
