use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Bipartition, GraphView, Side, VertexId};
use crate::oracles::max_matching_bipartite;

/// A subset `A` of one side maximizing `|A| - |N(A)|`.
///
/// Both sides are padded with isolated vertices to a common size `n_pad`.
/// Pad vertices never appear in `a` or `neighborhood`; `pad_count` records
/// how many of them belong to `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallWitness {
    pub side: Side,
    pub a: Vec<VertexId>,
    pub pad_count: usize,
    pub neighborhood: Vec<VertexId>,
    pub neighborhood_size: usize,
    pub deficiency: usize,
    pub n_pad: usize,
}

impl HallWitness {
    /// `|A|` including pad vertices.
    pub fn size(&self) -> usize {
        self.a.len() + self.pad_count
    }
}

/// Extracts a witness on `side` from the König vertex cover of a maximum
/// matching: `A` is the set of `side` vertices reachable from free `side`
/// vertices by alternating paths, and `N(A)` the reachable opposite vertices.
pub fn hall_witness<V: GraphView + ?Sized>(view: &V, sides: &Bipartition, side: Side) -> Result<HallWitness> {
    if sides.n() != view.universe() {
        return Err(invalid("bipartition size differs from the vertex universe"));
    }
    let m = max_matching_bipartite(view, sides, None)?;
    let mut own: Vec<VertexId> = view.vertices().iter().copied().filter(|&v| sides.side(v) == side).collect();
    own.sort_unstable();
    let other_count = view.vertices().len() - own.len();
    let n_pad = own.len().max(other_count);
    let pad_count = n_pad - own.len();

    let n = view.universe();
    let mut seen = vec![false; n];
    let mut queue: VecDeque<VertexId> = own.iter().copied().filter(|&v| !m.is_matched(v)).collect();
    for &v in &queue {
        seen[v] = true;
    }
    let mut buf = Vec::new();
    while let Some(x) = queue.pop_front() {
        buf.clear();
        view.neighbors_into(x, &mut buf);
        for &y in &buf {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            let z = m
                .mate(y)
                .ok_or_else(|| invalid("alternating search reached a free vertex; matching not maximum"))?;
            if !seen[z] {
                seen[z] = true;
                queue.push_back(z);
            }
        }
    }
    let a: Vec<VertexId> = own.iter().copied().filter(|&v| seen[v]).collect();
    let mut neighborhood: Vec<VertexId> = view
        .vertices()
        .iter()
        .copied()
        .filter(|&v| sides.side(v) != side && seen[v])
        .collect();
    neighborhood.sort_unstable();
    let neighborhood_size = neighborhood.len();
    let deficiency = a.len() + pad_count - neighborhood_size;
    debug_assert_eq!(deficiency, n_pad - m.len());
    Ok(HallWitness { side, a, pad_count, neighborhood, neighborhood_size, deficiency, n_pad })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DynamicGraph;
    use proptest::prelude::*;

    /// Independent oracle: maximize |A| - |N(A)| over all subsets of one side.
    fn brute_deficiency(g: &DynamicGraph, own: &[usize], pads: usize) -> usize {
        let k = own.len();
        let mut best = pads;
        for mask in 0u32..(1 << k) {
            let mut nb = std::collections::BTreeSet::new();
            for (i, &v) in own.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    nb.extend(g.neighbors(v));
                }
            }
            let size = mask.count_ones() as usize + pads;
            best = best.max(size.saturating_sub(nb.len()));
        }
        best
    }

    #[test]
    fn single_edge_has_zero_deficiency() {
        let g = DynamicGraph::from_edges(2, &[(0, 1)]).unwrap();
        let sides = Bipartition::split_at(2, 1);
        let w = hall_witness(&g, &sides, Side::Left).unwrap();
        assert_eq!(w.deficiency, 0);
    }

    #[test]
    fn padded_star() {
        // Center 0 on the left, leaves 1..=3 on the right; left padded to 3.
        let g = DynamicGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let sides = Bipartition::split_at(4, 1);
        let w = hall_witness(&g, &sides, Side::Right).unwrap();
        assert_eq!(w.a, vec![1, 2, 3]);
        assert_eq!(w.neighborhood_size, 1);
        assert_eq!(w.deficiency, 2);
        assert_eq!(w.deficiency, brute_deficiency(&g, &[1, 2, 3], 0));
        let left = hall_witness(&g, &sides, Side::Left).unwrap();
        assert_eq!(left.deficiency, 2);
        assert_eq!(left.pad_count, 2);
    }

    #[test]
    fn empty_graph_whole_side() {
        let g = DynamicGraph::new(6);
        let sides = Bipartition::split_at(6, 3);
        let w = hall_witness(&g, &sides, Side::Left).unwrap();
        assert_eq!(w.a, vec![0, 1, 2]);
        assert_eq!(w.deficiency, 3);
    }

    proptest! {
        #[test]
        fn deficiency_equals_pad_minus_mu(
            nl in 1usize..20, nr in 1usize..20,
            raw in prop::collection::vec((0usize..20, 0usize..20), 0..80),
            side_left in any::<bool>(),
        ) {
            let n = nl + nr;
            let mut g = DynamicGraph::new(n);
            for (a, b) in raw { g.insert_edge(a % nl, nl + b % nr).unwrap(); }
            let sides = Bipartition::split_at(n, nl);
            let side = if side_left { Side::Left } else { Side::Right };
            let w = hall_witness(&g, &sides, side).unwrap();
            let mu = max_matching_bipartite(&g, &sides, None).unwrap().len();
            prop_assert_eq!(w.deficiency, nl.max(nr) - mu);
            let mut nb = std::collections::BTreeSet::new();
            for &v in &w.a { nb.extend(g.neighbors(v)); }
            prop_assert_eq!(nb.into_iter().collect::<Vec<_>>(), w.neighborhood.clone());
        }

        #[test]
        fn matches_subset_search(
            raw in prop::collection::vec((0usize..6, 0usize..8), 0..20),
        ) {
            let mut g = DynamicGraph::new(14);
            for (a, b) in raw { g.insert_edge(a, 6 + b).unwrap(); }
            let sides = Bipartition::split_at(14, 6);
            let w = hall_witness(&g, &sides, Side::Left).unwrap();
            prop_assert_eq!(w.deficiency, brute_deficiency(&g, &[0, 1, 2, 3, 4, 5], 2));
        }
    }
}
