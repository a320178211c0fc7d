use std::collections::VecDeque;

use crate::graph::GraphView;

const NONE: usize = usize::MAX;

/// Exact maximum matching size of a general graph (Edmonds' blossom
/// algorithm, O(n^3)).
pub fn max_matching_general<V: GraphView + ?Sized>(view: &V) -> usize {
    let (adj, _) = local_adjacency(view);
    Blossom::new(adj).solve()
}

pub(crate) fn local_adjacency<V: GraphView + ?Sized>(view: &V) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut verts = view.vertices().to_vec();
    verts.sort_unstable();
    let mut index = vec![NONE; view.universe()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let mut buf = Vec::new();
    let adj = verts
        .iter()
        .map(|&v| {
            buf.clear();
            view.neighbors_into(v, &mut buf);
            let mut row: Vec<usize> = buf.iter().map(|&w| index[w]).collect();
            row.sort_unstable();
            row
        })
        .collect();
    (adj, verts)
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    seen: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Self {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            seen: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn solve(mut self) -> usize {
        let n = self.adj.len();
        let mut size = 0;
        for v in 0..n {
            if self.mate[v] == NONE {
                if let Some(&w) = self.adj[v].iter().find(|&&w| self.mate[w] == NONE) {
                    self.mate[v] = w;
                    self.mate[w] = v;
                    size += 1;
                }
            }
        }
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            let mut v = self.find_path(root);
            if v == NONE {
                continue;
            }
            size += 1;
            while v != NONE {
                let pv = self.parent[v];
                let ppv = self.mate[pv];
                self.mate[v] = pv;
                self.mate[pv] = v;
                v = ppv;
            }
        }
        size
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.seen.iter_mut().for_each(|s| *s = false);
        loop {
            a = self.base[a];
            self.seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for j in 0..n {
                        if self.in_blossom[self.base[j]] {
                            self.base[j] = cur;
                            if !self.used[j] {
                                self.used[j] = true;
                                self.queue.push_back(j);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        NONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{DynamicGraph, InducedView};
    use crate::oracles::max_matching_exhaustive;
    use proptest::prelude::*;

    #[test]
    fn triangle() {
        let g = DynamicGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(max_matching_general(&g), 1);
    }

    #[test]
    fn five_cycle() {
        let g = DynamicGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(max_matching_general(&g), 2);
    }

    #[test]
    fn two_disjoint_edges() {
        let g = DynamicGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(max_matching_general(&g), 2);
    }

    #[test]
    fn blossom_needs_contraction() {
        // Odd cycle 0..4 with pendants at 0, 2 and 3: vertices 1 and 4 cannot
        // both be matched.
        let g = DynamicGraph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (2, 6), (3, 7)],
        )
        .unwrap();
        assert_eq!(max_matching_general(&g), 3);
        // Triangle with a pendant at each corner; the greedy start 0-1 must be
        // augmented through the triangle.
        let g = DynamicGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(max_matching_general(&g), 3);
    }

    #[test]
    fn on_induced_view() {
        let g = DynamicGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let view = InducedView::new(&g, &[1, 2, 3]).unwrap();
        assert_eq!(max_matching_general(&view), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_exhaustive(edges in prop::collection::vec((0usize..12, 0usize..12), 0..40)) {
            let mut g = DynamicGraph::new(12);
            for (u, v) in edges { if u != v { g.insert_edge(u, v).unwrap(); } }
            prop_assert_eq!(max_matching_general(&g), max_matching_exhaustive(&g).unwrap());
        }
    }
}
