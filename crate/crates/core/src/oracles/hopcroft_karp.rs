use std::collections::VecDeque;

use crate::error::{invalid, Error, Result};
use crate::graph::{Bipartition, GraphView, Side};
use crate::oracles::Matching;

const NONE: usize = usize::MAX;

/// Number of phases that guarantees a `(1 - eps)`-approximate matching.
pub fn phase_cap_for(eps: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let cap = (1.0 / eps).ceil();
    Ok(if cap >= usize::MAX as f64 { usize::MAX } else { cap as usize })
}

/// Hopcroft–Karp on a bipartite view.
///
/// With `phase_cap = None` the result is a maximum matching. With a cap of
/// `k` phases every remaining augmenting path has length at least `2k + 1`,
/// so the result is at least `k/(k+1)` of the maximum.
///
/// Left vertices are processed in increasing id order and adjacency lists are
/// sorted, so the output is a deterministic function of the edge set.
pub fn max_matching_bipartite<V: GraphView + ?Sized>(
    view: &V,
    sides: &Bipartition,
    phase_cap: Option<usize>,
) -> Result<Matching> {
    let n = view.universe();
    if sides.n() != n {
        return Err(invalid("bipartition size differs from the vertex universe"));
    }
    let mut left: Vec<usize> = view.vertices().iter().copied().filter(|&v| sides.side(v) == Side::Left).collect();
    let mut right: Vec<usize> = view.vertices().iter().copied().filter(|&v| sides.side(v) == Side::Right).collect();
    left.sort_unstable();
    right.sort_unstable();

    let mut index = vec![NONE; n];
    for (i, &v) in left.iter().enumerate() {
        index[v] = i;
    }
    for (i, &v) in right.iter().enumerate() {
        index[v] = i;
    }

    let mut buf = Vec::new();
    for &r in &right {
        buf.clear();
        view.neighbors_into(r, &mut buf);
        if let Some(&w) = buf.iter().find(|&&w| sides.side(w) != Side::Left) {
            return Err(Error::InvalidInput(format!("edge ({r}, {w}) violates the bipartition")));
        }
    }
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(left.len());
    for &l in &left {
        buf.clear();
        view.neighbors_into(l, &mut buf);
        let mut row = Vec::with_capacity(buf.len());
        for &w in &buf {
            if sides.side(w) != Side::Right {
                return Err(Error::InvalidInput(format!("edge ({l}, {w}) violates the bipartition")));
            }
            row.push(index[w]);
        }
        row.sort_unstable();
        adj.push(row);
    }

    let (nl, nr) = (left.len(), right.len());
    let mut mate_l = vec![NONE; nl];
    let mut mate_r = vec![NONE; nr];
    let mut dist = vec![NONE; nl];
    let mut iter = vec![0usize; nl];
    let mut queue = VecDeque::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut via: Vec<usize> = Vec::new();
    let mut phases = 0usize;

    loop {
        if phase_cap.is_some_and(|cap| phases >= cap) {
            break;
        }
        queue.clear();
        for u in 0..nl {
            if mate_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NONE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mate_r[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        phases += 1;

        iter.iter_mut().for_each(|i| *i = 0);
        for root in 0..nl {
            if mate_l[root] != NONE {
                continue;
            }
            stack.clear();
            via.clear();
            stack.push(root);
            while let Some(&x) = stack.last() {
                if iter[x] < adj[x].len() {
                    let v = adj[x][iter[x]];
                    iter[x] += 1;
                    let w = mate_r[v];
                    if w == NONE {
                        via.push(v);
                        for (i, &s) in stack.iter().enumerate() {
                            mate_l[s] = via[i];
                            mate_r[via[i]] = s;
                        }
                        break;
                    } else if dist[w] == dist[x] + 1 {
                        via.push(v);
                        stack.push(w);
                    }
                } else {
                    dist[x] = NONE;
                    stack.pop();
                    via.pop();
                }
            }
        }
    }

    let mut m = Matching::new(n);
    for (u, &v) in mate_l.iter().enumerate() {
        if v != NONE {
            m.add(left[u], right[v])?;
        }
    }
    Ok(m)
}
