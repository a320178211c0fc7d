use crate::error::{Error, Result};
use crate::graph::GraphView;
use crate::oracles::blossom::local_adjacency;

pub const MAX_EXHAUSTIVE_VERTICES: usize = 16;

/// Maximum matching size by memoized search over vertex subsets.
/// Refuses views with more than 16 vertices.
pub fn max_matching_exhaustive<V: GraphView + ?Sized>(view: &V) -> Result<usize> {
    let (adj, verts) = local_adjacency(view);
    let k = verts.len();
    if k > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::TooLarge(format!("{k} vertices exceed the exhaustive limit of {MAX_EXHAUSTIVE_VERTICES}")));
    }
    let nbr: Vec<u32> = adj.iter().map(|row| row.iter().fold(0u32, |acc, &w| acc | (1 << w))).collect();
    let mut memo = vec![u8::MAX; 1usize << k];
    Ok(solve(((1u64 << k) - 1) as u32, &nbr, &mut memo) as usize)
}

fn solve(mask: u32, nbr: &[u32], memo: &mut [u8]) -> u8 {
    if mask == 0 {
        return 0;
    }
    if memo[mask as usize] != u8::MAX {
        return memo[mask as usize];
    }
    let v = mask.trailing_zeros();
    let rest = mask & !(1 << v);
    let mut best = solve(rest, nbr, memo);
    let mut cand = nbr[v as usize] & rest;
    while cand != 0 {
        let w = cand.trailing_zeros();
        cand &= cand - 1;
        best = best.max(1 + solve(rest & !(1 << w), nbr, memo));
    }
    memo[mask as usize] = best;
    best
}
