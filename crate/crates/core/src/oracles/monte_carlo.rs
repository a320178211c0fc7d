use rand::seq::SliceRandom;

use crate::error::{invalid, Result};
use crate::graph::GraphView;
use crate::rng;

/// Sample mean and standard error of `|GMM(G, pi)|` over independent
/// uniform edge orders.
pub fn expected_gmm_montecarlo<V: GraphView + ?Sized>(view: &V, trials: usize, seed: u64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let mut edges = view.edge_list();
    let mut used = vec![false; view.universe()];
    let mut r = rng::from_seed(seed);
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        edges.shuffle(&mut r);
        let mut size = 0usize;
        for &(u, v) in &edges {
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                size += 1;
            }
        }
        for &(u, v) in &edges {
            used[u] = false;
            used[v] = false;
        }
        let x = size as f64;
        sum += x;
        sum_sq += x * x;
    }
    let t = trials as f64;
    let mean = sum / t;
    let stderr = if trials > 1 {
        let var = ((sum_sq - t * mean * mean) / (t - 1.0)).max(0.0);
        (var / t).sqrt()
    } else {
        0.0
    };
    Ok((mean, stderr))
}
