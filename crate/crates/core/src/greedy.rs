//! Local simulation of random greedy maximal matching.
//!
//! A random edge order is realized by hashing each edge with a seed, so the
//! rank of an edge is fixed the first time it is looked at and identical on
//! every later access. Whether an edge belongs to the greedy matching is then
//! decided by exploring lower-ranked incident edges, memoized per state.

use std::collections::HashMap;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{edge_key, GraphView, VertexId};
use crate::rng;

/// Lazily assigned edge ranks realizing a uniform random permutation.
#[derive(Debug, Clone, Copy)]
pub struct RankOracle {
    seed: u64,
}

impl RankOracle {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    /// Raw 64-bit rank; ties are broken by the edge itself.
    #[inline]
    pub fn rank(&self, u: VertexId, v: VertexId) -> u64 {
        let (a, b) = edge_key(u, v);
        rng::mix64(self.seed ^ rng::mix64(((a as u64) << 32) ^ (b as u64)))
    }

    /// Rank scaled into `[0, 1)`.
    pub fn unit_rank(&self, u: VertexId, v: VertexId) -> f64 {
        (self.rank(u, v) >> 11) as f64 / (1u64 << 53) as f64
    }

    #[inline]
    fn order_key(&self, u: VertexId, v: VertexId) -> (u64, (VertexId, VertexId)) {
        (self.rank(u, v), edge_key(u, v))
    }
}

/// Memoized greedy decisions for one permutation, with probe accounting.
#[derive(Debug, Clone)]
pub struct LocalGreedyState {
    ranks: RankOracle,
    decided: HashMap<(VertexId, VertexId), bool>,
    queries: u64,
    budget: Option<u64>,
    spent: u64,
    scratch: Vec<VertexId>,
}

impl LocalGreedyState {
    pub fn new(seed: u64) -> Self {
        Self {
            ranks: RankOracle::new(seed),
            decided: HashMap::new(),
            queries: 0,
            budget: None,
            spent: 0,
            scratch: Vec::new(),
        }
    }

    /// A state that fails once more than `budget` probes are spent since the
    /// last [`reset_budget`](Self::reset_budget).
    pub fn with_budget(seed: u64, budget: u64) -> Self {
        Self { budget: Some(budget), ..Self::new(seed) }
    }

    pub fn ranks(&self) -> &RankOracle {
        &self.ranks
    }

    /// Total membership probes and neighbour scans so far.
    pub fn queries(&self) -> u64 {
        self.queries
    }

    pub fn reset_budget(&mut self) {
        self.spent = 0;
    }

    pub fn decided(&self, u: VertexId, v: VertexId) -> Option<bool> {
        self.decided.get(&edge_key(u, v)).copied()
    }

    fn charge(&mut self, probes: usize) -> Result<()> {
        self.queries += probes as u64;
        self.spent += probes as u64;
        match self.budget {
            Some(b) if self.spent > b => Err(Error::BudgetExhausted { budget: b }),
            _ => Ok(()),
        }
    }

    /// View-neighbours of `v` sorted by the rank of the connecting edge.
    fn ranked_neighbors<V: GraphView + ?Sized>(&mut self, view: &V, v: VertexId) -> Result<Vec<VertexId>> {
        let mut buf = std::mem::take(&mut self.scratch);
        buf.clear();
        let probes = view.neighbors_into(v, &mut buf);
        let ranks = self.ranks;
        buf.sort_unstable_by_key(|&w| ranks.order_key(v, w));
        let out = buf.clone();
        self.scratch = buf;
        self.charge(probes)?;
        Ok(out)
    }

    /// Incident edges of `e` ranked strictly below `e`, in increasing rank.
    fn lower_edges<V: GraphView + ?Sized>(&mut self, view: &V, e: (VertexId, VertexId)) -> Result<Vec<(VertexId, VertexId)>> {
        let key = self.ranks.order_key(e.0, e.1);
        let mut out = Vec::new();
        for (x, y) in [(e.0, e.1), (e.1, e.0)] {
            let mut buf = std::mem::take(&mut self.scratch);
            buf.clear();
            let probes = view.neighbors_into(x, &mut buf);
            for &w in &buf {
                if w != y && self.ranks.order_key(x, w) < key {
                    out.push(edge_key(x, w));
                }
            }
            self.scratch = buf;
            self.charge(probes)?;
        }
        let ranks = self.ranks;
        out.sort_unstable_by_key(|&(a, b)| ranks.order_key(a, b));
        Ok(out)
    }
}

struct Frame {
    edge: (VertexId, VertexId),
    lower: Vec<(VertexId, VertexId)>,
    next: usize,
}

/// Whether `{u, v}` belongs to the greedy matching of `view` under the
/// state's permutation. An edge is in the matching iff no lower-ranked
/// incident edge is.
pub fn edge_in_gmm<V: GraphView + ?Sized>(state: &mut LocalGreedyState, view: &V, u: VertexId, v: VertexId) -> Result<bool> {
    let root = edge_key(u, v);
    if let Some(b) = state.decided.get(&root) {
        return Ok(*b);
    }
    state.charge(1)?;
    if !view.has_edge(u, v) {
        return Err(invalid(format!("({u}, {v}) is not an edge of the view")));
    }
    let lower = state.lower_edges(view, root)?;
    let mut stack = vec![Frame { edge: root, lower, next: 0 }];
    while let Some(top) = stack.last_mut() {
        if top.next == top.lower.len() {
            state.decided.insert(top.edge, true);
            stack.pop();
            continue;
        }
        let f = top.lower[top.next];
        match state.decided.get(&f) {
            Some(true) => {
                state.decided.insert(top.edge, false);
                stack.pop();
            }
            Some(false) => top.next += 1,
            None => {
                let lower = state.lower_edges(view, f)?;
                stack.push(Frame { edge: f, lower, next: 0 });
            }
        }
    }
    Ok(state.decided[&root])
}

/// Whether `v` is matched by the greedy matching: scans incident edges in
/// increasing rank and stops at the first one in the matching.
pub fn vertex_match_status<V: GraphView + ?Sized>(state: &mut LocalGreedyState, view: &V, v: VertexId) -> Result<bool> {
    for w in state.ranked_neighbors(view, v)? {
        if edge_in_gmm(state, view, v, w)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Tuning of the size estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GmmParams {
    /// `c` in the sample count `ceil(c * ln(n) / eps^2)`.
    pub sample_const: f64,
    /// Probe budget per sampled vertex is `budget_factor * n / eps`.
    pub budget_factor: f64,
    /// When the sample count `s` reaches the number of view vertices `nv`,
    /// evaluate every vertex under `ceil(s / nv)` fresh permutations instead
    /// of sampling.
    pub census: bool,
    /// Upper limit on census permutations.
    pub max_rounds: u64,
}

impl Default for GmmParams {
    fn default() -> Self {
        Self { sample_const: 48.0, budget_factor: 50.0, census: true, max_rounds: 4096 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SizeEstimate {
    /// The one-sided estimate `max(0, raw - margin)`.
    pub value: f64,
    /// Unadjusted estimate `|V_view| * matched fraction / 2`.
    pub raw: f64,
    pub margin: f64,
    pub epsilon: f64,
    pub samples: u64,
    pub queries: u64,
    pub failures: u64,
    pub census: bool,
}

impl SizeEstimate {
    fn zero(epsilon: f64) -> Self {
        Self { value: 0.0, raw: 0.0, margin: 0.0, epsilon, samples: 0, queries: 0, failures: 0, census: true }
    }
}

fn saturating_u64(x: f64) -> u64 {
    if x.is_nan() {
        u64::MAX
    } else if x >= u64::MAX as f64 {
        u64::MAX
    } else {
        x.max(0.0).ceil() as u64
    }
}

/// Estimates `E_pi |GMM(view, pi)|` with additive error `eps * n`, where `n`
/// is the universe size of the view.
///
/// In sampling mode one fresh permutation is shared by all samples and budget
/// failures count as unmatched, which only pushes the estimate down. In
/// census mode each permutation is evaluated on every vertex and the sizes
/// are averaged.
pub fn estimate_gmm_size<V: GraphView + ?Sized>(view: &V, eps: f64, seed: u64) -> Result<SizeEstimate> {
    estimate_gmm_size_with(view, eps, seed, &GmmParams::default())
}

pub fn estimate_gmm_size_with<V: GraphView + ?Sized>(view: &V, eps: f64, seed: u64, params: &GmmParams) -> Result<SizeEstimate> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let verts = view.vertices();
    let nv = verts.len();
    if nv == 0 {
        return Ok(SizeEstimate::zero(eps));
    }
    let n = view.universe().max(2) as f64;
    let samples = saturating_u64(params.sample_const * n.ln() / (eps * eps));
    let budget = saturating_u64(params.budget_factor * n / eps);
    let mut state = LocalGreedyState::with_budget(rng::derive(seed, 1), budget);
    let mut failures = 0u64;
    let mut status = |state: &mut LocalGreedyState, v: VertexId| -> Result<bool> {
        state.reset_budget();
        match vertex_match_status(state, view, v) {
            Ok(b) => Ok(b),
            Err(Error::BudgetExhausted { .. }) => {
                failures += 1;
                Ok(false)
            }
            Err(e) => Err(e),
        }
    };

    let census = params.census && samples >= nv as u64;
    let (raw, used, census_queries) = if census {
        let rounds = samples.div_ceil(nv as u64).clamp(1, params.max_rounds.max(1));
        let (total, q) = census_sizes(view, rounds, rng::derive(seed, 1));
        (total as f64 / rounds as f64, rounds * nv as u64, q)
    } else {
        let mut r = rng::from_seed(rng::derive(seed, 2));
        let mut matched = 0u64;
        for _ in 0..samples {
            let v = verts[r.gen_range(0..nv)];
            matched += status(&mut state, v)? as u64;
        }
        (nv as f64 * matched as f64 / samples as f64 / 2.0, samples, 0)
    };
    let margin = eps * view.universe() as f64 / 2.0;
    Ok(SizeEstimate {
        value: (raw - margin).max(0.0),
        raw,
        margin,
        epsilon: eps,
        samples: used,
        queries: state.queries() + census_queries,
        failures,
        census,
    })
}

/// Sum of `|GMM(view, pi)|` over `rounds` fresh permutations, each computed
/// by scanning the edges in the order the local oracle uses. Returns the sum
/// and the number of edge probes.
fn census_sizes<V: GraphView + ?Sized>(view: &V, rounds: u64, seed: u64) -> (u64, u64) {
    let edges: Vec<(VertexId, VertexId)> = view.edge_list().into_iter().map(|(u, v)| edge_key(u, v)).collect();
    let mut used = vec![false; view.universe()];
    let mut keyed: Vec<(u64, (VertexId, VertexId))> = Vec::with_capacity(edges.len());
    let mut total = 0u64;
    for round in 0..rounds {
        let ranks = RankOracle::new(rng::derive(seed, round));
        keyed.clear();
        keyed.extend(edges.iter().map(|&(u, v)| (ranks.rank(u, v), (u, v))));
        keyed.sort_unstable();
        for &(_, (u, v)) in &keyed {
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                total += 1;
            }
        }
        for &(u, v) in &edges {
            used[u] = false;
            used[v] = false;
        }
    }
    (total, rounds * edges.len() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexStatus {
    pub vertex: VertexId,
    pub matched: bool,
    pub failed: bool,
    pub queries: u64,
}

/// Probe budget for one vertex-status query: a constant multiple of
/// `n^2 / (eps * |K|)`.
pub fn status_budget(n: usize, eps: f64, k: usize) -> u64 {
    let n = n.max(2) as f64;
    saturating_u64(10.0 * n * n / (eps * k.max(1) as f64))
}

/// Match status of `v` under a fresh permutation drawn from `seed`.
pub fn match_status_of<V: GraphView + ?Sized>(view: &V, v: VertexId, budget: u64, seed: u64) -> Result<VertexStatus> {
    let mut state = LocalGreedyState::with_budget(seed, budget);
    let (matched, failed) = match vertex_match_status(&mut state, view, v) {
        Ok(b) => (b, false),
        Err(Error::BudgetExhausted { .. }) => (false, true),
        Err(e) => return Err(e),
    };
    Ok(VertexStatus { vertex: v, matched, failed, queries: state.queries() })
}

/// Picks `v` uniformly from `k` and reports its status under a fresh
/// permutation.
pub fn match_status_random_vertex<V: GraphView + ?Sized>(view: &V, k: &[VertexId], eps: f64, seed: u64) -> Result<VertexStatus> {
    if k.is_empty() {
        return Err(invalid("vertex set K is empty"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let mut r = rng::from_seed(rng::derive(seed, 3));
    let v = k[r.gen_range(0..k.len())];
    match_status_of(view, v, status_budget(view.universe(), eps, k.len()), rng::derive(seed, 4))
}
