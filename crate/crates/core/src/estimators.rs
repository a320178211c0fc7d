//! Query algorithms estimating the maximum matching size from a maintained
//! matching or EDCS.
//!
//! Every sub-estimate enters the top-level value with its one-sided margin
//! subtracted exactly once. When the sub-views are small enough for exact
//! greedy expectations, reports also carry the margin-free `idealized` value.

use std::time::Instant;

use num_rational::Ratio;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::edcs::{approx_matching_of, Edcs};
use crate::error::{invalid, Result};
use crate::graph::{induced_view, Bipartition, DynamicGraph, GraphView, InducedView, Side, VertexId};
use crate::greedy::{estimate_gmm_size_with, match_status_of, status_budget, GmmParams};
use crate::oracles::{ExactGmm, Matching, MAX_EXACT_EDGES};
use crate::rng;

/// Subsampling rate balancing the two terms of the bipartite estimator.
pub const OBLIVIOUS_RATE: f64 = std::f64::consts::SQRT_2 - 1.0;
pub const ADAPTIVE_RATE: f64 = 0.3;
pub const GENERAL_RATE: f64 = 0.03;
/// Structural slack of the two-thirds estimator.
pub const TWO_THIRDS_DELTA: f64 = 1.9e-6;
/// Guaranteed advantage over two thirds.
pub const TWO_THIRDS_GAIN: f64 = 1.8e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    BipartiteOblivious,
    BipartiteAdaptive,
    TwoThirds,
    General,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::BipartiteOblivious => "bipartite-oblivious",
            Algorithm::BipartiteAdaptive => "bipartite-adaptive",
            Algorithm::TwoThirds => "two-thirds",
            Algorithm::General => "general",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    /// The returned estimate.
    pub value: f64,
    /// `|M|`, or `|M_H|` for the two-thirds estimator.
    pub base_matching_size: usize,
    /// `|M'|`, or `|M_H'|` for the two-thirds estimator.
    pub subsample_size: usize,
    /// Unadjusted greedy-size estimate, or `Q` for the general estimator.
    pub raw_g: f64,
    /// Unadjusted greedy-size estimate on the unmatched vertices.
    pub ell: Option<f64>,
    /// Total margin subtracted from the raw estimates.
    pub margin: f64,
    /// The value with exact sub-oracles and no margins, when computable.
    pub idealized: Option<f64>,
    pub queries: u64,
    pub elapsed_micros: u64,
}

/// Shared knobs for the matching-based estimators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QueryConfig {
    pub eps: f64,
    /// Edge subsampling probability for `M'`.
    pub rate: f64,
    pub seed: u64,
    pub gmm: GmmParams,
    /// Compute the exact-sub-oracle value when sub-views are small.
    pub idealize: bool,
}

impl QueryConfig {
    pub fn new(eps: f64, rate: f64, seed: u64) -> Self {
        Self { eps, rate, seed, gmm: GmmParams::default(), idealize: true }
    }

    fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(invalid(format!("epsilon must lie in (0, 1), got {}", self.eps)));
        }
        if !(self.rate > 0.0 && self.rate <= 1.0) {
            return Err(invalid(format!("sampling rate must lie in (0, 1], got {}", self.rate)));
        }
        Ok(())
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact expected greedy size when the view has few edges.
fn exact_expectation<V: GraphView + ?Sized>(view: &V) -> Option<f64> {
    let edges = view.edge_list();
    if edges.len() > MAX_EXACT_EDGES {
        return None;
    }
    ExactGmm::from_edges(&edges).ok().map(|x| ratio_f64(x.expected_size()))
}

fn subsample(m: &Matching, rate: f64, seed: u64) -> Vec<(VertexId, VertexId)> {
    let mut r = rng::from_seed(seed);
    m.edges().into_iter().filter(|_| r.gen_bool(rate)).collect()
}

fn elapsed(start: Instant) -> u64 {
    start.elapsed().as_micros().min(u64::MAX as u128) as u64
}

fn check_sizes(g: &DynamicGraph, m: &Matching) -> Result<()> {
    if m.n() != g.n() {
        return Err(invalid("matching and graph sizes differ"));
    }
    Ok(())
}

struct BipartiteCore {
    value: f64,
    subsample: usize,
    raw: f64,
    margin: f64,
    idealized: Option<f64>,
    queries: u64,
}

fn bipartite_core(g: &DynamicGraph, m: &Matching, cfg: &QueryConfig) -> Result<BipartiteCore> {
    let m_prime = subsample(m, cfg.rate, rng::derive(cfg.seed, 10));
    let v_prime: Vec<VertexId> = m_prime.iter().flat_map(|&(u, v)| [u, v]).collect();
    let unmatched = m.unmatched_vertices();
    let h = induced_view(g, &v_prime, &unmatched)?;
    let est = estimate_gmm_size_with(&h, cfg.eps, rng::derive(cfg.seed, 11), &cfg.gmm)?;
    let base = m.len() as f64;
    let sub = m_prime.len() as f64;
    let value = base + (est.value - sub).max(0.0);
    let idealized = if cfg.idealize { exact_expectation(&h).map(|x| base + (x - sub).max(0.0)) } else { None };
    Ok(BipartiteCore { value, subsample: m_prime.len(), raw: est.raw, margin: est.margin, idealized, queries: est.queries })
}

/// Bipartite estimator: `|M| + max(0, g - |M'|)` where `g` estimates the
/// expected greedy matching between `V(M')` and the vertices `M` leaves free.
pub fn query_bipartite_oblivious(g: &DynamicGraph, sides: &Bipartition, m: &Matching, cfg: &QueryConfig) -> Result<EstimateReport> {
    let start = Instant::now();
    cfg.validate()?;
    check_sizes(g, m)?;
    sides.validate(g)?;
    let core = bipartite_core(g, m, cfg)?;
    Ok(EstimateReport {
        algorithm: Algorithm::BipartiteOblivious,
        n: g.n(),
        m: g.m(),
        value: core.value,
        base_matching_size: m.len(),
        subsample_size: core.subsample,
        raw_g: core.raw,
        ell: None,
        margin: core.margin,
        idealized: core.idealized,
        queries: core.queries,
        elapsed_micros: elapsed(start),
    })
}

/// Bipartite estimator for possibly non-maximal `M`: the larger of the
/// subsampling estimate and `|M|` plus a greedy estimate on the free vertices.
pub fn query_bipartite_adaptive(g: &DynamicGraph, sides: &Bipartition, m: &Matching, cfg: &QueryConfig) -> Result<EstimateReport> {
    let start = Instant::now();
    cfg.validate()?;
    check_sizes(g, m)?;
    sides.validate(g)?;
    let core = bipartite_core(g, m, cfg)?;
    let unmatched = m.unmatched_vertices();
    let free = InducedView::new(g, &unmatched)?;
    let ell = estimate_gmm_size_with(&free, cfg.eps, rng::derive(cfg.seed, 12), &cfg.gmm)?;
    let base = m.len() as f64;
    let value = core.value.max(base + ell.value);
    let idealized = match (core.idealized, cfg.idealize.then(|| exact_expectation(&free)).flatten()) {
        (Some(a), Some(l)) => Some(a.max(base + l)),
        _ => None,
    };
    Ok(EstimateReport {
        algorithm: Algorithm::BipartiteAdaptive,
        n: g.n(),
        m: g.m(),
        value,
        base_matching_size: m.len(),
        subsample_size: core.subsample,
        raw_g: core.raw,
        ell: Some(ell.raw),
        margin: core.margin.max(ell.margin),
        idealized,
        queries: core.queries + ell.queries,
        elapsed_micros: elapsed(start),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoThirdsConfig {
    pub delta: f64,
    /// Approximation slack for the `H` and `H'` matchings; must lie in
    /// `(0, delta / 100)`.
    pub eps: f64,
    pub seed: u64,
    pub gmm: GmmParams,
    pub idealize: bool,
}

impl TwoThirdsConfig {
    pub fn new(seed: u64) -> Self {
        Self::with_delta(TWO_THIRDS_DELTA, seed)
    }

    /// Uses `eps = delta / 200`.
    pub fn with_delta(delta: f64, seed: u64) -> Self {
        Self { delta, eps: delta / 200.0, seed, gmm: GmmParams::default(), idealize: true }
    }
}

/// Two-thirds estimator: `max(|M_H|, |M_H'| + g)` where `H'` joins low and
/// mid degree vertices of the EDCS and `g` estimates the greedy matching on
/// the mid vertices `M_H'` leaves free.
pub fn query_twothirds(g: &DynamicGraph, sides: &Bipartition, e: &Edcs, cfg: &TwoThirdsConfig) -> Result<EstimateReport> {
    let start = Instant::now();
    if !(cfg.delta > 0.0 && cfg.delta < 1.0) {
        return Err(invalid(format!("delta must lie in (0, 1), got {}", cfg.delta)));
    }
    if !(cfg.eps > 0.0 && cfg.eps < cfg.delta / 100.0) {
        return Err(invalid(format!("epsilon must lie in (0, delta/100), got {}", cfg.eps)));
    }
    if e.h().n() != g.n() {
        return Err(invalid("EDCS and graph sizes differ"));
    }
    sides.validate(g)?;
    let m_h = approx_matching_of(e.h(), sides, cfg.eps)?;
    let cls = e.classify();
    let h_prime = e.h_prime(&cls);
    let m_hp = approx_matching_of(&h_prime, sides, cfg.eps)?;
    let free_mid: Vec<VertexId> = cls.v_mid.iter().copied().filter(|&v| !m_hp.is_matched(v)).collect();
    let (left, right): (Vec<VertexId>, Vec<VertexId>) = free_mid.iter().partition(|&&v| sides.side(v) == Side::Left);
    let f = induced_view(g, &left, &right)?;

    let n = g.n().max(1) as f64;
    let (raw, g_tilde, margin, queries) = if cls.v_mid.is_empty() {
        (0.0, 0.0, 0.0, 0)
    } else {
        let eps_f = cfg.eps * cls.v_mid.len() as f64 / n;
        let est = estimate_gmm_size_with(&f, eps_f, rng::derive(cfg.seed, 20), &cfg.gmm)?;
        (est.raw, est.value, est.margin, est.queries)
    };
    let value = (m_h.len() as f64).max(m_hp.len() as f64 + g_tilde);
    let idealized = if cfg.idealize {
        exact_expectation(&f).map(|x| (m_h.len() as f64).max(m_hp.len() as f64 + x))
    } else {
        None
    };
    Ok(EstimateReport {
        algorithm: Algorithm::TwoThirds,
        n: g.n(),
        m: g.m(),
        value,
        base_matching_size: m_h.len(),
        subsample_size: m_hp.len(),
        raw_g: raw,
        ell: None,
        margin,
        idealized,
        queries,
        elapsed_micros: elapsed(start),
    })
}

/// Splits every `M`-edge across the two sides by a fair coin and places
/// every other vertex on a uniformly random side.
pub fn random_bipartition(g: &DynamicGraph, m: &Matching, seed: u64) -> Bipartition {
    let mut r = rng::from_seed(seed);
    let mut side = vec![Side::Left; g.n()];
    for v in 0..g.n() {
        match m.mate(v) {
            Some(w) if w < v => side[v] = side[w].other(),
            _ => side[v] = if r.gen_bool(0.5) { Side::Left } else { Side::Right },
        }
    }
    Bipartition::from_sides(side)
}

/// General-graph estimator: `|M| + max(l, sum of q_e)` where `q_e` is the
/// probability that both endpoints of `e in M'` are matched by greedy
/// matchings of the two one-sided slices of a random bipartite subgraph.
pub fn query_general(g: &DynamicGraph, m: &Matching, cfg: &QueryConfig) -> Result<EstimateReport> {
    let start = Instant::now();
    cfg.validate()?;
    check_sizes(g, m)?;
    let n = g.n();
    let base = m.len() as f64;
    let sides = random_bipartition(g, m, rng::derive(cfg.seed, 30));
    let m_prime = subsample(m, cfg.rate, rng::derive(cfg.seed, 31));
    let unmatched = m.unmatched_vertices();
    let (u_left, u_right): (Vec<VertexId>, Vec<VertexId>) = unmatched.iter().partition(|&&v| sides.side(v) == Side::Left);
    // Orient each M' edge as (left endpoint, right endpoint).
    let oriented: Vec<(VertexId, VertexId)> =
        m_prime.iter().map(|&(a, b)| if sides.side(a) == Side::Left { (a, b) } else { (b, a) }).collect();
    let vp_left: Vec<VertexId> = oriented.iter().map(|e| e.0).collect();
    let vp_right: Vec<VertexId> = oriented.iter().map(|e| e.1).collect();
    let h_left = induced_view(g, &vp_left, &u_right)?;
    let h_right = induced_view(g, &vp_right, &u_left)?;
    let free = InducedView::new(g, &unmatched)?;

    let idealized = if cfg.idealize { idealized_general(base, &oriented, &h_left, &h_right, &free) } else { None };

    let margin = 0.5 * cfg.eps * n as f64;
    let mut report = EstimateReport {
        algorithm: Algorithm::General,
        n,
        m: g.m(),
        value: base,
        base_matching_size: m.len(),
        subsample_size: m_prime.len(),
        raw_g: 0.0,
        ell: None,
        margin: 0.0,
        idealized,
        queries: 0,
        elapsed_micros: 0,
    };
    if m_prime.len() as f64 <= cfg.eps * n as f64 {
        report.elapsed_micros = elapsed(start);
        return Ok(report);
    }

    let k = (48.0 * (n.max(2) as f64).ln() / (cfg.eps * cfg.eps)).ceil() as u64;
    let eps_status = cfg.eps * cfg.eps / 2.0;
    let budget = status_budget(n, eps_status, oriented.len());
    let mut r = rng::from_seed(rng::derive(cfg.seed, 32));
    let mut hits = 0u64;
    let mut queries = 0u64;
    for i in 0..k {
        let (u, v) = oriented[r.gen_range(0..oriented.len())];
        let right = match_status_of(&h_right, v, budget, rng::derive(cfg.seed, 1_000 + 2 * i))?;
        let left = match_status_of(&h_left, u, budget, rng::derive(cfg.seed, 1_001 + 2 * i))?;
        queries += right.queries + left.queries;
        hits += (right.matched && left.matched) as u64;
    }
    let q = hits as f64 * m_prime.len() as f64 / k as f64;
    let ell = estimate_gmm_size_with(&free, cfg.eps, rng::derive(cfg.seed, 33), &cfg.gmm)?;
    report.value = base.max(base + ell.raw.max(q) - margin);
    report.raw_g = q;
    report.ell = Some(ell.raw);
    report.margin = margin;
    report.queries = queries + ell.queries;
    report.elapsed_micros = elapsed(start);
    Ok(report)
}

fn idealized_general<V: GraphView>(
    base: f64,
    oriented: &[(VertexId, VertexId)],
    h_left: &V,
    h_right: &V,
    free: &InducedView<'_>,
) -> Option<f64> {
    let el = h_left.edge_list();
    let er = h_right.edge_list();
    if el.len() > MAX_EXACT_EDGES || er.len() > MAX_EXACT_EDGES {
        return None;
    }
    let ell = exact_expectation(free)?;
    let gl = ExactGmm::from_edges(&el).ok()?;
    let gr = ExactGmm::from_edges(&er).ok()?;
    let q: f64 = oriented
        .iter()
        .map(|&(u, v)| ratio_f64(gl.match_probability(u)) * ratio_f64(gr.match_probability(v)))
        .sum();
    Some(base + ell.max(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edcs::gen_tight_instance;
    use crate::maximal::{MaintainedMatching, MatchingMode};
    use crate::oracles::{max_matching_bipartite, max_matching_general};

    fn perfect(n: usize) -> (DynamicGraph, Bipartition, Matching) {
        let edges: Vec<_> = (0..n / 2).map(|i| (i, n / 2 + i)).collect();
        let g = DynamicGraph::from_edges(n, &edges).unwrap();
        let m = Matching::from_edges(n, &edges).unwrap();
        (g, Bipartition::split_at(n, n / 2), m)
    }

    /// Path a-b-c-d as 0-1-2-3 with sides {0, 2} and {1, 3}; M = {(1, 2)}.
    fn path4() -> (DynamicGraph, Bipartition, Matching) {
        let g = DynamicGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let sides = Bipartition::from_sides(vec![Side::Left, Side::Right, Side::Left, Side::Right]);
        let m = Matching::from_edges(4, &[(1, 2)]).unwrap();
        (g, sides, m)
    }

    #[test]
    fn oblivious_on_perfect_matching() {
        let (g, sides, m) = perfect(20);
        let r = query_bipartite_oblivious(&g, &sides, &m, &QueryConfig::new(0.1, OBLIVIOUS_RATE, 1)).unwrap();
        assert_eq!(r.value, 10.0);
        assert_eq!(r.idealized, Some(10.0));
    }

    #[test]
    fn oblivious_on_empty_graph() {
        let g = DynamicGraph::new(6);
        let r = query_bipartite_oblivious(&g, &Bipartition::split_at(6, 3), &Matching::new(6), &QueryConfig::new(0.1, OBLIVIOUS_RATE, 1))
            .unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn oblivious_path_outcomes() {
        // If (b, c) is sampled, H = {(a, b), (c, d)} and the idealized value
        // is 1 + (2 - 1) = 2; otherwise H is empty and the value is 1.
        let (g, sides, m) = path4();
        let mut seen = [false; 2];
        let trials = 4000;
        let mut sampled = 0;
        for seed in 0..trials {
            let r = query_bipartite_oblivious(&g, &sides, &m, &QueryConfig::new(0.01, OBLIVIOUS_RATE, seed)).unwrap();
            let ideal = r.idealized.unwrap();
            if r.subsample_size == 1 {
                assert_eq!(ideal, 2.0);
                sampled += 1;
                seen[1] = true;
            } else {
                assert_eq!(ideal, 1.0);
                seen[0] = true;
            }
            assert!(r.value <= 2.0);
        }
        assert!(seen[0] && seen[1]);
        let freq = sampled as f64 / trials as f64;
        let se = (OBLIVIOUS_RATE * (1.0 - OBLIVIOUS_RATE) / trials as f64).sqrt();
        assert!((freq - OBLIVIOUS_RATE).abs() < 4.0 * se);
    }

    #[test]
    fn non_bipartite_rejected() {
        let g = DynamicGraph::from_edges(4, &[(0, 1)]).unwrap();
        let sides = Bipartition::split_at(4, 2);
        let m = Matching::new(4);
        let cfg = QueryConfig::new(0.1, OBLIVIOUS_RATE, 1);
        assert!(matches!(query_bipartite_oblivious(&g, &sides, &m, &cfg), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn adaptive_reduces_for_maximal() {
        let (g, sides, m) = path4();
        let r = query_bipartite_adaptive(&g, &sides, &m, &QueryConfig::new(0.01, ADAPTIVE_RATE, 3)).unwrap();
        assert_eq!(r.ell, Some(0.0));
        let g0 = DynamicGraph::new(4);
        let r0 = query_bipartite_adaptive(&g0, &sides, &Matching::new(4), &QueryConfig::new(0.1, ADAPTIVE_RATE, 3)).unwrap();
        assert_eq!(r0.value, 0.0);
    }

    #[test]
    fn adaptive_with_empty_matching_uses_free_branch() {
        let (g, sides, _) = perfect(40);
        let empty = Matching::new(40);
        let r = query_bipartite_adaptive(&g, &sides, &empty, &QueryConfig::new(0.05, ADAPTIVE_RATE, 9)).unwrap();
        // Every greedy matching of a perfect matching is the whole matching.
        assert_eq!(r.ell, Some(20.0));
        assert!(r.value >= 20.0 - 0.05 * 40.0 / 2.0 - 1e-9);
        assert!(r.value <= 20.0);
    }

    #[test]
    fn twothirds_examples() {
        let (g, sides, m) = perfect(20);
        let e = Edcs::build(&g, 8, 0.1).unwrap();
        assert_eq!(e.h().m(), m.len());
        let r = query_twothirds(&g, &sides, &e, &TwoThirdsConfig::new(1)).unwrap();
        assert_eq!(r.value, 10.0);

        let g0 = DynamicGraph::new(6);
        let e0 = Edcs::build(&g0, 8, 0.1).unwrap();
        let r0 = query_twothirds(&g0, &Bipartition::split_at(6, 3), &e0, &TwoThirdsConfig::new(1)).unwrap();
        assert_eq!(r0.value, 0.0);

        let bad = TwoThirdsConfig { eps: 0.1, ..TwoThirdsConfig::new(1) };
        assert!(query_twothirds(&g, &sides, &e, &bad).is_err());
    }

    #[test]
    fn twothirds_on_tight_instance() {
        let t = gen_tight_instance(50, 16).unwrap();
        let mu = max_matching_bipartite(&t.graph, &t.sides, None).unwrap().len() as f64;
        for seed in 0..3 {
            let r = query_twothirds(&t.graph, &t.sides, &t.edcs, &TwoThirdsConfig::new(seed)).unwrap();
            assert!(r.value >= (2.0 / 3.0 + TWO_THIRDS_GAIN) * mu, "value {}", r.value);
            assert!(r.value <= mu);
        }
    }

    #[test]
    fn bipartition_splits_matching_edges() {
        let (g, _, m) = perfect(10);
        for seed in 0..20 {
            let b = random_bipartition(&g, &m, seed);
            for (u, v) in m.edges() {
                assert_ne!(b.side(u), b.side(v));
            }
        }
    }

    #[test]
    fn bipartition_free_vertex_frequency() {
        let g = DynamicGraph::new(3);
        let m = Matching::new(3);
        let trials = 10_000;
        let left = (0..trials).filter(|&s| random_bipartition(&g, &m, s).side(2) == Side::Left).count();
        let f = left as f64 / trials as f64;
        assert!((f - 0.5).abs() < 4.0 * (0.25 / trials as f64).sqrt());
        let mut labelings = std::collections::BTreeSet::new();
        for s in 0..200 {
            let b = random_bipartition(&DynamicGraph::new(2), &Matching::new(2), s);
            labelings.insert((b.side(0) == Side::Left, b.side(1) == Side::Left));
        }
        assert_eq!(labelings.len(), 4);
    }

    #[test]
    fn general_examples() {
        let (g, _, m) = perfect(20);
        let r = query_general(&g, &m, &QueryConfig::new(0.05, GENERAL_RATE, 4)).unwrap();
        assert_eq!(r.value, 10.0);
        let g0 = DynamicGraph::new(5);
        let r0 = query_general(&g0, &Matching::new(5), &QueryConfig::new(0.05, GENERAL_RATE, 4)).unwrap();
        assert_eq!(r0.value, 0.0);
    }

    #[test]
    fn general_path_idealized_mean() {
        // Path a-b-c-d with M = {(b, c)}, sampled at rate 1: the Q-term is 1
        // exactly when a and d land opposite to their M-neighbours, which has
        // probability 1/4.
        let g = DynamicGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = Matching::from_edges(4, &[(1, 2)]).unwrap();
        let trials = 8000;
        let mut sum = 0.0;
        for seed in 0..trials {
            let r = query_general(&g, &m, &QueryConfig::new(0.9, 1.0, seed)).unwrap();
            let ideal = r.idealized.unwrap();
            assert!(ideal <= 2.0 + 1e-12);
            sum += ideal - 1.0;
        }
        let mean = sum / trials as f64;
        let se = (0.25 * 0.75 / trials as f64).sqrt();
        assert!((mean - 0.25).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn general_sampling_branch_runs() {
        let mut g = DynamicGraph::new(60);
        let mut r = rng::from_seed(2);
        for _ in 0..150 {
            let (u, v) = (r.gen_range(0..60), r.gen_range(0..60));
            if u != v {
                g.insert_edge(u, v).unwrap();
            }
        }
        let mm = MaintainedMatching::from_graph(&g, MatchingMode::Maximal);
        let mu = max_matching_general(&g) as f64;
        let rep = query_general(&g, mm.matching(), &QueryConfig::new(0.2, 1.0, 5)).unwrap();
        assert!(rep.ell.is_some());
        assert!(rep.value >= mm.len() as f64);
        assert!(rep.value <= mu + 1e-9 || rep.value <= mm.len() as f64 + 0.5 * 0.2 * 60.0);
    }
}
