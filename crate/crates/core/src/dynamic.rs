//! Turning query-time estimators into fully dynamic ones: lazy refreshing,
//! work spreading, amplification and vertex sparsification.

use std::collections::HashMap;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::edcs::Edcs;
use crate::error::{invalid, Result};
use crate::estimators::{
    query_bipartite_adaptive, query_bipartite_oblivious, query_general, query_twothirds, Algorithm, EstimateReport, QueryConfig,
    TwoThirdsConfig, ADAPTIVE_RATE, GENERAL_RATE, OBLIVIOUS_RATE,
};
use crate::graph::{edge_key, Bipartition, DynamicGraph, EventKind, UpdateEvent, VertexId};
use crate::greedy::GmmParams;
use crate::maximal::{MaintainedMatching, MatchingMode};
use crate::rng;

/// A structure updated on every edge event that answers size queries.
pub trait SemiDynamic {
    /// Call after `ev` was applied to `g`.
    fn observe(&mut self, g: &DynamicGraph, ev: &UpdateEvent) -> Result<()>;
    fn query(&self, g: &DynamicGraph, seed: u64) -> Result<EstimateReport>;
}

/// Maintained maximal matching bound to one of the matching-based queries.
#[derive(Debug, Clone)]
pub struct MatchingPipeline {
    algorithm: Algorithm,
    sides: Option<Bipartition>,
    matching: MaintainedMatching,
    eps: f64,
    rate: f64,
    gmm: GmmParams,
}

impl MatchingPipeline {
    /// `sides` is required for the bipartite algorithms and ignored otherwise.
    pub fn new(g: &DynamicGraph, algorithm: Algorithm, sides: Option<Bipartition>, mode: MatchingMode, eps: f64) -> Result<Self> {
        let rate = match algorithm {
            Algorithm::BipartiteOblivious => OBLIVIOUS_RATE,
            Algorithm::BipartiteAdaptive => ADAPTIVE_RATE,
            Algorithm::General => GENERAL_RATE,
            Algorithm::TwoThirds => return Err(invalid("the two-thirds estimator runs on an EDCS pipeline")),
        };
        if algorithm != Algorithm::General && sides.is_none() {
            return Err(invalid("bipartite algorithms need a bipartition"));
        }
        Ok(Self { algorithm, sides, matching: MaintainedMatching::from_graph(g, mode), eps, rate, gmm: GmmParams::default() })
    }

    pub fn with_gmm(mut self, gmm: GmmParams) -> Self {
        self.gmm = gmm;
        self
    }

    pub fn matching(&self) -> &MaintainedMatching {
        &self.matching
    }
}

impl SemiDynamic for MatchingPipeline {
    fn observe(&mut self, g: &DynamicGraph, ev: &UpdateEvent) -> Result<()> {
        match ev.kind {
            EventKind::Insert => self.matching.on_insert(g, ev.u, ev.v),
            EventKind::Delete => self.matching.on_delete(g, ev.u, ev.v),
        }
        Ok(())
    }

    fn query(&self, g: &DynamicGraph, seed: u64) -> Result<EstimateReport> {
        let cfg = QueryConfig { gmm: self.gmm, idealize: false, ..QueryConfig::new(self.eps, self.rate, seed) };
        let m = self.matching.matching();
        match (self.algorithm, &self.sides) {
            (Algorithm::BipartiteOblivious, Some(s)) => query_bipartite_oblivious(g, s, m, &cfg),
            (Algorithm::BipartiteAdaptive, Some(s)) => query_bipartite_adaptive(g, s, m, &cfg),
            _ => query_general(g, m, &cfg),
        }
    }
}

/// Maintained EDCS bound to the two-thirds query.
#[derive(Debug, Clone)]
pub struct EdcsPipeline {
    sides: Bipartition,
    edcs: Edcs,
    cfg: TwoThirdsConfig,
}

impl EdcsPipeline {
    pub fn new(g: &DynamicGraph, sides: Bipartition, beta: usize, edcs_eps: f64, cfg: TwoThirdsConfig) -> Result<Self> {
        let edcs = Edcs::build(g, beta, edcs_eps)?;
        Ok(Self { sides, edcs, cfg: TwoThirdsConfig { idealize: false, ..cfg } })
    }

    pub fn edcs(&self) -> &Edcs {
        &self.edcs
    }
}

impl SemiDynamic for EdcsPipeline {
    fn observe(&mut self, g: &DynamicGraph, ev: &UpdateEvent) -> Result<()> {
        self.edcs.apply_update(g, ev).map(|_| ())
    }

    fn query(&self, g: &DynamicGraph, seed: u64) -> Result<EstimateReport> {
        query_twothirds(g, &self.sides, &self.edcs, &TwoThirdsConfig { seed, ..self.cfg })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LazyMode {
    /// Window `eps * n`; publishes `value - 2 eps n`.
    Additive { eps: f64 },
    /// Window `eps * value`; publishes `(1 - eps) value`.
    Multiplicative { eps: f64 },
}

impl LazyMode {
    fn eps(self) -> f64 {
        match self {
            LazyMode::Additive { eps } | LazyMode::Multiplicative { eps } => eps,
        }
    }

    fn window(self, n: usize, value: f64) -> u64 {
        let w = match self {
            LazyMode::Additive { eps } => eps * n as f64,
            LazyMode::Multiplicative { eps } => eps * value,
        };
        (w.floor() as u64).max(1)
    }

    fn publish(self, n: usize, value: f64) -> f64 {
        match self {
            LazyMode::Additive { eps } => (value - 2.0 * eps * n as f64).max(0.0),
            LazyMode::Multiplicative { eps } => (1.0 - eps) * value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Pending {
    value: f64,
    remaining: u64,
}

/// Republishes a query result for a window of updates.
///
/// In spreading mode a refresh computes on the graph at window expiry and
/// releases its query work at most `step_budget` units per update; the value
/// is published once the work is fully released.
#[derive(Debug, Clone)]
pub struct LazyEstimator {
    mode: LazyMode,
    seed: u64,
    step_budget: Option<u64>,
    window: u64,
    updates_since: u64,
    last_value: f64,
    published: f64,
    refreshes: u64,
    pending: Option<Pending>,
    last_work: u64,
}

impl LazyEstimator {
    /// Performs the initial refresh on `g`.
    pub fn new<E: SemiDynamic + ?Sized>(inner: &E, g: &DynamicGraph, mode: LazyMode, seed: u64, step_budget: Option<u64>) -> Result<Self> {
        let eps = mode.eps();
        if !(eps > 0.0 && eps < 1.0) {
            return Err(invalid(format!("lazy epsilon must lie in (0, 1), got {eps}")));
        }
        if step_budget == Some(0) {
            return Err(invalid("step budget must be positive"));
        }
        let mut le = Self {
            mode,
            seed,
            step_budget,
            window: 1,
            updates_since: 0,
            last_value: 0.0,
            published: 0.0,
            refreshes: 0,
            pending: None,
            last_work: 0,
        };
        let (value, _) = le.compute(inner, g)?;
        le.publish(g.n(), value);
        Ok(le)
    }

    fn compute<E: SemiDynamic + ?Sized>(&mut self, inner: &E, g: &DynamicGraph) -> Result<(f64, u64)> {
        let report = inner.query(g, rng::derive(self.seed, self.refreshes))?;
        self.refreshes += 1;
        self.window = self.mode.window(g.n(), report.value);
        self.updates_since = 0;
        Ok((report.value, report.queries.max(1)))
    }

    fn publish(&mut self, n: usize, value: f64) {
        self.last_value = value;
        self.published = self.mode.publish(n, value);
    }

    /// Call after the event was applied to `g` and observed by `inner`.
    pub fn on_update<E: SemiDynamic + ?Sized>(&mut self, inner: &E, g: &DynamicGraph) -> Result<f64> {
        self.updates_since += 1;
        self.last_work = 0;
        if self.pending.is_none() && self.updates_since >= self.window {
            let (value, work) = self.compute(inner, g)?;
            match self.step_budget {
                None => {
                    self.last_work = work;
                    self.publish(g.n(), value);
                }
                Some(_) => self.pending = Some(Pending { value, remaining: work }),
            }
        }
        if let (Some(p), Some(budget)) = (self.pending.as_mut(), self.step_budget) {
            let step = p.remaining.min(budget);
            p.remaining -= step;
            self.last_work = step;
            if p.remaining == 0 {
                let value = p.value;
                self.pending = None;
                self.publish(g.n(), value);
            }
        }
        Ok(self.published)
    }

    pub fn published(&self) -> f64 {
        self.published
    }

    /// Raw value of the latest published refresh.
    pub fn last_value(&self) -> f64 {
        self.last_value
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn refreshes(&self) -> u64 {
        self.refreshes
    }

    /// Query work charged to the latest update.
    pub fn last_work(&self) -> u64 {
        self.last_work
    }

    pub fn is_pending(&self) -> bool {
        self.pending.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Combine {
    #[default]
    Mean,
    Median,
}

pub fn combine_values(values: &[f64], combine: Combine) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    match combine {
        Combine::Mean => values.iter().sum::<f64>() / values.len() as f64,
        Combine::Median => {
            let mut v = values.to_vec();
            v.sort_by(f64::total_cmp);
            let mid = v.len() / 2;
            if v.len() % 2 == 1 {
                v[mid]
            } else {
                (v[mid - 1] + v[mid]) / 2.0
            }
        }
    }
}

/// Number of instances `ceil(c ln n)`, at least one.
pub fn instance_count(n: usize, c: f64) -> usize {
    ((c * (n.max(2) as f64).ln()).ceil() as usize).max(1)
}

/// Independent lazy estimators sharing one maintained structure and graph.
#[derive(Debug, Clone)]
pub struct AmplifiedEstimator<E> {
    inner: E,
    instances: Vec<LazyEstimator>,
    combine: Combine,
}

impl<E: SemiDynamic> AmplifiedEstimator<E> {
    pub fn new(
        inner: E,
        g: &DynamicGraph,
        count: usize,
        mode: LazyMode,
        seed: u64,
        step_budget: Option<u64>,
        combine: Combine,
    ) -> Result<Self> {
        if count == 0 {
            return Err(invalid("need at least one instance"));
        }
        let instances = (0..count as u64)
            .map(|i| LazyEstimator::new(&inner, g, mode, rng::derive(seed, i), step_budget))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { inner, instances, combine })
    }

    /// Applies `ev` to `g`, the maintained structure and every instance.
    pub fn on_update(&mut self, g: &mut DynamicGraph, ev: &UpdateEvent) -> Result<f64> {
        g.apply(ev)?;
        self.inner.observe(g, ev)?;
        for le in &mut self.instances {
            le.on_update(&self.inner, g)?;
        }
        Ok(self.value())
    }

    pub fn value(&self) -> f64 {
        let v: Vec<f64> = self.instances.iter().map(LazyEstimator::published).collect();
        combine_values(&v, self.combine)
    }

    /// Total query work charged to the latest update.
    pub fn last_work(&self) -> u64 {
        self.instances.iter().map(LazyEstimator::last_work).sum()
    }

    /// Largest per-instance work charged to the latest update.
    pub fn max_instance_work(&self) -> u64 {
        self.instances.iter().map(LazyEstimator::last_work).max().unwrap_or(0)
    }

    pub fn instances(&self) -> &[LazyEstimator] {
        &self.instances
    }

    pub fn inner(&self) -> &E {
        &self.inner
    }
}

/// A random contraction of the vertex set, maintained under edge updates.
#[derive(Debug, Clone)]
pub struct ContractedGraph {
    map: Vec<VertexId>,
    graph: DynamicGraph,
    multiplicity: HashMap<(VertexId, VertexId), u32>,
}

impl ContractedGraph {
    pub fn new(g: &DynamicGraph, target_size: usize, seed: u64) -> Result<Self> {
        if target_size < 2 {
            return Err(invalid(format!("target size must be at least 2, got {target_size}")));
        }
        let mut r = rng::from_seed(seed);
        let map = (0..g.n()).map(|_| r.gen_range(0..target_size)).collect();
        let mut c = Self { map, graph: DynamicGraph::new(target_size), multiplicity: HashMap::new() };
        for (u, v) in g.edges() {
            c.add(u, v)?;
        }
        Ok(c)
    }

    fn image(&self, u: VertexId, v: VertexId) -> Option<(VertexId, VertexId)> {
        let (a, b) = (self.map[u], self.map[v]);
        (a != b).then(|| edge_key(a, b))
    }

    fn add(&mut self, u: VertexId, v: VertexId) -> Result<Option<UpdateEvent>> {
        let Some((a, b)) = self.image(u, v) else { return Ok(None) };
        let c = self.multiplicity.entry((a, b)).or_insert(0);
        *c += 1;
        if *c > 1 {
            return Ok(None);
        }
        self.graph.insert_edge(a, b)?;
        Ok(Some(UpdateEvent::insert(a, b)))
    }

    fn remove(&mut self, u: VertexId, v: VertexId) -> Result<Option<UpdateEvent>> {
        let Some(key) = self.image(u, v) else { return Ok(None) };
        let c = self.multiplicity.get_mut(&key).ok_or_else(|| invalid("deleting an edge absent from the contraction"))?;
        *c -= 1;
        if *c > 0 {
            return Ok(None);
        }
        self.multiplicity.remove(&key);
        self.graph.delete_edge(key.0, key.1)?;
        Ok(Some(UpdateEvent::delete(key.0, key.1)))
    }

    /// Call after `ev` was applied to the original graph. Returns the event
    /// induced on the contracted graph, if any.
    pub fn apply(&mut self, ev: &UpdateEvent) -> Result<Option<UpdateEvent>> {
        if ev.u >= self.map.len() || ev.v >= self.map.len() {
            return Err(invalid("event vertex out of range"));
        }
        match ev.kind {
            EventKind::Insert => self.add(ev.u, ev.v),
            EventKind::Delete => self.remove(ev.u, ev.v),
        }
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn map(&self) -> &[VertexId] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.graph.n()];
        self.map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    /// Number of original edges behind contracted edge `{a, b}`.
    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> u32 {
        self.multiplicity.get(&edge_key(a, b)).copied().unwrap_or(0)
    }
}

/// `copies` independent random contractions of `g` onto `target_size` vertices.
pub fn vertex_sparsify(g: &DynamicGraph, target_size: usize, copies: usize, seed: u64) -> Result<Vec<ContractedGraph>> {
    (0..copies as u64).map(|i| ContractedGraph::new(g, target_size, rng::derive(seed, i))).collect()
}

/// Lazy estimators running on independent contractions; publishes the
/// largest value over the copies.
pub struct SparsifiedEstimator<E> {
    copies: Vec<(ContractedGraph, E, LazyEstimator)>,
}

impl<E: SemiDynamic> SparsifiedEstimator<E> {
    /// `make` builds the maintained structure for one contracted graph.
    pub fn new(
        g: &DynamicGraph,
        target_size: usize,
        copies: usize,
        mode: LazyMode,
        seed: u64,
        mut make: impl FnMut(&DynamicGraph) -> Result<E>,
    ) -> Result<Self> {
        if copies == 0 {
            return Err(invalid("need at least one copy"));
        }
        let copies = vertex_sparsify(g, target_size, copies, rng::derive(seed, 100))?
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let inner = make(c.graph())?;
                let lazy = LazyEstimator::new(&inner, c.graph(), mode, rng::derive(seed, 200 + i as u64), None)?;
                Ok((c, inner, lazy))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { copies })
    }

    /// Applies `ev` to `g` and forwards the induced events to every copy.
    pub fn on_update(&mut self, g: &mut DynamicGraph, ev: &UpdateEvent) -> Result<f64> {
        g.apply(ev)?;
        for (c, inner, lazy) in &mut self.copies {
            if let Some(cev) = c.apply(ev)? {
                inner.observe(c.graph(), &cev)?;
            }
            lazy.on_update(inner, c.graph())?;
        }
        Ok(self.value())
    }

    pub fn value(&self) -> f64 {
        self.copies.iter().map(|(_, _, l)| l.published()).fold(0.0, f64::max)
    }

    pub fn last_work(&self) -> u64 {
        self.copies.iter().map(|(_, _, l)| l.last_work()).sum()
    }

    pub fn copies(&self) -> impl Iterator<Item = &ContractedGraph> {
        self.copies.iter().map(|(c, _, _)| c)
    }
}
