//! Binds a stream, a maintained structure and an estimator pipeline, and
//! records checkpoints against exact oracles.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use dynmatch::dynamic::{
    instance_count, AmplifiedEstimator, Combine, EdcsPipeline, LazyMode, MatchingPipeline, SemiDynamic, SparsifiedEstimator,
};
use dynmatch::estimators::{Algorithm, TwoThirdsConfig};
use dynmatch::maximal::MatchingMode;
use dynmatch::oracles::{max_matching_bipartite, max_matching_general};
use dynmatch::rng;
use dynmatch::{Bipartition, DynamicGraph, UpdateEvent, UpdateStream};

use crate::error::{invalid, Result};
use crate::generators::{default_sides, gen_stream, GenParams, GeneratorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsifyGrid {
    pub target_size: usize,
    pub copies: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub generator: GeneratorKind,
    pub params: GenParams,
    pub algorithm: Algorithm,
    pub checkpoint_interval: usize,
    pub trials: usize,
    pub seed: u64,
    /// Query slack of the estimator.
    pub epsilon: f64,
    /// Refresh slack of the lazy wrapper.
    pub lazy_epsilon: f64,
    pub beta: usize,
    /// EDCS lower-threshold slack.
    pub edcs_epsilon: f64,
    pub delta: f64,
    /// Per-update work budget; `None` refreshes in one step.
    pub spreading: Option<u64>,
    /// Number of amplified instances; `0` means `ceil(ln n)`.
    pub amplify: usize,
    pub combine: Combine,
    pub sparsify: Option<SparsifyGrid>,
    /// Largest `n` for which the general exact oracle runs at checkpoints.
    pub exact_general_limit: usize,
    /// Maintain the matching without rematching after deletions.
    pub lazy_matching: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            generator: GeneratorKind::ErSlidingWindow,
            params: GenParams::default(),
            algorithm: Algorithm::BipartiteOblivious,
            checkpoint_interval: 100,
            trials: 1,
            seed: 1,
            epsilon: 0.05,
            lazy_epsilon: 0.01,
            beta: 16,
            edcs_epsilon: 1.0 / 8.0,
            delta: 0.02,
            spreading: None,
            amplify: 0,
            combine: Combine::Mean,
            sparsify: None,
            exact_general_limit: 400,
            lazy_matching: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.checkpoint_interval == 0 || self.trials == 0 || self.params.n == 0 {
            return Err(invalid("checkpoint interval, trials and n must be positive"));
        }
        if self.generator != GeneratorKind::TightEdcsReveal && self.generator != GeneratorKind::Scripted && self.params.length == 0 {
            return Err(invalid("stream length must be positive"));
        }
        if self.sparsify.is_some() && self.algorithm != Algorithm::General {
            return Err(invalid("sparsification runs the general estimator on contracted graphs"));
        }
        Ok(())
    }

    fn is_bipartite(&self) -> bool {
        self.algorithm != Algorithm::General
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointRow {
    pub trial: usize,
    pub event: usize,
    pub mu_exact: Option<usize>,
    pub value: f64,
    pub ratio: Option<f64>,
    /// Largest per-update query work since the previous checkpoint.
    pub work: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub checkpoints: usize,
    pub exact_checkpoints: usize,
    pub min_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    /// Checkpoints whose value exceeds the exact maximum matching.
    pub upper_violations: usize,
    pub total_work: u64,
    pub max_update_work: u64,
    pub wall_micros: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub config: ExperimentConfig,
    pub rows: Vec<CheckpointRow>,
    pub aggregates: Aggregates,
}

impl RunSummary {
    /// Fraction of exact checkpoints with `lower * mu <= value <= mu`.
    pub fn fraction_within(&self, lower: f64) -> f64 {
        let exact: Vec<_> = self.rows.iter().filter_map(|r| r.mu_exact.map(|m| (m as f64, r.value))).collect();
        if exact.is_empty() {
            return 0.0;
        }
        let ok = exact.iter().filter(|&&(mu, v)| v <= mu + 1e-9 && v >= lower * mu - 1e-9).count();
        ok as f64 / exact.len() as f64
    }
}

/// Aggregates computed from rows alone plus the external work and time totals.
pub fn aggregate(rows: &[CheckpointRow], total_work: u64, wall_micros: u64) -> Aggregates {
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    Aggregates {
        checkpoints: rows.len(),
        exact_checkpoints: rows.iter().filter(|r| r.mu_exact.is_some()).count(),
        min_ratio: ratios.iter().copied().reduce(f64::min),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        upper_violations: rows.iter().filter(|r| r.mu_exact.is_some_and(|m| r.value > m as f64 + 1e-9)).count(),
        total_work,
        max_update_work: rows.iter().map(|r| r.work).max().unwrap_or(0),
        wall_micros,
    }
}

enum Pipeline {
    Matching(AmplifiedEstimator<MatchingPipeline>),
    Edcs(AmplifiedEstimator<EdcsPipeline>),
    Sparsified(SparsifiedEstimator<MatchingPipeline>),
}

impl Pipeline {
    fn on_update(&mut self, g: &mut DynamicGraph, ev: &UpdateEvent) -> Result<(f64, u64)> {
        Ok(match self {
            Pipeline::Matching(a) => (a.on_update(g, ev)?, a.last_work()),
            Pipeline::Edcs(a) => (a.on_update(g, ev)?, a.last_work()),
            Pipeline::Sparsified(s) => (s.on_update(g, ev)?, s.last_work()),
        })
    }

    fn value(&self) -> f64 {
        match self {
            Pipeline::Matching(a) => a.value(),
            Pipeline::Edcs(a) => a.value(),
            Pipeline::Sparsified(s) => s.value(),
        }
    }
}

fn amplify<E: SemiDynamic>(inner: E, g: &DynamicGraph, cfg: &ExperimentConfig, seed: u64) -> Result<AmplifiedEstimator<E>> {
    let count = if cfg.amplify == 0 { instance_count(g.n(), 1.0) } else { cfg.amplify };
    let mode = LazyMode::Additive { eps: cfg.lazy_epsilon };
    Ok(AmplifiedEstimator::new(inner, g, count, mode, seed, cfg.spreading, cfg.combine)?)
}

fn build_pipeline(cfg: &ExperimentConfig, g: &DynamicGraph, sides: &Bipartition, seed: u64) -> Result<Pipeline> {
    let mode = if cfg.lazy_matching { MatchingMode::Lazy } else { MatchingMode::Maximal };
    if let Some(grid) = cfg.sparsify {
        let lazy = LazyMode::Additive { eps: cfg.lazy_epsilon };
        let eps = cfg.epsilon;
        return Ok(Pipeline::Sparsified(SparsifiedEstimator::new(g, grid.target_size, grid.copies, lazy, seed, |cg| {
            MatchingPipeline::new(cg, Algorithm::General, None, mode, eps)
        })?));
    }
    Ok(match cfg.algorithm {
        Algorithm::TwoThirds => {
            let tcfg = TwoThirdsConfig::with_delta(cfg.delta, seed);
            Pipeline::Edcs(amplify(EdcsPipeline::new(g, sides.clone(), cfg.beta, cfg.edcs_epsilon, tcfg)?, g, cfg, seed)?)
        }
        alg => {
            let s = (alg != Algorithm::General).then(|| sides.clone());
            Pipeline::Matching(amplify(MatchingPipeline::new(g, alg, s, mode, cfg.epsilon)?, g, cfg, seed)?)
        }
    })
}

fn exact_mu(cfg: &ExperimentConfig, g: &DynamicGraph, sides: &Bipartition) -> Result<Option<usize>> {
    if cfg.is_bipartite() {
        return Ok(Some(max_matching_bipartite(g, sides, None)?.len()));
    }
    Ok((g.n() <= cfg.exact_general_limit).then(|| max_matching_general(g)))
}

/// Runs one trial over a given stream.
pub fn run_stream(cfg: &ExperimentConfig, stream: &UpdateStream, trial: usize, seed: u64) -> Result<(Vec<CheckpointRow>, u64)> {
    let n = stream.n;
    let sides = default_sides(n);
    let mut g = DynamicGraph::new(n);
    let mut pipe = build_pipeline(cfg, &g, &sides, seed)?;
    let mut rows = Vec::new();
    let mut window_work = 0u64;
    let mut total = 0u64;
    let len = stream.events.len();
    let push_row = |g: &DynamicGraph, event: usize, value: f64, work: u64, rows: &mut Vec<CheckpointRow>| -> Result<()> {
        let mu = exact_mu(cfg, g, &sides)?;
        let ratio = mu.and_then(|m| (m > 0).then(|| value / m as f64));
        rows.push(CheckpointRow { trial, event, mu_exact: mu, value, ratio, work });
        Ok(())
    };
    if len == 0 {
        push_row(&g, 0, pipe.value(), 0, &mut rows)?;
    }
    for (i, ev) in stream.events.iter().enumerate() {
        let (value, work) = pipe.on_update(&mut g, ev)?;
        window_work = window_work.max(work);
        total += work;
        let event = i + 1;
        if event % cfg.checkpoint_interval == 0 || event == len {
            push_row(&g, event, value, window_work, &mut rows)?;
            window_work = 0;
        }
    }
    Ok((rows, total))
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut total = 0;
    for trial in 0..cfg.trials {
        let stream = gen_stream(cfg.generator, &cfg.params, rng::derive(cfg.seed, 2 * trial as u64))?;
        let (r, w) = run_stream(cfg, &stream, trial, rng::derive(cfg.seed, 2 * trial as u64 + 1))?;
        rows.extend(r);
        total += w;
    }
    let wall = start.elapsed().as_micros().min(u64::MAX as u128) as u64;
    Ok(RunSummary { config: cfg.clone(), aggregates: aggregate(&rows, total, wall), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::rows_to_csv;

    fn scripted_cfg(script: &str) -> ExperimentConfig {
        ExperimentConfig {
            generator: GeneratorKind::Scripted,
            params: GenParams { n: 2, script: Some(script.into()), ..Default::default() },
            checkpoint_interval: 1000,
            lazy_epsilon: 0.25,
            ..Default::default()
        }
    }

    #[test]
    fn trivial_scripted_run() {
        let s = run_experiment(&scripted_cfg("+0 1 / -0 1")).unwrap();
        assert_eq!(s.rows.len(), 1);
        assert_eq!(s.rows[0].event, 2);
        assert_eq!(s.rows[0].value, 0.0);
        assert_eq!(s.rows[0].mu_exact, Some(0));
    }

    #[test]
    fn same_seed_same_csv() {
        let cfg = ExperimentConfig {
            params: GenParams { n: 60, length: 600, window: 120, ..Default::default() },
            checkpoint_interval: 50,
            trials: 2,
            ..Default::default()
        };
        let a = rows_to_csv(&run_experiment(&cfg).unwrap().rows).unwrap();
        let b = rows_to_csv(&run_experiment(&cfg).unwrap().rows).unwrap();
        assert_eq!(a, b);
        assert!(a.lines().count() > 10);
    }

    #[test]
    fn aggregates_recomputable_from_rows() {
        let cfg = ExperimentConfig {
            params: GenParams { n: 40, length: 300, window: 80, ..Default::default() },
            checkpoint_interval: 30,
            ..Default::default()
        };
        let s = run_experiment(&cfg).unwrap();
        let again = aggregate(&s.rows, s.aggregates.total_work, s.aggregates.wall_micros);
        assert_eq!(again, s.aggregates);
        assert_eq!(s.aggregates.upper_violations, 0);
    }

    #[test]
    fn every_algorithm_runs() {
        for alg in [Algorithm::BipartiteOblivious, Algorithm::BipartiteAdaptive, Algorithm::TwoThirds, Algorithm::General] {
            let cfg = ExperimentConfig {
                algorithm: alg,
                params: GenParams { n: 40, length: 200, window: 60, ..Default::default() },
                checkpoint_interval: 50,
                amplify: 2,
                ..Default::default()
            };
            let s = run_experiment(&cfg).unwrap();
            assert_eq!(s.rows.len(), 4, "{alg}");
        }
        let cfg = ExperimentConfig {
            algorithm: Algorithm::General,
            params: GenParams { n: 40, length: 200, window: 60, bipartite: false, ..Default::default() },
            sparsify: Some(SparsifyGrid { target_size: 80, copies: 2 }),
            checkpoint_interval: 50,
            ..Default::default()
        };
        assert_eq!(run_experiment(&cfg).unwrap().rows.len(), 4);
    }

    #[test]
    fn bad_config_rejected() {
        assert!(run_experiment(&ExperimentConfig { trials: 0, ..Default::default() }).is_err());
        assert!(run_experiment(&ExperimentConfig { sparsify: Some(SparsifyGrid { target_size: 4, copies: 1 }), ..Default::default() }).is_err());
    }
}
