//! Replayable update streams.

use std::collections::VecDeque;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use dynmatch::edcs::gen_tight_instance;
use dynmatch::maximal::{MaintainedMatching, MatchingMode};
use dynmatch::rng;
use dynmatch::{Bipartition, DynamicGraph, UpdateEvent, UpdateStream, VertexId};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    ErSlidingWindow,
    BipartiteRandom,
    TightEdcsReveal,
    AdaptiveMatchedDeleter,
    Scripted,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 5] = [
        GeneratorKind::ErSlidingWindow,
        GeneratorKind::BipartiteRandom,
        GeneratorKind::TightEdcsReveal,
        GeneratorKind::AdaptiveMatchedDeleter,
        GeneratorKind::Scripted,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            GeneratorKind::ErSlidingWindow => "er_sliding_window",
            GeneratorKind::BipartiteRandom => "bipartite_random",
            GeneratorKind::TightEdcsReveal => "tight_edcs_reveal",
            GeneratorKind::AdaptiveMatchedDeleter => "adaptive_matched_deleter",
            GeneratorKind::Scripted => "scripted",
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = crate::error::BenchError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        Self::ALL.into_iter().find(|k| k.tag() == key).ok_or_else(|| invalid(format!("unknown generator kind `{s}`")))
    }
}

impl std::fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    pub length: usize,
    /// Number of live edges kept by the sliding-window generators.
    pub window: usize,
    /// Restrict edges to cross the split `[0, n/2) | [n/2, n)`.
    pub bipartite: bool,
    /// Deletion probability of `bipartite_random` once edges exist.
    pub delete_prob: f64,
    pub k: usize,
    pub beta: usize,
    /// Events of the `scripted` kind, separated by `/` or newlines.
    pub script: Option<String>,
}

impl Default for GenParams {
    fn default() -> Self {
        Self { n: 100, length: 1000, window: 300, bipartite: true, delete_prob: 0.3, k: 50, beta: 16, script: None }
    }
}

/// Bipartition used by every bipartite generator on `n` vertices.
pub fn default_sides(n: usize) -> Bipartition {
    Bipartition::split_at(n, n / 2)
}

pub fn gen_stream(kind: GeneratorKind, p: &GenParams, seed: u64) -> Result<UpdateStream> {
    match kind {
        GeneratorKind::ErSlidingWindow => er_sliding_window(p.n, p.window, p.length, p.bipartite, seed),
        GeneratorKind::BipartiteRandom => bipartite_random(p.n, p.length, p.delete_prob, seed),
        GeneratorKind::TightEdcsReveal => tight_edcs_reveal(p.k, p.beta),
        GeneratorKind::AdaptiveMatchedDeleter => adaptive_matched_deleter(p.n, p.window, p.length, seed),
        GeneratorKind::Scripted => scripted(p.n, p.script.as_deref().unwrap_or("")),
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(invalid("need at least two vertices"));
    }
    Ok(())
}

fn random_pair(r: &mut rng::Rng, n: usize, bipartite: bool) -> (VertexId, VertexId) {
    if bipartite {
        let half = n / 2;
        (r.gen_range(0..half), r.gen_range(half..n))
    } else {
        loop {
            let (u, v) = (r.gen_range(0..n), r.gen_range(0..n));
            if u != v {
                return (u, v);
            }
        }
    }
}

fn max_edges(n: usize, bipartite: bool) -> usize {
    if bipartite {
        (n / 2) * (n - n / 2)
    } else {
        n * (n - 1) / 2
    }
}

/// Inserts random absent edges until `window` are live, then alternates
/// deleting the oldest live edge and inserting a fresh one.
pub fn er_sliding_window(n: usize, window: usize, length: usize, bipartite: bool, seed: u64) -> Result<UpdateStream> {
    check_n(n)?;
    if window == 0 || window >= max_edges(n, bipartite) {
        return Err(invalid("window must be positive and below the number of vertex pairs"));
    }
    let mut r = rng::from_seed(seed);
    let mut g = DynamicGraph::new(n);
    let mut live = VecDeque::with_capacity(window);
    let mut s = UpdateStream::new(n);
    while s.events.len() < length {
        if live.len() >= window {
            let (u, v) = live.pop_front().expect("window is positive");
            g.delete_edge(u, v)?;
            s.events.push(UpdateEvent::delete(u, v));
            continue;
        }
        let (u, v) = random_pair(&mut r, n, bipartite);
        if g.insert_edge(u, v)? {
            live.push_back((u, v));
            s.events.push(UpdateEvent::insert(u, v));
        }
    }
    Ok(s)
}

/// Random insertions across the default bipartition, with each step deleting
/// a uniformly random live edge with probability `delete_prob`.
pub fn bipartite_random(n: usize, length: usize, delete_prob: f64, seed: u64) -> Result<UpdateStream> {
    check_n(n)?;
    if !(0.0..1.0).contains(&delete_prob) {
        return Err(invalid("delete probability must lie in [0, 1)"));
    }
    let mut r = rng::from_seed(seed);
    let mut g = DynamicGraph::new(n);
    let mut live: Vec<(VertexId, VertexId)> = Vec::new();
    let mut s = UpdateStream::new(n);
    let cap = max_edges(n, true);
    while s.events.len() < length {
        if !live.is_empty() && (live.len() == cap || r.gen_bool(delete_prob)) {
            let (u, v) = live.swap_remove(r.gen_range(0..live.len()));
            g.delete_edge(u, v)?;
            s.events.push(UpdateEvent::delete(u, v));
            continue;
        }
        let (u, v) = random_pair(&mut r, n, true);
        if g.insert_edge(u, v)? {
            live.push((u, v));
            s.events.push(UpdateEvent::insert(u, v));
        }
    }
    Ok(s)
}

/// Inserts the EDCS edges of a tight instance, then reveals the edges the
/// EDCS omits. The bipartition is `split_at(6k, 3k)`.
pub fn tight_edcs_reveal(k: usize, beta: usize) -> Result<UpdateStream> {
    let t = gen_tight_instance(k, beta)?;
    let mut s = UpdateStream::new(t.graph.n());
    let mut h = t.edcs.h().edges();
    h.sort_unstable();
    s.events.extend(h.into_iter().map(|(u, v)| UpdateEvent::insert(u, v)));
    s.events.extend(t.dashed.iter().map(|&(u, v)| UpdateEvent::insert(u, v)));
    Ok(s)
}

/// Builds `window` random bipartite edges, then repeatedly deletes a random
/// edge of the maximal matching the deterministic maintenance holds and
/// inserts a fresh random edge.
pub fn adaptive_matched_deleter(n: usize, window: usize, length: usize, seed: u64) -> Result<UpdateStream> {
    check_n(n)?;
    if window == 0 || window >= max_edges(n, true) {
        return Err(invalid("window must be positive and below the number of vertex pairs"));
    }
    let mut r = rng::from_seed(seed);
    let mut g = DynamicGraph::new(n);
    let mut mm = MaintainedMatching::new(n, MatchingMode::Maximal);
    let mut s = UpdateStream::new(n);
    let mut delete_next = false;
    while s.events.len() < length {
        let ev = if g.m() >= window && delete_next {
            let matched = mm.matching().edges();
            match matched.choose(&mut r) {
                Some(&(u, v)) => UpdateEvent::delete(u, v),
                None => {
                    delete_next = false;
                    continue;
                }
            }
        } else {
            let (u, v) = random_pair(&mut r, n, true);
            if g.has_edge(u, v) {
                continue;
            }
            UpdateEvent::insert(u, v)
        };
        mm.apply(&mut g, &ev)?;
        s.events.push(ev);
        delete_next = g.m() >= window && !delete_next;
    }
    Ok(s)
}

/// Parses events such as `+0 1 / -0 1` over `n` vertices.
pub fn scripted(n: usize, script: &str) -> Result<UpdateStream> {
    let mut text = format!("n {n}\n");
    for part in script.split(['/', '\n']) {
        let t = part.trim().replace('\u{2212}', "-");
        if !t.is_empty() {
            text.push_str(&t);
            text.push('\n');
        }
    }
    Ok(UpdateStream::parse(&text)?)
}
