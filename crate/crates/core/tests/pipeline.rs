use rand::Rng as _;

use dynmatch::dynamic::{AmplifiedEstimator, Combine, EdcsPipeline, LazyMode, MatchingPipeline};
use dynmatch::estimators::{Algorithm, TwoThirdsConfig};
use dynmatch::maximal::MatchingMode;
use dynmatch::oracles::{max_matching_bipartite, max_matching_general};
use dynmatch::{rng, Bipartition, DynamicGraph, UpdateEvent, UpdateStream};

/// Random insert/delete stream between the two halves of `n` vertices.
fn bipartite_stream(n: usize, len: usize, seed: u64) -> UpdateStream {
    let mut r = rng::from_seed(seed);
    let mut g = DynamicGraph::new(n);
    let mut s = UpdateStream::new(n);
    let mut present = Vec::new();
    while s.events.len() < len {
        let ev = if !present.is_empty() && r.gen_bool(0.3) {
            let (u, v) = present.swap_remove(r.gen_range(0..present.len()));
            UpdateEvent::delete(u, v)
        } else {
            let (u, v) = (r.gen_range(0..n / 2), r.gen_range(n / 2..n));
            if g.has_edge(u, v) {
                continue;
            }
            present.push((u, v));
            UpdateEvent::insert(u, v)
        };
        g.apply(&ev).unwrap();
        s.events.push(ev);
    }
    s
}

#[test]
fn stream_text_round_trip_and_reversal() {
    let s = bipartite_stream(40, 500, 1);
    let parsed = UpdateStream::parse(&s.to_text()).unwrap();
    assert_eq!(parsed.events, s.events);
    let mut g = DynamicGraph::new(40);
    s.replay(&mut g).unwrap();
    assert!(g.m() > 0);
    s.reversed().replay(&mut g).unwrap();
    assert_eq!(g.m(), 0);
}

#[test]
fn amplified_pipelines_never_exceed_maximum_matching() {
    let n = 60;
    let sides = Bipartition::split_at(n, n / 2);
    let s = bipartite_stream(n, 1500, 2);
    for alg in [Algorithm::BipartiteOblivious, Algorithm::BipartiteAdaptive, Algorithm::General] {
        let mut g = DynamicGraph::new(n);
        let inner = MatchingPipeline::new(&g, alg, Some(sides.clone()), MatchingMode::Maximal, 0.1).unwrap();
        let mut est = AmplifiedEstimator::new(inner, &g, 3, LazyMode::Additive { eps: 0.05 }, 3, None, Combine::Mean).unwrap();
        for ev in &s.events {
            let v = est.on_update(&mut g, ev).unwrap();
            assert!(v >= 0.0);
            assert!(v <= max_matching_general(&g) as f64 + 1e-9, "{alg}: {v}");
        }
        assert!(est.inner().matching().audit_maximality(&g));
    }
}

#[test]
fn edcs_pipeline_tracks_stream_with_valid_edcs() {
    let n = 60;
    let sides = Bipartition::split_at(n, n / 2);
    let s = bipartite_stream(n, 1500, 4);
    let mut g = DynamicGraph::new(n);
    let inner = EdcsPipeline::new(&g, sides.clone(), 8, 0.25, TwoThirdsConfig::with_delta(0.05, 5)).unwrap();
    let mut est = AmplifiedEstimator::new(inner, &g, 1, LazyMode::Multiplicative { eps: 0.1 }, 6, None, Combine::Median).unwrap();
    for (i, ev) in s.events.iter().enumerate() {
        let v = est.on_update(&mut g, ev).unwrap();
        assert!(v <= max_matching_bipartite(&g, &sides, None).unwrap().len() as f64 + 1e-9);
        if i % 100 == 0 {
            assert!(est.inner().edcs().audit(&g));
        }
    }
}
