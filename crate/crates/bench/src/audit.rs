//! Stream replay with invariant audits, and the tightness verification
//! wrapper.

use serde::{Deserialize, Serialize};

use dynmatch::edcs::{analyze_tightness, evaluate_tightness, gen_tight_instance, Edcs, TightnessReport};
use dynmatch::maximal::{MaintainedMatching, MatchingMode};
use dynmatch::{DynamicGraph, UpdateStream};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: usize,
    pub events: usize,
    /// First event (1-based) that failed to replay.
    pub replay_error: Option<(usize, String)>,
    pub maximality_violations: usize,
    pub edcs_violations: usize,
    pub final_edges: usize,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.replay_error.is_none() && self.maximality_violations == 0 && self.edcs_violations == 0
    }
}

/// Replays `stream`, auditing the maintained matching after every event and
/// the EDCS (when `edcs` is `Some((beta, eps))`) every `edcs_every` events.
pub fn audit_stream(stream: &UpdateStream, edcs: Option<(usize, f64)>, edcs_every: usize) -> Result<AuditReport> {
    let mut g = DynamicGraph::new(stream.n);
    let mut mm = MaintainedMatching::new(stream.n, MatchingMode::Maximal);
    let mut e = match edcs {
        Some((beta, eps)) => Some(Edcs::new(stream.n, beta, eps)?),
        None => None,
    };
    let mut report = AuditReport {
        n: stream.n,
        events: stream.events.len(),
        replay_error: None,
        maximality_violations: 0,
        edcs_violations: 0,
        final_edges: 0,
    };
    let every = edcs_every.max(1);
    for (i, ev) in stream.events.iter().enumerate() {
        if let Err(err) = mm.apply(&mut g, ev) {
            report.replay_error = Some((i + 1, err.to_string()));
            break;
        }
        if !mm.audit_maximality_near(&g, ev.u, ev.v) {
            report.maximality_violations += 1;
        }
        if let Some(e) = e.as_mut() {
            if e.apply_update(&g, ev).is_err() {
                report.edcs_violations += 1;
            } else if (i + 1) % every == 0 && !e.audit(&g) {
                report.edcs_violations += 1;
            }
        }
    }
    if !mm.audit_maximality(&g) {
        report.maximality_violations += 1;
    }
    report.final_edges = g.m();
    Ok(report)
}

/// Tightness analysis of the generated instance for `(k, beta)`.
pub fn verify_lemma44(k: usize, beta: usize, delta: f64, allow_out_of_range: bool) -> Result<TightnessReport> {
    let t = gen_tight_instance(k, beta)?;
    let r = if allow_out_of_range {
        evaluate_tightness(&t.graph, &t.edcs, &t.sides, delta)?
    } else {
        analyze_tightness(&t.graph, &t.edcs, &t.sides, delta)?
    };
    Ok(r)
}
