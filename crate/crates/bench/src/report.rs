//! CSV rows, JSON summaries and a plain-text tightness report.

use std::fmt::Write as _;
use std::io::Write;

use dynmatch::edcs::{CheckStatus, TightnessReport};

use crate::error::Result;
use crate::runner::{CheckpointRow, RunSummary};

pub fn write_rows_csv<W: Write>(rows: &[CheckpointRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn rows_to_csv(rows: &[CheckpointRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_rows_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

pub fn summary_json(s: &RunSummary) -> Result<String> {
    Ok(serde_json::to_string_pretty(s)?)
}

fn status_tag(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Vacuous => "vacuous",
    }
}

pub fn format_tightness(r: &TightnessReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "beta = {}  eps = {}  delta = {}  in range: {}", r.beta, r.epsilon, r.delta, r.in_range);
    let _ = writeln!(s, "mu(G) = {}  mu(H) = {}  mu(H') = {}  premise: {}", r.mu_g, r.mu_h, r.mu_h_prime, r.premise);
    let _ = writeln!(s, "|S| = {}  |T| = {}  |W| = {}  |T_hat| = {}", r.s.len(), r.t.len(), r.w.len(), r.t_hat.len());
    let _ = writeln!(s, "|V_mid| = {}  |V_low| = {}  gamma = {}", r.v_mid_size, r.v_low_size, r.gamma);
    for c in r.checks() {
        let _ = writeln!(s, "  {:<8} {:<24} {:?} observed {:.6} bound {:.6}", status_tag(c.status), c.name, c.relation, c.observed, c.bound);
    }
    let _ = writeln!(s, "overall: {}", if r.all_pass() { "pass" } else { "FAIL" });
    s
}
